#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gravclock {

// 17 significant digits: round-trips every binary64 value exactly.
std::string format_double(double x);
// 6 significant digits, for human-facing notes.
std::string format_short(double x);

// 64-bit FNV-1a as 16 lowercase hex digits.
std::string fnv1a_hex(std::string_view bytes);

// Streaming writer for deterministic, pretty-printed JSON. Floats use
// format_double(); non-finite values and empty optionals become null.
class JsonWriter {
 public:
  JsonWriter& begin_object();
  JsonWriter& end_object();
  JsonWriter& begin_array();
  JsonWriter& end_array();
  JsonWriter& key(std::string_view k);

  JsonWriter& value(double v);
  JsonWriter& value(std::int64_t v);
  JsonWriter& value(int v) { return value(static_cast<std::int64_t>(v)); }
  JsonWriter& value(bool v);
  JsonWriter& value(std::string_view v);
  JsonWriter& value(const char* v) { return value(std::string_view(v)); }
  JsonWriter& value(std::optional<double> v);
  JsonWriter& null();

  // Complete document followed by a single LF.
  std::string str() const;

 private:
  void before_value();
  void newline();

  std::string out_;
  struct Frame {
    bool is_object;
    bool empty;
  };
  std::vector<Frame> stack_;
  bool after_key_ = false;
};

std::string json_escape(std::string_view s);

}  // namespace gravclock
