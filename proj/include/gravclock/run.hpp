#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "gravclock/scenario.hpp"

namespace gravclock {

enum class Subcommand { Threshold, DephaseCurve, StabilitySweep, Budget };

std::string_view to_string(Subcommand c) noexcept;
Subcommand parse_subcommand(std::string_view text);

struct OutputFile {
  std::string name;
  std::string contents;
};

// Everything a subcommand produces, before anything touches the filesystem.
struct RunOutput {
  std::vector<OutputFile> files;
  std::string summary;      // aligned text for the terminal
  std::size_t flagged = 0;  // non-bracketable solver points
};

RunOutput compute(Subcommand cmd, const Scenario& scenario, unsigned threads = 1);

struct ManifestEntry {
  std::string name;
  std::size_t bytes = 0;
  std::string digest;  // FNV-1a 64
};

struct RunRecord {
  std::string scenario_digest;
  std::string version;
  std::vector<ManifestEntry> files;
  std::size_t flagged = 0;
  std::string summary;
};

// compute(), then write every output plus "<subcommand>.manifest.json" into
// out_dir (created if missing) from this thread.
RunRecord run(Subcommand cmd, const Scenario& scenario, const std::filesystem::path& out_dir,
              unsigned threads = 1);

// CSV and JSON renderers, exposed for tests and bindings.
std::string dephase_csv_header();
std::string stability_csv(const std::vector<StabilityPoint>& rows);
std::string budget_json(const Budget& budget, const Scenario& scenario);
std::string budget_table(const Budget& budget);

std::string_view tool_version() noexcept;

}  // namespace gravclock
