#include "gravclock/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>

#include "gravclock/errors.hpp"
#include "gravclock/format.hpp"

namespace gravclock {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    out.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double to_double(std::string_view s) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ValidationError("expected a finite number, got '" + std::string(s) + "'");
  return v;
}

std::int64_t to_int(std::string_view s) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ValidationError("expected an integer, got '" + std::string(s) + "'");
  return v;
}

std::vector<double> to_double_list(std::string_view s) {
  std::vector<double> out;
  for (auto item : split(s, ',')) out.push_back(to_double(item));
  return out;
}

std::vector<std::int64_t> to_int_list(std::string_view s) {
  std::vector<std::int64_t> out;
  for (auto item : split(s, ',')) out.push_back(to_int(item));
  return out;
}

// Either an explicit list or logspace(lo, hi, count).
std::vector<std::int64_t> to_size_grid(std::string_view s) {
  constexpr std::string_view head = "logspace(";
  if (s.starts_with(head)) {
    if (!s.ends_with(")")) throw ValidationError("unterminated logspace(...)");
    const auto args = split(s.substr(head.size(), s.size() - head.size() - 1), ',');
    if (args.size() != 3) throw ValidationError("logspace takes (lo, hi, count)");
    const auto count = to_int(args[2]);
    if (count < 1) throw ValidationError("logspace count must be >= 1");
    return log_spaced_sizes(to_int(args[0]), to_int(args[1]), static_cast<std::size_t>(count));
  }
  return to_int_list(s);
}

template <class T, class F>
std::string join(const std::vector<T>& v, F&& fmt) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += fmt(v[i]);
  }
  return out;
}

std::string int_str(std::int64_t v) { return std::to_string(v); }

struct KeyHandler {
  std::string_view key;
  std::function<void(Scenario&, std::string_view)> set;
  std::function<std::optional<std::string>(const Scenario&)> get;
};

#define GRAVCLOCK_DOUBLE_KEY(name, member)                                          \
  KeyHandler {                                                                      \
    name, [](Scenario& s, std::string_view v) { s.member = to_double(v); },         \
        [](const Scenario& s) -> std::optional<std::string> { return format_double(s.member); } \
  }

#define GRAVCLOCK_OPT_DOUBLE_KEY(name, member)                                      \
  KeyHandler {                                                                      \
    name, [](Scenario& s, std::string_view v) { s.member = to_double(v); },         \
        [](const Scenario& s) -> std::optional<std::string> {                       \
          if (!s.member) return std::nullopt;                                       \
          return format_double(*s.member);                                          \
        }                                                                           \
  }

const std::vector<KeyHandler>& key_table() {
  static const std::vector<KeyHandler> table = {
      {"species", [](Scenario& s, std::string_view v) { s.species = std::string(v); },
       [](const Scenario& s) -> std::optional<std::string> { return s.species; }},
      GRAVCLOCK_OPT_DOUBLE_KEY("species.omega0", omega0),
      GRAVCLOCK_OPT_DOUBLE_KEY("species.magic_wavelength", magic_wavelength),
      GRAVCLOCK_DOUBLE_KEY("constants.g", constants.g),
      GRAVCLOCK_DOUBLE_KEY("constants.c", constants.c),
      {"geometry", [](Scenario& s, std::string_view v) { s.geometry = GeometrySpec::parse(v); },
       [](const Scenario& s) -> std::optional<std::string> { return s.geometry.to_string(); }},
      GRAVCLOCK_OPT_DOUBLE_KEY("geometry.layer_spacing", layer_spacing),
      {"convention", [](Scenario& s, std::string_view v) { s.convention = parse_convention(v); },
       [](const Scenario& s) -> std::optional<std::string> {
         return std::string(to_string(s.convention));
       }},
      GRAVCLOCK_DOUBLE_KEY("threshold.tau", threshold_tau),
      GRAVCLOCK_DOUBLE_KEY("dephase.phi_l", dephase_phi_l),
      {"dephase.n_sites", [](Scenario& s, std::string_view v) { s.dephase_n_sites = to_int_list(v); },
       [](const Scenario& s) -> std::optional<std::string> { return join(s.dephase_n_sites, int_str); }},
      GRAVCLOCK_DOUBLE_KEY("dephase.t_start", dephase_t_start),
      GRAVCLOCK_DOUBLE_KEY("dephase.t_stop", dephase_t_stop),
      {"dephase.t_count", [](Scenario& s, std::string_view v) { s.dephase_t_count = to_int(v); },
       [](const Scenario& s) -> std::optional<std::string> { return int_str(s.dephase_t_count); }},
      {"sweep.geometry",
       [](Scenario& s, std::string_view v) { s.sweep_family = parse_geometry_family(v); },
       [](const Scenario& s) -> std::optional<std::string> {
         return std::string(to_string(s.sweep_family));
       }},
      {"sweep.sizes", [](Scenario& s, std::string_view v) { s.sweep_sizes = to_size_grid(v); },
       [](const Scenario& s) -> std::optional<std::string> { return join(s.sweep_sizes, int_str); }},
      {"sweep.phi_l", [](Scenario& s, std::string_view v) { s.sweep_phi_l = to_double_list(v); },
       [](const Scenario& s) -> std::optional<std::string> {
         return join(s.sweep_phi_l, [](double x) { return format_double(x); });
       }},
      {"sweep.atoms_per_layer",
       [](Scenario& s, std::string_view v) { s.sweep_atoms_per_layer = to_int(v); },
       [](const Scenario& s) -> std::optional<std::string> {
         return int_str(s.sweep_atoms_per_layer);
       }},
      GRAVCLOCK_DOUBLE_KEY("systematics.zeeman1", budget.coeffs.zeeman1),
      GRAVCLOCK_DOUBLE_KEY("systematics.zeeman2", budget.coeffs.zeeman2),
      GRAVCLOCK_DOUBLE_KEY("systematics.dc_stark", budget.coeffs.dc_stark),
      GRAVCLOCK_DOUBLE_KEY("systematics.p2_zeeman", budget.coeffs.p2_zeeman),
      GRAVCLOCK_DOUBLE_KEY("systematics.p2_lifetime", budget.coeffs.p2_lifetime),
      GRAVCLOCK_DOUBLE_KEY("systematics.bbr_fractional", budget.coeffs.bbr_fractional),
      GRAVCLOCK_DOUBLE_KEY("systematics.b_bias", budget.b_bias),
      GRAVCLOCK_DOUBLE_KEY("systematics.e_gradient", budget.e_gradient),
      GRAVCLOCK_DOUBLE_KEY("systematics.e_baseline", budget.e_baseline),
      GRAVCLOCK_DOUBLE_KEY("systematics.beam_waist", budget.beam_waist),
      GRAVCLOCK_DOUBLE_KEY("systematics.lattice_separation_wavelengths",
                           budget.lattice_separation_wavelengths),
      GRAVCLOCK_DOUBLE_KEY("systematics.wall_distance", budget.wall_distance),
      GRAVCLOCK_DOUBLE_KEY("systematics.disk_radius", budget.disk_radius),
      GRAVCLOCK_DOUBLE_KEY("systematics.T1", budget.T1),
      GRAVCLOCK_DOUBLE_KEY("systematics.T2", budget.T2),
      GRAVCLOCK_DOUBLE_KEY("systematics.signal_scale", budget.signal_scale),
      {"output.dir", [](Scenario& s, std::string_view v) { s.output_dir = std::string(v); },
       [](const Scenario& s) -> std::optional<std::string> {
         if (s.output_dir.empty()) return std::nullopt;
         return s.output_dir;
       }},
  };
  return table;
}

#undef GRAVCLOCK_DOUBLE_KEY
#undef GRAVCLOCK_OPT_DOUBLE_KEY

template <class F>
void checked(std::string_view key, F&& f) {
  try {
    f();
  } catch (const ValidationError& e) {
    throw ValidationError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

GeometrySpec GeometrySpec::parse(std::string_view text) {
  const auto parts = split(text, ':');
  GeometrySpec g;
  g.family = parse_geometry_family(parts.front());
  if (g.family == GeometryFamily::Cubic) {
    if (parts.size() != 2) throw ValidationError("expected cubic:<n_site>");
    g.n_site = to_int(parts[1]);
    if (g.n_site < 1) throw ValidationError("n_site must be >= 1");
  } else {
    if (parts.size() != 3) throw ValidationError("expected slab:<atoms_per_layer>:<n_layer>");
    g.atoms_per_layer = to_int(parts[1]);
    g.n_layer = to_int(parts[2]);
    if (g.atoms_per_layer < 1 || g.n_layer < 1)
      throw ValidationError("slab counts must be >= 1");
  }
  return g;
}

std::string GeometrySpec::to_string() const {
  if (family == GeometryFamily::Cubic) return "cubic:" + std::to_string(n_site);
  return "slab:" + std::to_string(atoms_per_layer) + ":" + std::to_string(n_layer);
}

ClockSpecies Scenario::resolved_species() const {
  ClockSpecies sp = species_by_name(species);
  if (omega0) sp.omega0 = *omega0;
  if (magic_wavelength) sp.magic_wavelength = *magic_wavelength;
  sp.validate();
  return sp;
}

double Scenario::resolved_layer_spacing() const {
  return layer_spacing.value_or(resolved_species().half_wavelength());
}

LatticeGeometry Scenario::resolved_geometry() const {
  const double spacing = resolved_layer_spacing();
  if (geometry.family == GeometryFamily::Cubic) return LatticeGeometry::cubic(geometry.n_site, spacing);
  return LatticeGeometry::slab(geometry.atoms_per_layer, geometry.n_layer, spacing);
}

SweepSpec Scenario::sweep_spec() const {
  return SweepSpec{sweep_family, sweep_sizes, sweep_phi_l, convention, sweep_atoms_per_layer};
}

std::vector<double> Scenario::dephase_t_grid() const {
  std::vector<double> grid;
  if (dephase_t_count <= 0) return grid;
  if (dephase_t_count == 1) return {dephase_t_start};
  const double step = (dephase_t_stop - dephase_t_start) / static_cast<double>(dephase_t_count - 1);
  for (std::int64_t i = 0; i < dephase_t_count; ++i)
    grid.push_back(dephase_t_start + step * static_cast<double>(i));
  grid.back() = dephase_t_stop;
  return grid;
}

void Scenario::validate() const {
  checked("species", [&] { resolved_species(); });
  checked("constants", [&] { constants.validate(); });
  checked("geometry", [&] { resolved_geometry(); });
  checked("threshold.tau", [&] {
    if (!(threshold_tau > 0.0)) throw ValidationError("must be > 0");
  });
  checked("dephase.phi_l", [&] {
    if (dephase_phi_l < 0.0) throw ValidationError("must be >= 0");
  });
  checked("dephase.n_sites", [&] {
    if (dephase_n_sites.empty()) throw ValidationError("must not be empty");
    for (auto n : dephase_n_sites)
      if (n < 1) throw ValidationError("entries must be >= 1");
  });
  checked("dephase.t_count", [&] {
    if (dephase_t_count < 0) throw ValidationError("must be >= 0");
    if (dephase_t_count > 1 && !(dephase_t_stop > dephase_t_start))
      throw ValidationError("t_stop must exceed t_start");
    if (dephase_t_start < 0.0) throw ValidationError("t_start must be >= 0");
  });
  checked("sweep", [&] { sweep_spec().validate(); });
  checked("systematics", [&] { budget.validate(); });
}

Scenario parse_scenario(std::string_view text) {
  Scenario s;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? text.npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(line_no, "empty key");
    if (value.empty()) throw ParseError(line_no, "empty value for '" + std::string(key) + "'");

    const auto& table = key_table();
    const auto it = std::find_if(table.begin(), table.end(),
                                 [&](const KeyHandler& h) { return h.key == key; });
    if (it == table.end()) throw ParseError(line_no, "unknown key '" + std::string(key) + "'");
    if (!seen.emplace(key).second)
      throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    try {
      it->set(s, value);
    } catch (const ParseError&) {
      throw;
    } catch (const ValidationError& e) {
      throw ParseError(line_no, std::string(key) + ": " + e.what());
    }
  }
  s.validate();
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

std::string serialize_scenario(const Scenario& s) {
  std::string out = "# gravclock scenario, normalized\n";
  for (const auto& h : key_table()) {
    if (auto v = h.get(s)) {
      out += h.key;
      out += " = ";
      out += *v;
      out += '\n';
    }
  }
  return out;
}

}  // namespace gravclock
