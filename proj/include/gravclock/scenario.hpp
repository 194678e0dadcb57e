#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gravclock/dephasing.hpp"
#include "gravclock/physics.hpp"
#include "gravclock/sweep.hpp"
#include "gravclock/systematics.hpp"

namespace gravclock {

// "cubic:<n_site>" or "slab:<atoms_per_layer>:<n_layer>".
struct GeometrySpec {
  GeometryFamily family = GeometryFamily::Cubic;
  std::int64_t n_site = 100;
  std::int64_t atoms_per_layer = 10'000;
  std::int64_t n_layer = 1;

  static GeometrySpec parse(std::string_view text);
  std::string to_string() const;
  friend bool operator==(const GeometrySpec&, const GeometrySpec&) = default;
};

// Everything one CLI invocation needs. Parsed from a flat key = value file:
//
//   # comment
//   species = Yb
//   geometry = cubic:100
//   sweep.phi_l = 1e-6, 1e-4, 1e-2
//
// Keys are dotted paths; unknown or repeated keys are errors. Defaults are
// the Yb values used throughout the library.
struct Scenario {
  std::string species = "Yb";
  std::optional<double> omega0;            // rad/s override
  std::optional<double> magic_wavelength;  // m override
  PhysicalConstants constants;
  GeometrySpec geometry;
  std::optional<double> layer_spacing;  // m; lambda/2 when unset
  Convention convention = Convention::Physical;

  double threshold_tau = 30.0;

  double dephase_phi_l = 1e-5;
  std::vector<std::int64_t> dephase_n_sites{100, 200, 300, 400, 500};
  double dephase_t_start = 0.0;
  double dephase_t_stop = 200.0;
  std::int64_t dephase_t_count = 201;

  GeometryFamily sweep_family = GeometryFamily::Cubic;
  std::vector<std::int64_t> sweep_sizes = log_spaced_sizes(2, 1000, 40);
  std::vector<double> sweep_phi_l{1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
  std::int64_t sweep_atoms_per_layer = 10'000;

  BudgetInputs budget;

  std::string output_dir;

  ClockSpecies resolved_species() const;
  double resolved_layer_spacing() const;
  LatticeGeometry resolved_geometry() const;
  SweepSpec sweep_spec() const;
  std::vector<double> dephase_t_grid() const;

  // Throws ValidationError naming the offending key.
  void validate() const;

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Throws ParseError (with line number) for malformed lines and unknown or
// duplicate keys, ValidationError for out-of-range values.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

// Normalized form: every key in a fixed order, floats at 17 significant
// digits. parse_scenario(serialize_scenario(s)) == s.
std::string serialize_scenario(const Scenario& s);

}  // namespace gravclock
