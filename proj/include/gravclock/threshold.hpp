#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "gravclock/dephasing.hpp"
#include "gravclock/physics.hpp"

namespace gravclock {

// Which portions of the ensemble must stay mutually coherent.
//
// PerLayer: per-layer SQL 1/(omega0 tau n) against the top-to-bottom redshift.
// Halves: SQL of half the ensemble (~n^3/2 atoms) against the same span. This
//   is a reconstruction; it is the form that yields n ~ 165 at tau = 30 s.
enum class Partition { PerLayer, Halves };

std::string_view to_string(Partition p) noexcept;

struct ThresholdProblem {
  ClockSpecies species = ClockSpecies::ytterbium();
  PhysicalConstants consts;
  double tau = 30.0;  // s
  Partition partition = Partition::PerLayer;
  Convention convention = Convention::Physical;
  // Defaults to half the magic wavelength.
  std::optional<double> layer_spacing;

  void validate() const;
  double spacing() const noexcept {
    return layer_spacing.value_or(species.half_wavelength());
  }
};

struct DecoherenceSize {
  double n_real = 0.0;
  std::int64_t n_rounded = 0;
  Partition partition = Partition::PerLayer;
  Convention convention = Convention::Physical;
};

DecoherenceSize solve_decoherence_size(const ThresholdProblem& problem);

// n^2 (n + 1).
std::int64_t decoherence_atom_count(std::int64_t n_site);

// Upper end of the interrogation-time search window, s.
inline constexpr double kTauCeiling = 1e9;

struct TauMaxProblem {
  std::int64_t layer_count = 1;
  std::int64_t atoms_per_layer = 1;
  double phi_l = 0.0;  // rad/s
  double phi_g = 0.0;  // physical per-layer rate, rad/s
  Convention convention = Convention::Physical;

  static TauMaxProblem for_geometry(const LatticeGeometry& geometry, double phi_l, double phi_g,
                                    Convention convention);
  void validate() const;
  // Per-layer SQL in phase units: 1/sqrt(atoms_per_layer) (= 1/n_site for cubic).
  double threshold() const noexcept;
};

// Dephasing-induced phase error after time tau: |1 - phi_eff / (phi_l tau)|.
// With phi_l == 0 the ratio is undefined and contrast loss 1 - |S|/m is used,
// which is the phi_l -> 0 limit of the same quantity.
double decoherence_error(const TauMaxProblem& problem, double tau);

// Interrogation time at which decoherence_error first reaches threshold().
// nullopt when it never does on (0, kTauCeiling] (laser never limits and no
// gravitational spread either).
std::optional<double> solve_tau_max(const TauMaxProblem& problem);

}  // namespace gravclock
