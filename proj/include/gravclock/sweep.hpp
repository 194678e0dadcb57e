#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "gravclock/dephasing.hpp"
#include "gravclock/physics.hpp"

namespace gravclock {

enum class GeometryFamily { Cubic, Slab };

std::string_view to_string(GeometryFamily f) noexcept;
GeometryFamily parse_geometry_family(std::string_view text);

struct SweepSpec {
  GeometryFamily family = GeometryFamily::Cubic;
  std::vector<std::int64_t> sizes;  // n_site (cubic) or n_layer (slab), strictly increasing
  std::vector<double> phi_l;        // rad/s
  Convention convention = Convention::Physical;
  std::int64_t atoms_per_layer = 10'000;  // slab only

  void validate() const;
};

struct StabilityPoint {
  GeometryFamily family = GeometryFamily::Cubic;
  std::int64_t size = 0;
  double phi_l = 0.0;
  Convention convention = Convention::Physical;
  double tau_max = 0.0;       // s; kTauCeiling when flagged
  double sigma_at_tau = 0.0;  // per-layer SQL at tau_max
  double sigma_at_1s = 0.0;   // sigma_at_tau * sqrt(tau_max)
  bool flagged = false;       // tau_max not bracketed
};

// Best single-sequence stability for one geometry, referred to 1 s with the
// tau^-1/2 law. sigma_at_tau is the per-layer SQL 1/(omega0 tau sqrt(a)) with
// a atoms per layer, for both families.
StabilityPoint best_stability_at_1s(const ClockSpecies& species, const PhysicalConstants& consts,
                                    const LatticeGeometry& geometry, double phi_l,
                                    Convention convention);

// Cartesian product of spec.sizes x spec.phi_l, size-major. Points are
// evaluated on `threads` workers (0 = hardware concurrency); row order does
// not depend on scheduling.
std::vector<StabilityPoint> sweep(const ClockSpecies& species, const PhysicalConstants& consts,
                                  const SweepSpec& spec, double layer_spacing,
                                  unsigned threads = 1);

// Rows of a sweep table with the given phi_l, in size order.
std::vector<StabilityPoint> curve_for(std::span<const StabilityPoint> table, double phi_l);

// Index of the smallest sigma_at_1s in a single-phi_l curve.
std::size_t curve_argmin(std::span<const StabilityPoint> curve);

enum class Regime { Small, Large };

std::string_view to_string(Regime r) noexcept;

// Least-squares slope of log(sigma_at_1s) vs log(size) on one side of the
// curve minimum (the minimum belongs to both sides). Requires >= 3 points in
// the slice and no flagged points.
double scaling_exponent(std::span<const StabilityPoint> curve, Regime regime);

// `count` log-spaced integers in [lo, hi], rounded, duplicates dropped.
std::vector<std::int64_t> log_spaced_sizes(std::int64_t lo, std::int64_t hi, std::size_t count);

}  // namespace gravclock
