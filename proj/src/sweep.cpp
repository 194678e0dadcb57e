#include "gravclock/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "gravclock/errors.hpp"
#include "gravclock/numerics.hpp"
#include "gravclock/threshold.hpp"

namespace gravclock {

std::string_view to_string(GeometryFamily f) noexcept {
  return f == GeometryFamily::Cubic ? "cubic" : "slab";
}

GeometryFamily parse_geometry_family(std::string_view text) {
  if (text == "cubic") return GeometryFamily::Cubic;
  if (text == "slab") return GeometryFamily::Slab;
  throw ValidationError("unknown geometry family '" + std::string(text) + "'");
}

std::string_view to_string(Regime r) noexcept { return r == Regime::Small ? "small" : "large"; }

void SweepSpec::validate() const {
  if (sizes.empty()) throw ValidationError("sweep size grid is empty");
  if (phi_l.empty()) throw ValidationError("sweep phi_l grid is empty");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) throw ValidationError("sweep sizes must be >= 1");
    if (i > 0 && sizes[i] <= sizes[i - 1])
      throw ValidationError("sweep sizes must be strictly increasing");
  }
  for (double p : phi_l)
    if (!std::isfinite(p) || p < 0.0) throw ValidationError("sweep phi_l values must be >= 0");
  if (family == GeometryFamily::Slab && atoms_per_layer < 1)
    throw ValidationError("slab atoms_per_layer must be >= 1");
}

StabilityPoint best_stability_at_1s(const ClockSpecies& species, const PhysicalConstants& consts,
                                    const LatticeGeometry& geometry, double phi_l,
                                    Convention convention) {
  const double phi_g = per_layer_phase_rate(consts, species, geometry.layer_spacing());
  const auto problem = TauMaxProblem::for_geometry(geometry, phi_l, phi_g, convention);
  const auto tau = solve_tau_max(problem);

  StabilityPoint p;
  p.family = geometry.is_cubic() ? GeometryFamily::Cubic : GeometryFamily::Slab;
  p.size = geometry.size();
  p.phi_l = phi_l;
  p.convention = convention;
  p.flagged = !tau.has_value();
  p.tau_max = tau.value_or(kTauCeiling);
  p.sigma_at_tau = 1.0 / (species.omega0 * p.tau_max *
                          std::sqrt(static_cast<double>(geometry.atoms_per_layer())));
  p.sigma_at_1s = p.sigma_at_tau * std::sqrt(p.tau_max);
  return p;
}

std::vector<StabilityPoint> sweep(const ClockSpecies& species, const PhysicalConstants& consts,
                                  const SweepSpec& spec, double layer_spacing, unsigned threads) {
  spec.validate();
  species.validate();
  consts.validate();

  const std::size_t n_phi = spec.phi_l.size();
  const std::size_t total = spec.sizes.size() * n_phi;
  // Build geometries up front so validation errors surface before any work.
  std::vector<LatticeGeometry> geometries;
  geometries.reserve(spec.sizes.size());
  for (auto size : spec.sizes)
    geometries.push_back(spec.family == GeometryFamily::Cubic
                             ? LatticeGeometry::cubic(size, layer_spacing)
                             : LatticeGeometry::slab(spec.atoms_per_layer, size, layer_spacing));

  std::vector<StabilityPoint> rows(total);
  auto eval = [&](std::size_t i) {
    rows[i] = best_stability_at_1s(species, consts, geometries[i / n_phi], spec.phi_l[i % n_phi],
                                   spec.convention);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, total));
  if (threads <= 1) {
    for (std::size_t i = 0; i < total; ++i) eval(i);
    return rows;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < total; i += threads) eval(i);
      });
  }
  return rows;
}

std::vector<StabilityPoint> curve_for(std::span<const StabilityPoint> table, double phi_l) {
  std::vector<StabilityPoint> out;
  for (const auto& p : table)
    if (p.phi_l == phi_l) out.push_back(p);
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& a, const auto& b) { return a.size < b.size; });
  return out;
}

std::size_t curve_argmin(std::span<const StabilityPoint> curve) {
  if (curve.empty()) throw ValidationError("empty curve");
  const auto it = std::min_element(curve.begin(), curve.end(), [](const auto& a, const auto& b) {
    return a.sigma_at_1s < b.sigma_at_1s;
  });
  return static_cast<std::size_t>(it - curve.begin());
}

double scaling_exponent(std::span<const StabilityPoint> curve, Regime regime) {
  const std::size_t k = curve_argmin(curve);
  const auto slice = regime == Regime::Small ? curve.subspan(0, k + 1) : curve.subspan(k);
  if (slice.size() < 3)
    throw ValidationError("scaling_exponent: " + std::string(to_string(regime)) +
                          "-size slice has fewer than 3 points");
  std::vector<double> x, y;
  for (const auto& p : slice) {
    if (p.flagged) throw ValidationError("scaling_exponent: slice contains flagged points");
    if (!(p.sigma_at_1s > 0.0) || p.size < 1)
      throw ValidationError("scaling_exponent: non-positive value in slice");
    x.push_back(std::log(static_cast<double>(p.size)));
    y.push_back(std::log(p.sigma_at_1s));
  }
  return numerics::ols_slope(x, y);
}

std::vector<std::int64_t> log_spaced_sizes(std::int64_t lo, std::int64_t hi, std::size_t count) {
  if (lo < 1 || hi < lo) throw ValidationError("log_spaced_sizes: need 1 <= lo <= hi");
  if (count < 2 || lo == hi) return {lo};
  std::vector<std::int64_t> out;
  for (double v : numerics::geomspace(static_cast<double>(lo), static_cast<double>(hi), count)) {
    const auto n = static_cast<std::int64_t>(std::llround(v));
    if (out.empty() || n > out.back()) out.push_back(n);
  }
  return out;
}

}  // namespace gravclock
