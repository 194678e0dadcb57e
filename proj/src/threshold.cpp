#include "gravclock/threshold.hpp"

#include <cmath>

#include "gravclock/errors.hpp"
#include "gravclock/numerics.hpp"

namespace gravclock {

namespace {

// Scan resolution for the first threshold crossing.
constexpr double kTauFloor = 1e-6;
constexpr std::size_t kScanPointsPerDecade = 32;

double sql_side(const ThresholdProblem& p, double n) {
  const double sql_atoms = p.partition == Partition::PerLayer ? n * n : 0.5 * n * n * n;
  return 1.0 / (p.species.omega0 * p.tau * std::sqrt(sql_atoms));
}

double span_side(const ThresholdProblem& p, double n) {
  const double per_layer = relative_redshift(p.consts, p.spacing());
  const double scale = p.convention == Convention::PaperFigure ? n : 1.0;
  return scale * n * per_layer;
}

}  // namespace

std::string_view to_string(Partition p) noexcept {
  return p == Partition::PerLayer ? "per-layer" : "halves";
}

void ThresholdProblem::validate() const {
  species.validate();
  consts.validate();
  if (!std::isfinite(tau) || tau <= 0.0) throw ValidationError("tau must be > 0");
  if (!(spacing() > 0.0)) throw ValidationError("layer spacing must be > 0");
}

DecoherenceSize solve_decoherence_size(const ThresholdProblem& problem) {
  problem.validate();
  DecoherenceSize out;
  out.partition = problem.partition;
  out.convention = problem.convention;

  if (problem.partition == Partition::PerLayer && problem.convention == Convention::Physical) {
    // 1/(w tau n) = g n d / c^2  =>  n = c / sqrt(w tau g d)
    const double c = problem.consts.c;
    out.n_real = c / std::sqrt(problem.species.omega0 * problem.tau * problem.consts.g *
                               problem.spacing());
  } else {
    // sql_side falls and span_side rises monotonically in n; bisect in log n.
    auto f = [&](double log_n) {
      const double n = std::exp(log_n);
      return std::log(sql_side(problem, n)) - std::log(span_side(problem, n));
    };
    const auto root = numerics::bisect(f, std::log(1e-6), std::log(1e12),
                                       {.rel_tol = 1e-14, .max_iter = 400});
    if (!root) throw ValidationError("decoherence size not bracketed in [1e-6, 1e12]");
    out.n_real = std::exp(*root);
  }
  out.n_rounded = std::llround(out.n_real);
  return out;
}

std::int64_t decoherence_atom_count(std::int64_t n_site) {
  return LatticeGeometry::cubic(n_site, 1.0).total_atoms();
}

TauMaxProblem TauMaxProblem::for_geometry(const LatticeGeometry& geometry, double phi_l,
                                          double phi_g, Convention convention) {
  return TauMaxProblem{geometry.layer_count(), geometry.atoms_per_layer(), phi_l, phi_g,
                       convention};
}

void TauMaxProblem::validate() const {
  if (layer_count < 1) throw ValidationError("layer_count must be >= 1");
  if (atoms_per_layer < 1) throw ValidationError("atoms_per_layer must be >= 1");
  if (!std::isfinite(phi_l) || phi_l < 0.0) throw ValidationError("phi_l must be >= 0");
  if (!std::isfinite(phi_g)) throw ValidationError("phi_g must be finite");
}

double TauMaxProblem::threshold() const noexcept {
  return 1.0 / std::sqrt(static_cast<double>(atoms_per_layer));
}

double decoherence_error(const TauMaxProblem& problem, double tau) {
  const DephasingInput in{problem.phi_l, problem.phi_g, problem.layer_count, tau,
                          problem.convention};
  const BlochSummary s = bloch_sum(in);
  if (s.ratio) return std::abs(1.0 - *s.ratio);
  return 1.0 - s.length / static_cast<double>(problem.layer_count);
}

std::optional<double> solve_tau_max(const TauMaxProblem& problem) {
  problem.validate();
  const double target = problem.threshold();
  auto excess = [&](double tau) { return decoherence_error(problem, tau) - target; };

  // Walk a geometric grid to the first point past the threshold, then bisect
  // inside that cell.
  const auto decades = static_cast<std::size_t>(std::ceil(std::log10(kTauCeiling / kTauFloor)));
  const auto grid = numerics::geomspace(kTauFloor, kTauCeiling, decades * kScanPointsPerDecade + 1);
  if (excess(grid.front()) >= 0.0) return grid.front();
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (excess(grid[i]) >= 0.0)
      return numerics::bisect(excess, grid[i - 1], grid[i], {.rel_tol = 1e-6, .max_iter = 200});
  }
  return std::nullopt;
}

}  // namespace gravclock
