// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failing criteria.

#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "gravclock/dephasing.hpp"
#include "gravclock/format.hpp"
#include "gravclock/physics.hpp"
#include "gravclock/scenario.hpp"
#include "gravclock/sweep.hpp"
#include "gravclock/systematics.hpp"
#include "gravclock/threshold.hpp"
#include "oracles.hpp"

using namespace gravclock;

namespace {

const PhysicalConstants kConsts{};
const ClockSpecies kYb = ClockSpecies::ytterbium();
const double kSpacing = kYb.half_wavelength();
const double kPhiG = per_layer_phase_rate(kConsts, kYb, kSpacing);

class Criterion {
 public:
  Criterion(int id, std::string title) : id_(id), title_(std::move(title)) {}

  void expect(bool ok, const std::string& what) {
    ok_ = ok_ && ok;
    if (!detail_.empty()) detail_ += "; ";
    detail_ += (ok ? "" : "!") + what;
  }
  void within(double got, double want, double rel, const std::string& label) {
    const bool ok = std::isfinite(got) && std::abs(got - want) <= rel * std::abs(want);
    expect(ok, label + "=" + format_short(got));
  }
  void range(double got, double lo, double hi, const std::string& label) {
    expect(got >= lo && got <= hi, label + "=" + format_short(got));
  }
  bool report() const {
    std::printf("%s %d %s: %s\n", ok_ ? "PASS" : "FAIL", id_, title_.c_str(), detail_.c_str());
    return ok_;
  }

 private:
  int id_;
  std::string title_;
  std::string detail_;
  bool ok_ = true;
};

Criterion decoherence_size() {
  Criterion c(1, "decoherence size");
  ThresholdProblem p;
  const auto per_layer = solve_decoherence_size(p);
  p.partition = Partition::Halves;
  const auto halves = solve_decoherence_size(p);
  c.expect(std::abs(per_layer.n_real - 497.0) <= 1.0,
           "n_per_layer=" + format_short(per_layer.n_real));
  c.expect(std::abs(halves.n_real - 165.0) <= 1.0, "n_halves=" + format_short(halves.n_real));
  c.within(per_layer_sql(kYb, 30.0, 497), 2.06e-20, 0.01, "sql");
  c.within(qpn_stability(kYb, InterrogationParams::single_sequence(30.0),
                         decoherence_atom_count(497)),
           9.23e-22, 0.01, "qpn");
  c.within(static_cast<double>(decoherence_atom_count(per_layer.n_rounded)), 1.23e8, 0.01, "N");
  return c;
}

Criterion gravitational_signal_check() {
  Criterion c(2, "gravitational signal");
  c.within(relative_redshift(kConsts, 0.01), 1.09e-18, 0.005, "redshift_1cm");
  const auto s = gravitational_signal(kConsts, kYb, 100);
  c.within(s.delta_z, 37.97e-6, 0.005, "delta_z");
  c.within(s.delta_nu, 2.145e-6, 0.005, "delta_nu");
  return c;
}

Criterion dephasing_curves() {
  Criterion c(3, "dephasing curves");
  const auto scaled = bloch_sum({1e-5, kPhiG, 501, 100.0, Convention::PaperFigure});
  c.range(*scaled.ratio, 0.5, 0.7, "ratio_n500_100s_scaled");
  double worst = 0.0;
  for (int t = 1; t <= 200; ++t)
    worst = std::max(worst,
                     std::abs(*bloch_sum({1e-5, kPhiG, 101, double(t), Convention::PaperFigure}).ratio - 1.0));
  c.expect(worst < 2e-2, "max|ratio-1|_n100=" + format_short(worst));
  double worst_phys = 0.0;
  for (std::int64_t n : {100, 200, 300, 400, 500})
    for (int t = 1; t <= 200; ++t)
      worst_phys = std::max(
          worst_phys,
          std::abs(*bloch_sum({1e-5, kPhiG, n + 1, double(t), Convention::Physical}).ratio - 1.0));
  c.expect(worst_phys < 1e-4, "max|ratio-1|_physical=" + format_short(worst_phys));
  return c;
}

std::vector<StabilityPoint> cubic_table() {
  SweepSpec s;
  s.sizes = log_spaced_sizes(2, 1000, 40);
  s.phi_l = {1e-6, 1e-5, 1e-4, 1e-3, 1e-2};
  s.convention = Convention::PaperFigure;
  return sweep(kYb, kConsts, s, kSpacing, 0);
}

Criterion tau_max_points(const std::vector<StabilityPoint>& table) {
  Criterion c(4, "interrogation limit");
  const auto p200 = best_stability_at_1s(kYb, kConsts, LatticeGeometry::cubic(200, kSpacing), 1e-2,
                                         Convention::PaperFigure);
  c.range(p200.tau_max, 40.0, 90.0, "tau_max_n200");
  c.within(p200.sigma_at_tau, 2.58e-20, 0.3, "sigma_tau");
  c.within(p200.sigma_at_1s, 2e-19, 0.3, "sigma_1s");
  const auto curve = curve_for(table, 1e-2);
  const auto k = curve_argmin(curve);
  c.expect(k > 0 && k + 1 < curve.size(), "argmin_n=" + std::to_string(curve[k].size));
  const auto p2 = best_stability_at_1s(kYb, kConsts, LatticeGeometry::cubic(2, kSpacing), 1e-6,
                                       Convention::PaperFigure);
  c.within(p2.tau_max, 1.97e6, 0.1, "tau_max_n2");
  return c;
}

Criterion scaling(const std::vector<StabilityPoint>& table) {
  Criterion c(5, "scaling exponents");
  const auto curve = curve_for(table, 1e-2);
  const double small = scaling_exponent(curve, Regime::Small);
  const double large = scaling_exponent(curve, Regime::Large);
  c.expect(std::abs(small + 1.0) <= 0.15, "cubic_small=" + format_short(small));
  c.expect(std::abs(large - 0.25) <= 0.1, "cubic_large=" + format_short(large));
  SweepSpec s;
  s.family = GeometryFamily::Slab;
  s.sizes = log_spaced_sizes(2, 1000, 40);
  s.phi_l = {1e-6};
  s.atoms_per_layer = 10000;
  s.convention = Convention::PaperFigure;
  const auto slab = sweep(kYb, kConsts, s, kSpacing, 0);
  const double slab_large = scaling_exponent(slab, Regime::Large);
  c.expect(std::abs(slab_large - 1.0) <= 0.15, "slab_large=" + format_short(slab_large));
  return c;
}

Criterion systematics() {
  Criterion c(6, "systematics budget");
  const SystematicsCoefficients coeffs;
  const auto signal = gravitational_signal(kConsts, kYb, 100);
  const double g = allowed_b_gradient(coeffs, signal);
  c.within(g, 2.69e-4, 0.1, "b_gradient");
  c.within(calibration_line_shift(coeffs, 2.69e-4, signal.delta_z), 0.0214, 0.05, "p2_shift");
  c.expect(true, "p2_shift_at_computed_gradient=" +
                     format_short(calibration_line_shift(coeffs, g, signal.delta_z)));
  BbrGeometry geom;
  geom.extent = signal.delta_z;
  const auto bbr = bbr_differential(geom, coeffs);
  c.within(bbr.ratio_minus_one, 1.04e-5, 0.5, "bbr_ratio-1");
  c.within(bbr.fractional_shift, 2.46e-20, 0.5, "bbr_shift");
  c.expect(ac_stark_fractional(0.10) == 1e-19, "ac_stark_ref=" + format_short(ac_stark_fractional(0.10)));
  const auto lattice = lattice_intensity_ratio(GaussianBeam{}, 100.0 * kYb.magic_wavelength);
  c.expect(lattice.max_change < 1e-3, "intensity_change=" + format_short(lattice.max_change) +
                                          " (reference " + format_short(lattice.reference_change) + ")");
  c.expect(lattice.z_relative_mismatch < 1e-6,
           "extremum_mismatch=" + format_short(lattice.z_relative_mismatch));
  const auto budget = assemble_budget(kConsts, kYb, LatticeGeometry::cubic(100, kSpacing), BudgetInputs{});
  c.expect(budget.all_pass(), "budget_all_pass");
  return c;
}

Criterion properties() {
  Criterion c(7, "property checks");
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(0.0, 1.0);

  bool lin = true;
  for (int i = 0; i < 200; ++i) {
    const double h = 20.0 * u(rng) - 10.0, a = 100.0 * u(rng);
    lin = lin && std::abs(relative_redshift(kConsts, a * h) - a * relative_redshift(kConsts, h)) <=
                     1e-12 * std::abs(a * relative_redshift(kConsts, h));
  }
  c.expect(lin, "redshift_linear");

  bool sqrt_n = true;
  const double ref = qpn_stability(kYb, InterrogationParams::single_sequence(30.0), 1);
  for (std::int64_t n = 1; n < (1LL << 40); n *= 7)
    sqrt_n = sqrt_n && std::abs(qpn_stability(kYb, InterrogationParams::single_sequence(30.0), n) *
                                        std::sqrt(double(n)) - ref) <= 1e-13 * ref;
  c.expect(sqrt_n, "qpn_sqrtN");

  bool counts = true;
  for (std::int64_t n = 1; n <= 1000; ++n)
    counts = counts && LatticeGeometry::cubic(n, kSpacing).total_atoms() == n * n * (n + 1);
  c.expect(counts, "cubic_counts");

  double worst = 0.0;
  for (int i = 0; i < 300; ++i) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(u(rng) * 3000);
    const double theta = 3.14159 * u(rng);
    const auto s = bloch_sum({u(rng), theta, m, 1.0, Convention::Physical});
    worst = std::max(worst, std::abs(s.length - m * contrast_closed_form(theta, m, 1.0)) / m);
  }
  c.expect(worst <= 1e-9, "dirichlet_rel_err=" + format_short(worst));

  bool zero = true;
  for (std::int64_t m : {1, 2, 50, 20001})
    zero = zero && std::abs(bloch_sum({0.0, 1e-3, m, 77.0, Convention::Physical}).s_y) <= 1e-12 * m;
  c.expect(zero, "no_drift_no_phase");

  bool exact = true;
  for (std::int64_t m = 1; m <= 7; ++m) {
    const auto s = bloch_sum({0.3, 0.2, m, 1.7, Convention::Physical});
    const auto [sx, sy] = oracle::brute_bloch(0.3, 0.2, m, 1.7);
    exact = exact && s.s_x == sx && s.s_y == sy;
  }
  c.expect(exact, "brute_force_m<=7");

  double tau_err = 0.0;
  for (std::int64_t n : {2, 30, 200, 800}) {
    const auto prob = TauMaxProblem::for_geometry(LatticeGeometry::cubic(n, kSpacing), 1e-3, kPhiG,
                                                  Convention::PaperFigure);
    const double want = oracle::first_crossing(
        [&](double t) { return oracle::relative_phase_error(1e-3, double(n) * kPhiG, n + 1, t); },
        prob.threshold());
    tau_err = std::max(tau_err, std::abs(*solve_tau_max(prob) / want - 1.0));
  }
  c.expect(tau_err <= 1e-5, "tau_max_vs_closed_form=" + format_short(tau_err));

  bool roundtrip = true;
  for (int i = 0; i < 50; ++i) {
    Scenario s;
    s.threshold_tau = 1.0 + 100.0 * u(rng);
    s.dephase_phi_l = 1e-5 * u(rng);
    s.budget.T2 = 293.0 + u(rng);
    s.geometry = GeometrySpec::parse("slab:" + std::to_string(1 + i) + ":" + std::to_string(2 + i));
    roundtrip = roundtrip && parse_scenario(serialize_scenario(s)) == s;
  }
  c.expect(roundtrip, "scenario_roundtrip");
  return c;
}

}  // namespace

int main() {
  const auto table = cubic_table();
  const Criterion all[] = {decoherence_size(),     gravitational_signal_check(), dephasing_curves(),
                           tau_max_points(table),  scaling(table),               systematics(),
                           properties()};
  int failures = 0;
  for (const auto& c : all) failures += c.report() ? 0 : 1;
  return failures;
}
