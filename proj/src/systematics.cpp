#include "gravclock/systematics.hpp"

#include <boost/math/tools/minima.hpp>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "gravclock/errors.hpp"
#include "gravclock/format.hpp"
#include "gravclock/numerics.hpp"

namespace gravclock {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

double fourth(double x) { return (x * x) * (x * x); }

}  // namespace

void SystematicsCoefficients::validate() const {
  if (!std::isfinite(zeeman1) || zeeman1 == 0.0) throw ValidationError("zeeman1 must be nonzero");
  if (!std::isfinite(zeeman2)) throw ValidationError("zeeman2 must be finite");
  if (!positive_finite(dc_stark)) throw ValidationError("dc_stark must be > 0");
  if (!positive_finite(p2_zeeman)) throw ValidationError("p2_zeeman must be > 0");
  if (!positive_finite(p2_lifetime)) throw ValidationError("p2_lifetime must be > 0");
  if (!std::isfinite(bbr_fractional) || bbr_fractional < 0.0)
    throw ValidationError("bbr_fractional must be >= 0");
}

GravitationalSignal gravitational_signal(const PhysicalConstants& consts,
                                         const ClockSpecies& species, std::int64_t n_site,
                                         std::optional<double> layer_spacing) {
  if (n_site < 0) throw ValidationError("n_site must be >= 0");
  const double spacing = layer_spacing.value_or(species.half_wavelength());
  return gravitational_signal_for_extent(consts, species, static_cast<double>(n_site) * spacing);
}

GravitationalSignal gravitational_signal_for_extent(const PhysicalConstants& consts,
                                                    const ClockSpecies& species, double delta_z) {
  if (!std::isfinite(delta_z) || delta_z < 0.0) throw ValidationError("delta_z must be >= 0");
  GravitationalSignal s;
  s.delta_z = delta_z;
  s.nu = species.frequency();
  s.delta_nu = s.nu * relative_redshift(consts, delta_z);
  return s;
}

BudgetEntry make_budget_entry(std::string name, double shift_hz, const GravitationalSignal& signal,
                              std::string note) {
  BudgetEntry e;
  e.name = std::move(name);
  e.differential_shift = std::abs(shift_hz);
  e.fractional = signal.nu > 0.0 ? e.differential_shift / signal.nu : 0.0;
  e.reference_signal = signal.delta_nu;
  e.passes = e.differential_shift < e.reference_signal;
  e.note = std::move(note);
  return e;
}

double allowed_b_gradient(const SystematicsCoefficients& coeffs, const GravitationalSignal& signal) {
  if (signal.delta_z <= 0.0) return 0.0;
  return signal.delta_nu / (std::abs(coeffs.zeeman1) * signal.delta_z);
}

double calibration_line_shift(const SystematicsCoefficients& coeffs, double b_gradient,
                              double delta_z) {
  return coeffs.p2_zeeman * b_gradient * delta_z;
}

double calibration_line_resolution(const SystematicsCoefficients& coeffs) {
  return 1.0 / (kTwoPi * coeffs.p2_lifetime);
}

double residual_b_gradient(const SystematicsCoefficients& coeffs, double delta_z) {
  if (!(delta_z > 0.0)) throw ValidationError("delta_z must be > 0");
  return calibration_line_resolution(coeffs) / (coeffs.p2_zeeman * delta_z);
}

BudgetEntry first_order_zeeman_entry(const SystematicsCoefficients& coeffs, double b_gradient,
                                     const GravitationalSignal& signal) {
  return make_budget_entry("zeeman1-calibration",
                           coeffs.zeeman1 * b_gradient * signal.delta_z, signal,
                           "residual field gradient below the 3P2 line resolution");
}

BudgetEntry second_order_zeeman_check(const SystematicsCoefficients& coeffs, double b_bias,
                                      double b_gradient, const GravitationalSignal& signal) {
  const double b_bottom = b_bias;
  const double b_top = b_bias + b_gradient * signal.delta_z;
  // b_top^2 - b_bottom^2 factored to keep precision for tiny gradients.
  const double diff = (b_top - b_bottom) * (b_top + b_bottom);
  return make_budget_entry("zeeman2", std::abs(coeffs.zeeman2) * diff, signal,
                           "bias field " + format_short(b_bias) + " G");
}

double allowed_e_gradient(const SystematicsCoefficients& coeffs, const GravitationalSignal& signal,
                          double baseline) {
  if (!std::isfinite(baseline) || baseline < 0.0) throw ValidationError("baseline must be >= 0");
  if (signal.delta_z <= 0.0) return 0.0;
  // (E0 + G dz)^2 - E0^2 = dnu / k
  const double e_top = std::sqrt(baseline * baseline + signal.delta_nu / coeffs.dc_stark);
  return (e_top - baseline) / signal.delta_z;
}

BudgetEntry dc_stark_entry(const SystematicsCoefficients& coeffs, double e_gradient,
                           double baseline, const GravitationalSignal& signal) {
  const double rise = e_gradient * signal.delta_z;
  const double diff = rise * (rise + 2.0 * baseline);
  return make_budget_entry("dc-stark", coeffs.dc_stark * diff, signal,
                           "field gradient " + format_short(e_gradient) + " (V/m)/m");
}

void GaussianBeam::validate() const {
  if (!positive_finite(waist)) throw ValidationError("beam waist must be > 0");
  if (!positive_finite(wavelength)) throw ValidationError("beam wavelength must be > 0");
}

double GaussianBeam::rayleigh_range() const noexcept {
  return std::numbers::pi * waist * waist / wavelength;
}

double GaussianBeam::radius_at(double z) const noexcept {
  const double u = z / rayleigh_range();
  return waist * std::sqrt(1.0 + u * u);
}

IntensityExtremum lattice_intensity_ratio(const GaussianBeam& beam, double separation) {
  beam.validate();
  if (!positive_finite(separation)) throw ValidationError("separation must be > 0");
  const double z_r = beam.rayleigh_range();
  const double delta = separation / z_r;

  // 1 - w^2(z)/w^2(z+s) in units of z_R, rearranged so the numerator carries
  // no cancellation: delta (2u + delta) / (1 + (u + delta)^2).
  auto change = [delta](double u) { return delta * (2.0 * u + delta) / (1.0 + (u + delta) * (u + delta)); };
  const double upper = std::max(10.0, 10.0 * delta);
  const auto [u_best, neg] = boost::math::tools::brent_find_minima(
      [&](double u) { return -change(u); }, -0.5 * delta, upper,
      std::numeric_limits<double>::digits);

  IntensityExtremum out;
  out.z_numeric = u_best * z_r;
  out.z_closed_form = 0.5 * std::sqrt(delta * delta + 4.0) * z_r;
  const double midpoint = out.z_numeric + 0.5 * separation;
  out.z_relative_mismatch = std::abs(out.z_closed_form - midpoint) / std::abs(midpoint);
  out.max_change = -neg;
  return out;
}

double ac_stark_fractional(double intensity_change) {
  if (!std::isfinite(intensity_change) || intensity_change < 0.0)
    throw ValidationError("intensity change must be >= 0");
  return intensity_change / kAcStarkReferenceChange * kAcStarkReferenceShift;
}

BudgetEntry ac_stark_entry(double intensity_change, const GravitationalSignal& signal) {
  return make_budget_entry("lattice-ac-stark", ac_stark_fractional(intensity_change) * signal.nu,
                           signal, "intensity change " + format_short(intensity_change));
}

void BbrGeometry::validate() const {
  if (!positive_finite(wall_distance)) throw ValidationError("wall distance must be > 0");
  if (!positive_finite(disk_radius)) throw ValidationError("disk radius must be > 0");
  if (!positive_finite(T1) || !positive_finite(T2))
    throw ValidationError("wall temperatures must be > 0");
  if (!std::isfinite(extent) || extent < 0.0 || !(extent < wall_distance))
    throw ValidationError("ensemble extent must lie in [0, wall distance)");
}

double wall_solid_angle(double distance, double radius) {
  return kTwoPi * (1.0 - distance / std::hypot(distance, radius));
}

double bbr_ratio_minus_one(double T1, double T2, double omega_plus, double omega_minus) {
  const double a = fourth(T2);
  const double b = fourth(T1);
  return (a - b) * (omega_plus - omega_minus) / (a * omega_minus + b * omega_plus);
}

BbrDifferential bbr_differential(const BbrGeometry& geom, const SystematicsCoefficients& coeffs) {
  geom.validate();
  BbrDifferential out;
  out.omega_plus = wall_solid_angle(geom.wall_distance - geom.extent, geom.disk_radius);
  out.omega_minus = wall_solid_angle(geom.wall_distance + geom.extent, geom.disk_radius);
  out.ratio_minus_one = bbr_ratio_minus_one(geom.T1, geom.T2, out.omega_plus, out.omega_minus);
  out.fractional_shift = coeffs.bbr_fractional * out.ratio_minus_one;
  return out;
}

double fit_disk_radius(double target_ratio_minus_one, BbrGeometry geom) {
  geom.validate();
  const SystematicsCoefficients unit{};
  auto f = [&](double log_a) {
    geom.disk_radius = std::exp(log_a);
    return bbr_differential(geom, unit).ratio_minus_one - target_ratio_minus_one;
  };
  const double d = geom.wall_distance;
  const auto root = numerics::bisect(f, std::log(1e-6 * d), std::log(1e3 * d),
                                     {.rel_tol = 1e-15, .max_iter = 400});
  if (!root) throw ValidationError("target BBR ratio not reachable with a disk wall model");
  return std::exp(*root);
}

std::optional<double> bbr_temperature_limit(const BbrGeometry& geom,
                                            const SystematicsCoefficients& coeffs,
                                            const GravitationalSignal& signal) {
  geom.validate();
  if (signal.delta_nu <= 0.0) return 0.0;
  BbrGeometry g = geom;
  auto excess = [&](double dt) {
    g.T2 = g.T1 + dt;
    return std::abs(bbr_differential(g, coeffs).fractional_shift) * signal.nu - signal.delta_nu;
  };
  return numerics::bisect(excess, 0.0, geom.T1, {.rel_tol = 1e-12, .max_iter = 400});
}

void BudgetInputs::validate() const {
  coeffs.validate();
  if (!std::isfinite(b_bias)) throw ValidationError("b_bias must be finite");
  if (!std::isfinite(e_gradient) || e_gradient < 0.0)
    throw ValidationError("e_gradient must be >= 0");
  if (!std::isfinite(e_baseline) || e_baseline < 0.0)
    throw ValidationError("e_baseline must be >= 0");
  if (!positive_finite(beam_waist)) throw ValidationError("beam_waist must be > 0");
  if (!positive_finite(lattice_separation_wavelengths))
    throw ValidationError("lattice_separation_wavelengths must be > 0");
  if (!positive_finite(wall_distance)) throw ValidationError("wall_distance must be > 0");
  if (!positive_finite(disk_radius)) throw ValidationError("disk_radius must be > 0");
  if (!positive_finite(T1) || !positive_finite(T2))
    throw ValidationError("wall temperatures must be > 0");
  if (!std::isfinite(signal_scale) || signal_scale < 0.0)
    throw ValidationError("signal_scale must be >= 0");
}

bool Budget::all_pass() const noexcept {
  for (const auto& e : entries)
    if (!e.passes) return false;
  return true;
}

Budget assemble_budget(const PhysicalConstants& consts, const ClockSpecies& species,
                       const LatticeGeometry& geometry, const BudgetInputs& in) {
  in.validate();
  const auto& k = in.coeffs;

  Budget b;
  b.signal = gravitational_signal_for_extent(consts, species, geometry.vertical_extent());
  b.signal.delta_nu *= in.signal_scale;
  const double dz = b.signal.delta_z;

  b.allowed_b_gradient = allowed_b_gradient(k, b.signal);
  b.calibration_shift_at_allowed = calibration_line_shift(k, b.allowed_b_gradient, dz);
  b.allowed_e_gradient = allowed_e_gradient(k, b.signal, in.e_baseline);
  b.residual_b_gradient = dz > 0.0 ? residual_b_gradient(k, dz) : 0.0;

  b.lattice = lattice_intensity_ratio(GaussianBeam{in.beam_waist, species.magic_wavelength},
                                      in.lattice_separation_wavelengths * species.magic_wavelength);

  const BbrGeometry bbr{in.wall_distance, in.disk_radius, in.T1, in.T2, dz};
  b.bbr = bbr_differential(bbr, k);
  b.bbr_delta_t_limit = bbr_temperature_limit(bbr, k, b.signal);

  b.entries.push_back(first_order_zeeman_entry(k, b.residual_b_gradient, b.signal));
  b.entries.push_back(second_order_zeeman_check(k, in.b_bias, b.residual_b_gradient, b.signal));
  b.entries.push_back(dc_stark_entry(k, in.e_gradient, in.e_baseline, b.signal));
  b.entries.push_back(ac_stark_entry(b.lattice.max_change, b.signal));
  b.entries.push_back(make_budget_entry("bbr", b.bbr.fractional_shift * b.signal.nu, b.signal,
                                        "wall temperature difference " +
                                            format_short(in.T2 - in.T1) + " K"));

  // Effects that are uniform over the ensemble or cancel as common mode.
  b.entries.push_back(make_budget_entry("probe-ac-stark", 0.0, b.signal,
                                        "probe beam far larger than the lattice beam"));
  b.entries.push_back(make_budget_entry("density", 0.0, b.signal, "one atom per site"));
  b.entries.push_back(make_budget_entry("dipole-dipole", 0.0, b.signal,
                                        "non-monotonic in z; common mode"));
  b.entries.push_back(make_budget_entry("background-gas", 0.0, b.signal,
                                        "uniform over the ensemble"));
  b.entries.push_back(make_budget_entry("tunneling", 0.0, b.signal,
                                        "probe aligned with the lattice axis"));
  return b;
}

}  // namespace gravclock
