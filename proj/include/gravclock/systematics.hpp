#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gravclock/physics.hpp"

namespace gravclock {

// Sensitivities of the clock transition (and of the 1S0 - 3P2 line used to
// calibrate the magnetic field) to the environment.
struct SystematicsCoefficients {
  double zeeman1 = 199.516;           // Hz/G
  double zeeman2 = -0.06095;          // Hz/G^2
  double dc_stark = 3.626e-6;         // Hz/(V/m)^2
  double p2_zeeman = 2.1e6;           // Hz/G
  double p2_lifetime = 14.0;          // s
  double bbr_fractional = 2.39e-15;   // total fractional BBR shift near room temperature

  static SystematicsCoefficients ytterbium() { return {}; }
  void validate() const;
  friend bool operator==(const SystematicsCoefficients&, const SystematicsCoefficients&) = default;
};

// Redshift between the bottom and the top layer.
struct GravitationalSignal {
  double delta_z = 0.0;   // m
  double delta_nu = 0.0;  // Hz
  double nu = 0.0;        // Hz

  double fractional() const noexcept { return nu > 0.0 ? delta_nu / nu : 0.0; }
};

// delta_z = n_site * layer_spacing; delta_nu = nu g delta_z / c^2. n_site = 0
// gives a zero signal. layer_spacing defaults to lambda/2.
GravitationalSignal gravitational_signal(const PhysicalConstants& consts,
                                         const ClockSpecies& species, std::int64_t n_site,
                                         std::optional<double> layer_spacing = std::nullopt);
GravitationalSignal gravitational_signal_for_extent(const PhysicalConstants& consts,
                                                    const ClockSpecies& species, double delta_z);

struct BudgetEntry {
  std::string name;
  double differential_shift = 0.0;  // Hz, top vs bottom layer
  double fractional = 0.0;          // differential_shift / nu
  double reference_signal = 0.0;    // Hz
  bool passes = false;              // differential_shift < reference_signal
  std::string note;
};

BudgetEntry make_budget_entry(std::string name, double shift_hz, const GravitationalSignal& signal,
                              std::string note = {});

// Largest first-order Zeeman gradient whose shift across the ensemble stays
// below the gravitational signal, G/m.
double allowed_b_gradient(const SystematicsCoefficients& coeffs, const GravitationalSignal& signal);

// Splitting of the 3P2 calibration line between top and bottom layer, Hz.
double calibration_line_shift(const SystematicsCoefficients& coeffs, double b_gradient,
                              double delta_z);

// Natural linewidth of the 3P2 line, Hz. Used as its frequency resolution.
double calibration_line_resolution(const SystematicsCoefficients& coeffs);

// Smallest field gradient the calibration line can resolve across delta_z, G/m.
double residual_b_gradient(const SystematicsCoefficients& coeffs, double delta_z);

BudgetEntry first_order_zeeman_entry(const SystematicsCoefficients& coeffs, double b_gradient,
                                     const GravitationalSignal& signal);

// |zeeman2| (B_top^2 - B_bottom^2) with B(z) = b_bias + b_gradient z, z in [0, delta_z].
BudgetEntry second_order_zeeman_check(const SystematicsCoefficients& coeffs, double b_bias,
                                      double b_gradient, const GravitationalSignal& signal);

// Largest dE/dz such that dc_stark |E_top^2 - E_bottom^2| <= delta_nu with E
// rising linearly from `baseline` at the bottom layer, (V/m)/m.
double allowed_e_gradient(const SystematicsCoefficients& coeffs, const GravitationalSignal& signal,
                          double baseline = 0.0);

BudgetEntry dc_stark_entry(const SystematicsCoefficients& coeffs, double e_gradient,
                           double baseline, const GravitationalSignal& signal);

struct GaussianBeam {
  double waist = 170e-6;          // 1/e^2 intensity radius at the focus, m
  double wavelength = 759.356e-9; // m

  void validate() const;
  double rayleigh_range() const noexcept;
  double radius_at(double z) const noexcept;
};

struct IntensityExtremum {
  double z_numeric = 0.0;      // lower-layer position of the largest change, m
  double z_closed_form = 0.0;  // midpoint of the pair, z_R sqrt(delta^2 + 4)/2, m
  double z_relative_mismatch = 0.0;
  double max_change = 0.0;     // |1 - w^2(z)/w^2(z + s)| at z_numeric
  double reference_change = 0.000846;  // reference figure, reported alongside
};

// Extremum of the intensity ratio between two layers `separation` apart on a
// Gaussian lattice beam. The numeric maximum is authoritative; the closed form
// is carried for comparison.
IntensityExtremum lattice_intensity_ratio(const GaussianBeam& beam, double separation);

// Lattice light shift scaled from the reference point "10 % intensity change
// -> 1e-19 fractional".
inline constexpr double kAcStarkReferenceChange = 0.10;
inline constexpr double kAcStarkReferenceShift = 1e-19;

double ac_stark_fractional(double intensity_change);
BudgetEntry ac_stark_entry(double intensity_change, const GravitationalSignal& signal);

// Disk radius reproducing a 1.04e-5 BBR field difference for walls 5 cm away
// at 293 K / 294 K across a 37.97 um ensemble. See fit_disk_radius().
inline constexpr double kFittedDiskRadius = 0.063234383005698;

struct BbrGeometry {
  double wall_distance = 0.05;  // m
  double disk_radius = kFittedDiskRadius;  // m
  double T1 = 293.0;  // K, wall seen from the far side
  double T2 = 294.0;  // K
  double extent = 0.0;  // ensemble height, m

  void validate() const;
};

// Solid angle of a disk of radius a seen on-axis from distance d.
double wall_solid_angle(double distance, double radius);

// (T2^4 W+ + T1^4 W-) / (T2^4 W- + T1^4 W+) - 1, evaluated without
// cancellation in the numerator.
double bbr_ratio_minus_one(double T1, double T2, double omega_plus, double omega_minus);

struct BbrDifferential {
  double omega_plus = 0.0;   // nearest layer, sr
  double omega_minus = 0.0;  // farthest layer, sr
  double ratio_minus_one = 0.0;
  double fractional_shift = 0.0;  // bbr_fractional * (ratio - 1)
};

BbrDifferential bbr_differential(const BbrGeometry& geom, const SystematicsCoefficients& coeffs);

// Disk radius for which the ratio reaches target_ratio_minus_one.
double fit_disk_radius(double target_ratio_minus_one, BbrGeometry geom);

// Wall temperature difference (T2 - T1) at which the BBR differential equals
// the gravitational signal. nullopt if no difference below T1 suffices.
std::optional<double> bbr_temperature_limit(const BbrGeometry& geom,
                                            const SystematicsCoefficients& coeffs,
                                            const GravitationalSignal& signal);

struct BudgetInputs {
  SystematicsCoefficients coeffs;
  double b_bias = 0.1;        // G
  double e_gradient = 1e4;    // (V/m)/m
  double e_baseline = 0.0;    // V/m
  double beam_waist = 170e-6; // m
  double lattice_separation_wavelengths = 100.0;
  double wall_distance = 0.05;
  double disk_radius = kFittedDiskRadius;
  double T1 = 293.0;
  double T2 = 293.010;
  double signal_scale = 1.0;  // multiplies delta_nu; 0 turns the signal off

  void validate() const;
  friend bool operator==(const BudgetInputs&, const BudgetInputs&) = default;
};

struct Budget {
  GravitationalSignal signal;
  double allowed_b_gradient = 0.0;
  double residual_b_gradient = 0.0;
  double calibration_shift_at_allowed = 0.0;
  double allowed_e_gradient = 0.0;
  IntensityExtremum lattice;
  BbrDifferential bbr;
  std::optional<double> bbr_delta_t_limit;
  std::vector<BudgetEntry> entries;

  bool all_pass() const noexcept;
};

Budget assemble_budget(const PhysicalConstants& consts, const ClockSpecies& species,
                       const LatticeGeometry& geometry, const BudgetInputs& inputs);

}  // namespace gravclock
