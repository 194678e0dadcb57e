#pragma once

#include <cstdint>
#include <numbers>
#include <string>
#include <string_view>
#include <variant>

namespace gravclock {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Local gravity and the speed of light, SI units. g is treated as uniform over
// the ensemble; only height differences enter any formula.
struct PhysicalConstants {
  double g = 9.80665;      // m/s^2
  double c = 299792458.0;  // m/s

  void validate() const;
  friend bool operator==(const PhysicalConstants&, const PhysicalConstants&) = default;
};

struct ClockSpecies {
  std::string name;
  double omega0 = 0.0;            // rad/s
  double magic_wavelength = 0.0;  // m

  // Transition frequency nu = omega0 / 2pi, Hz.
  double frequency() const noexcept { return omega0 / kTwoPi; }
  double half_wavelength() const noexcept { return 0.5 * magic_wavelength; }
  void validate() const;

  // 1S0 - 3P0 in Yb with the 759.356 nm magic lattice.
  static ClockSpecies ytterbium();

  friend bool operator==(const ClockSpecies&, const ClockSpecies&) = default;
};

// Looks up a built-in preset. Throws ValidationError for unknown names.
ClockSpecies species_by_name(std::string_view name);

// Geometry of the trapped ensemble along gravity.
//
// cubic(n): n x n sites per layer, n + 1 layers along z, one atom per site.
// slab(a, L): L layers of a atoms each (an elongated 1D lattice).
class LatticeGeometry {
 public:
  struct Cubic {
    std::int64_t n_site;
    friend bool operator==(const Cubic&, const Cubic&) = default;
  };
  struct Slab {
    std::int64_t atoms_per_layer;
    std::int64_t n_layer;
    friend bool operator==(const Slab&, const Slab&) = default;
  };

  static LatticeGeometry cubic(std::int64_t n_site, double layer_spacing);
  static LatticeGeometry slab(std::int64_t atoms_per_layer, std::int64_t n_layer,
                              double layer_spacing);

  bool is_cubic() const noexcept { return std::holds_alternative<Cubic>(kind_); }
  const std::variant<Cubic, Slab>& kind() const noexcept { return kind_; }

  double layer_spacing() const noexcept { return spacing_; }
  std::int64_t layer_count() const noexcept;
  std::int64_t atoms_per_layer() const noexcept;
  // Exact; throws ValidationError at construction if it would overflow int64.
  std::int64_t total_atoms() const noexcept;
  // Height between the bottom and top layer, m.
  double vertical_extent() const noexcept;
  // Size label used in tables: n_site for cubic, n_layer for slab.
  std::int64_t size() const noexcept;

  friend bool operator==(const LatticeGeometry&, const LatticeGeometry&) = default;

 private:
  LatticeGeometry(std::variant<Cubic, Slab> kind, double spacing);

  std::variant<Cubic, Slab> kind_;
  double spacing_;
  std::int64_t total_atoms_ = 0;
};

struct InterrogationParams {
  double tau_R = 0.0;    // Ramsey interrogation time, s
  double T_C = 0.0;      // cycle time, s
  double tau = 0.0;      // total integration time, s
  double xi_W_sq = 1.0;  // Wineland parameter; 1 for a coherent spin state

  // One Ramsey sequence: tau = tau_R = T_C.
  static InterrogationParams single_sequence(double tau, double xi_W_sq = 1.0);
  void validate() const;
};

// g * dh / c^2. Linear and antisymmetric in dh.
double relative_redshift(const PhysicalConstants& consts, double delta_h);

// Gravitational phase accumulation rate between adjacent layers, rad/s.
double per_layer_phase_rate(const PhysicalConstants& consts, const ClockSpecies& species,
                            double layer_spacing);

// QPN-limited Allan deviation:
//   (1 / (omega0 tau_R)) * sqrt(T_C / tau) * sqrt(xi_W^2 / N)
double qpn_stability(const ClockSpecies& species, const InterrogationParams& p,
                     std::int64_t atoms);

// SQL of one n_site x n_site layer in a single sequence: 1 / (omega0 tau n_site).
double per_layer_sql(const ClockSpecies& species, double tau, std::int64_t n_site);

// Single-trapped-atom relativistic stability limit, kept for
// comparison only; not used by any calculation.
inline constexpr double kSingleAtomRelativisticLimit = 1.30e-21;

}  // namespace gravclock
