#include "gravclock/physics.hpp"

#include <cmath>
#include <string>

#include "gravclock/errors.hpp"

namespace gravclock {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out = 0;
  if (__builtin_mul_overflow(a, b, &out))
    throw ValidationError("atom count overflows a 64-bit integer");
  return out;
}

}  // namespace

void PhysicalConstants::validate() const {
  if (!positive_finite(g)) throw ValidationError("constants.g must be > 0");
  if (!positive_finite(c)) throw ValidationError("constants.c must be > 0");
}

void ClockSpecies::validate() const {
  if (!positive_finite(omega0)) throw ValidationError("species omega0 must be > 0");
  if (!positive_finite(magic_wavelength))
    throw ValidationError("species magic_wavelength must be > 0");
}

ClockSpecies ClockSpecies::ytterbium() {
  return ClockSpecies{"Yb", kTwoPi * 5.18295e14, 759.356e-9};
}

ClockSpecies species_by_name(std::string_view name) {
  if (name == "Yb") return ClockSpecies::ytterbium();
  throw ValidationError("unknown species '" + std::string(name) + "'");
}

LatticeGeometry::LatticeGeometry(std::variant<Cubic, Slab> kind, double spacing)
    : kind_(kind), spacing_(spacing) {
  if (!positive_finite(spacing_)) throw ValidationError("layer spacing must be > 0");
  if (const auto* c = std::get_if<Cubic>(&kind_)) {
    if (c->n_site < 1) throw ValidationError("cubic n_site must be >= 1");
    total_atoms_ = checked_mul(checked_mul(c->n_site, c->n_site), c->n_site + 1);
  } else {
    const auto& s = std::get<Slab>(kind_);
    if (s.atoms_per_layer < 1) throw ValidationError("slab atoms_per_layer must be >= 1");
    if (s.n_layer < 1) throw ValidationError("slab n_layer must be >= 1");
    total_atoms_ = checked_mul(s.atoms_per_layer, s.n_layer);
  }
}

LatticeGeometry LatticeGeometry::cubic(std::int64_t n_site, double layer_spacing) {
  return LatticeGeometry(Cubic{n_site}, layer_spacing);
}

LatticeGeometry LatticeGeometry::slab(std::int64_t atoms_per_layer, std::int64_t n_layer,
                                      double layer_spacing) {
  return LatticeGeometry(Slab{atoms_per_layer, n_layer}, layer_spacing);
}

std::int64_t LatticeGeometry::layer_count() const noexcept {
  if (const auto* c = std::get_if<Cubic>(&kind_)) return c->n_site + 1;
  return std::get<Slab>(kind_).n_layer;
}

std::int64_t LatticeGeometry::atoms_per_layer() const noexcept {
  if (const auto* c = std::get_if<Cubic>(&kind_)) return c->n_site * c->n_site;
  return std::get<Slab>(kind_).atoms_per_layer;
}

std::int64_t LatticeGeometry::total_atoms() const noexcept { return total_atoms_; }

double LatticeGeometry::vertical_extent() const noexcept {
  return static_cast<double>(layer_count() - 1) * spacing_;
}

std::int64_t LatticeGeometry::size() const noexcept {
  if (const auto* c = std::get_if<Cubic>(&kind_)) return c->n_site;
  return std::get<Slab>(kind_).n_layer;
}

InterrogationParams InterrogationParams::single_sequence(double tau, double xi_W_sq) {
  return InterrogationParams{tau, tau, tau, xi_W_sq};
}

void InterrogationParams::validate() const {
  if (!positive_finite(tau_R)) throw ValidationError("tau_R must be > 0");
  if (!positive_finite(T_C)) throw ValidationError("T_C must be > 0");
  if (!positive_finite(tau)) throw ValidationError("tau must be > 0");
  if (!positive_finite(xi_W_sq) || xi_W_sq > 1.0)
    throw ValidationError("xi_W^2 must lie in (0, 1]");
}

double relative_redshift(const PhysicalConstants& consts, double delta_h) {
  return consts.g * delta_h / (consts.c * consts.c);
}

double per_layer_phase_rate(const PhysicalConstants& consts, const ClockSpecies& species,
                            double layer_spacing) {
  return species.omega0 * relative_redshift(consts, layer_spacing);
}

double qpn_stability(const ClockSpecies& species, const InterrogationParams& p,
                     std::int64_t atoms) {
  p.validate();
  if (atoms < 1) throw ValidationError("QPN needs at least one atom");
  return (1.0 / (species.omega0 * p.tau_R)) * std::sqrt(p.T_C / p.tau) *
         std::sqrt(p.xi_W_sq / static_cast<double>(atoms));
}

double per_layer_sql(const ClockSpecies& species, double tau, std::int64_t n_site) {
  if (!positive_finite(tau)) throw ValidationError("tau must be > 0");
  if (n_site < 1) throw ValidationError("n_site must be >= 1");
  return 1.0 / (species.omega0 * tau * static_cast<double>(n_site));
}

}  // namespace gravclock
