#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace gravclock {

// How the per-layer gravitational phase rate enters the layer sum.
//
// Physical: phi_g is the phase rate between adjacent layers, used as given.
// PaperFigure: phi_g is multiplied by the layer span (layer_count - 1, i.e.
//   n_site for a cubic ensemble) before summation. The dephasing and stability
//   curves use this scaling; the threshold algebra for n_site = 497 uses
//   Physical.
enum class Convention { Physical, PaperFigure };

std::string_view to_string(Convention c) noexcept;
// Accepts "physical" and "paper-figure". Throws ValidationError otherwise.
Convention parse_convention(std::string_view text);

struct DephasingInput {
  double phi_l = 0.0;  // laser phase drift rate, rad/s
  double phi_g = 0.0;  // per-layer gravitational phase rate, rad/s
  std::int64_t layer_count = 1;
  double t = 0.0;  // s
  Convention convention = Convention::Physical;

  void validate() const;
  // phi_g after applying the convention.
  double effective_phi_g() const noexcept;
};

struct BlochSummary {
  double s_x = 0.0;
  double s_y = 0.0;
  double length = 0.0;
  double phi_eff = 0.0;          // asin(S_y / layer_count), rad
  std::optional<double> ratio;   // phi_eff / (phi_l t); absent when phi_l t == 0
  Convention convention = Convention::Physical;
};

// Direct summation of unit Bloch vectors, one per layer, at phases
// (phi_l + k phi_g') t for symmetric offsets k = -(m-1)/2 ... (m-1)/2.
// Ascending k; compensated summation once m exceeds 10^4.
BlochSummary bloch_sum(const DephasingInput& in);

// |sin(m theta / 2) / (m sin(theta / 2))| with theta = phi_g_eff * t.
double contrast_closed_form(double phi_g_eff, std::int64_t layer_count, double t);

struct CurvePoint {
  double t = 0.0;
  std::optional<double> ratio;
  double contrast = 0.0;  // length / layer_count
  double length = 0.0;
};

// bloch_sum evaluated at every time in t_grid (strictly increasing, >= 0).
// Grid points are evaluated concurrently when threads > 1; output order
// follows t_grid.
std::vector<CurvePoint> dephase_curve(const DephasingInput& tmpl, std::span<const double> t_grid,
                                      unsigned threads = 1);

}  // namespace gravclock
