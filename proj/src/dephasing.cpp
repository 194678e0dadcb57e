#include "gravclock/dephasing.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <thread>

#include "gravclock/errors.hpp"
#include "gravclock/numerics.hpp"

namespace gravclock {

namespace {

constexpr std::int64_t kCompensateAbove = 10'000;

}  // namespace

std::string_view to_string(Convention c) noexcept {
  return c == Convention::Physical ? "physical" : "paper-figure";
}

Convention parse_convention(std::string_view text) {
  if (text == "physical") return Convention::Physical;
  if (text == "paper-figure") return Convention::PaperFigure;
  throw ValidationError("unknown convention '" + std::string(text) +
                        "' (expected physical or paper-figure)");
}

void DephasingInput::validate() const {
  if (!std::isfinite(phi_l) || !std::isfinite(phi_g) || !std::isfinite(t))
    throw ValidationError("dephasing input must be finite");
  if (layer_count < 1) throw ValidationError("layer_count must be >= 1");
  if (t < 0.0) throw ValidationError("t must be >= 0");
}

double DephasingInput::effective_phi_g() const noexcept {
  if (convention == Convention::PaperFigure)
    return phi_g * static_cast<double>(layer_count - 1);
  return phi_g;
}

BlochSummary bloch_sum(const DephasingInput& in) {
  in.validate();
  const double phi_g = in.effective_phi_g();
  const std::int64_t m = in.layer_count;
  const double k0 = -0.5 * static_cast<double>(m - 1);

  double s_x = 0.0;
  double s_y = 0.0;
  if (m > kCompensateAbove) {
    numerics::CompensatedSum cx, cy;
    for (std::int64_t j = 0; j < m; ++j) {
      const double k = k0 + static_cast<double>(j);
      const double phase = (in.phi_l + k * phi_g) * in.t;
      cx.add(std::cos(phase));
      cy.add(std::sin(phase));
    }
    s_x = cx.value();
    s_y = cy.value();
  } else {
    for (std::int64_t j = 0; j < m; ++j) {
      const double k = k0 + static_cast<double>(j);
      const double phase = (in.phi_l + k * phi_g) * in.t;
      s_x += std::cos(phase);
      s_y += std::sin(phase);
    }
  }

  BlochSummary out;
  out.s_x = s_x;
  out.s_y = s_y;
  out.length = std::hypot(s_x, s_y);
  out.convention = in.convention;
  const double arg = std::clamp(s_y / static_cast<double>(m), -1.0, 1.0);
  out.phi_eff = std::asin(arg);
  const double nominal = in.phi_l * in.t;
  if (nominal != 0.0) out.ratio = out.phi_eff / nominal;
  return out;
}

double contrast_closed_form(double phi_g_eff, std::int64_t layer_count, double t) {
  if (layer_count < 1) throw ValidationError("layer_count must be >= 1");
  const double theta = phi_g_eff * t;
  const double m = static_cast<double>(layer_count);
  const double half = std::sin(0.5 * theta);
  // theta on a multiple of 2 pi: every phasor aligned.
  if (std::abs(half) < 1e-15) return 1.0;
  return std::abs(std::sin(0.5 * m * theta) / (m * half));
}

std::vector<CurvePoint> dephase_curve(const DephasingInput& tmpl, std::span<const double> t_grid,
                                      unsigned threads) {
  for (std::size_t i = 0; i < t_grid.size(); ++i) {
    if (!std::isfinite(t_grid[i]) || t_grid[i] < 0.0)
      throw ValidationError("t_grid values must be finite and >= 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw ValidationError("t_grid must be strictly increasing");
  }
  tmpl.validate();

  std::vector<CurvePoint> out(t_grid.size());
  auto eval = [&](std::size_t i) {
    DephasingInput in = tmpl;
    in.t = t_grid[i];
    const BlochSummary s = bloch_sum(in);
    out[i] = CurvePoint{in.t, s.ratio, s.length / static_cast<double>(in.layer_count), s.length};
  };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(t_grid.size())));
  if (threads <= 1) {
    for (std::size_t i = 0; i < t_grid.size(); ++i) eval(i);
    return out;
  }
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned w = 0; w < threads; ++w)
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < t_grid.size(); i += threads) eval(i);
      });
  }
  return out;
}

}  // namespace gravclock
