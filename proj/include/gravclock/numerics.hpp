#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

namespace gravclock::numerics {

// Neumaier's variant of Kahan summation. Order of add() calls is the order of
// summation; the result is deterministic for a fixed call sequence.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x))
      comp_ += (sum_ - t) + x;
    else
      comp_ += (x - t) + sum_;
    sum_ = t;
  }
  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct BisectionOptions {
  double rel_tol = 1e-6;
  int max_iter = 200;
};

// Bisection on a sign change of f over [lo, hi]. Requires f(lo) and f(hi) of
// opposite sign (or one of them zero); returns nullopt otherwise. Terminates
// once the bracket width falls below rel_tol * |midpoint|.
template <class F>
std::optional<double> bisect(F&& f, double lo, double hi, BisectionOptions opt = {}) {
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) return lo;
  if (f_hi == 0.0) return hi;
  if ((f_lo < 0.0) == (f_hi < 0.0)) return std::nullopt;

  for (int i = 0; i < opt.max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if (f_mid == 0.0) return mid;
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
    if (std::abs(hi - lo) <= opt.rel_tol * std::abs(0.5 * (lo + hi))) break;
  }
  return 0.5 * (lo + hi);
}

// Geometric grid with `count` points spanning [lo, hi] inclusive.
inline std::vector<double> geomspace(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi > lo) || count < 2)
    throw std::invalid_argument("geomspace: need 0 < lo < hi and count >= 2");
  std::vector<double> out(count);
  const double step = std::log(hi / lo) / static_cast<double>(count - 1);
  for (std::size_t i = 0; i < count; ++i)
    out[i] = lo * std::exp(step * static_cast<double>(i));
  out.back() = hi;
  return out;
}

// Ordinary least-squares slope of y against x.
inline double ols_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("ols_slope: need matching spans of length >= 2");
  const auto n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw std::invalid_argument("ols_slope: degenerate abscissa");
  return sxy / sxx;
}

}  // namespace gravclock::numerics
