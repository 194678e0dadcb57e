#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "gravclock/dephasing.hpp"
#include "gravclock/errors.hpp"
#include "gravclock/physics.hpp"
#include "oracles.hpp"

using namespace gravclock;

namespace {
const double kPhiG = per_layer_phase_rate(PhysicalConstants{}, ClockSpecies::ytterbium(),
                                          ClockSpecies::ytterbium().half_wavelength());
}

TEST_CASE("no laser drift gives no measured phase") {
  for (std::int64_t m : {1, 2, 3, 501, 20001}) {
    const auto s = bloch_sum({0.0, 3e-4, m, 123.0, Convention::Physical});
    CHECK(std::abs(s.s_y) <= 1e-12 * static_cast<double>(m));
    CHECK(std::abs(s.phi_eff) <= 1e-12);
    CHECK_FALSE(s.ratio.has_value());
  }
}

TEST_CASE("identical layers keep full length") {
  const auto s = bloch_sum({0.001, 0.0, 501, 1.0, Convention::Physical});
  CHECK(s.length == doctest::Approx(501.0).epsilon(1e-14));
  REQUIRE(s.ratio);
  CHECK(*s.ratio == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("n=500 dephasing point needs the scaled convention") {
  const DephasingInput scaled{1e-5, kPhiG, 501, 100.0, Convention::PaperFigure};
  const auto s = bloch_sum(scaled);
  REQUIRE(s.ratio);
  // Closed form: asin(sin(1e-3) D)/1e-3 with D the Dirichlet kernel.
  const double x = 1e-3;
  const double expected = std::asin(std::sin(x) * oracle::dirichlet_signed(501, 500 * kPhiG * 100.0)) / x;
  CHECK(*s.ratio == doctest::Approx(expected).epsilon(1e-9));
  CHECK(*s.ratio == doctest::Approx(0.6).epsilon(0.05));
  CHECK(s.convention == Convention::PaperFigure);

  auto physical = scaled;
  physical.convention = Convention::Physical;
  CHECK(std::abs(*bloch_sum(physical).ratio - 1.0) < 1e-4);
}

TEST_CASE("Dirichlet closed form") {
  CHECK(contrast_closed_form(0.0, 17, 5.0) == 1.0);
  CHECK(contrast_closed_form(std::numbers::pi, 2, 1.0) == doctest::Approx(0.0).epsilon(1e-15));
  // First null: m theta / 2 = pi.
  const double theta = 2.0 * std::numbers::pi / 501.0;
  CHECK(std::abs(contrast_closed_form(theta, 501, 1.0)) < 1e-9);
  CHECK_THROWS_AS(contrast_closed_form(1.0, 0, 1.0), ValidationError);
}

TEST_CASE("bloch length matches the Dirichlet kernel on random inputs") {
  std::mt19937_64 rng(20221017);
  std::uniform_real_distribution<double> th(0.0, std::numbers::pi), pl(-2.0, 2.0);
  std::uniform_int_distribution<std::int64_t> mm(1, 2000);
  for (int i = 0; i < 500; ++i) {
    const std::int64_t m = mm(rng);
    const double theta = th(rng);
    const double t = 10.0;
    const auto s = bloch_sum({pl(rng) / t, theta / t, m, t, Convention::Physical});
    const double closed = contrast_closed_form(theta / t, m, t) * static_cast<double>(m);
    REQUIRE(std::abs(s.length - closed) <= 1e-9 * static_cast<double>(m));
  }
}

TEST_CASE("length bounded by layer count") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int i = 0; i < 300; ++i) {
    const std::int64_t m = 1 + static_cast<std::int64_t>(i % 97);
    const auto s = bloch_sum({u(rng), u(rng), m, 7.0, Convention::Physical});
    CHECK(s.s_x * s.s_x + s.s_y * s.s_y <= static_cast<double>(m * m) * (1 + 1e-14));
    CHECK(std::abs(s.phi_eff) <= std::numbers::pi / 2);
  }
  // Full alignment at theta = 2 pi.
  const auto aligned = bloch_sum({0.1, 2.0 * std::numbers::pi, 9, 1.0, Convention::Physical});
  CHECK(aligned.length == doctest::Approx(9.0).epsilon(1e-12));
}

TEST_CASE("ratio is even in phi_g") {
  for (auto conv : {Convention::Physical, Convention::PaperFigure}) {
    for (double t : {1.0, 50.0, 150.0}) {
      const auto up = bloch_sum({1e-5, kPhiG, 301, t, conv});
      const auto down = bloch_sum({1e-5, -kPhiG, 301, t, conv});
      CHECK(*up.ratio == doctest::Approx(*down.ratio).epsilon(1e-12));
    }
  }
}

TEST_CASE("small-spread contrast loss follows the quadratic expansion") {
  for (std::int64_t m : {11, 101, 1001}) {
    const double theta = 0.05 / static_cast<double>(m);
    const auto s = bloch_sum({1e-6, theta, m, 1.0, Convention::Physical});
    const double quadratic = (static_cast<double>(m * m) - 1.0) * theta * theta / 24.0;
    CHECK((1.0 - *s.ratio) == doctest::Approx(quadratic).epsilon(0.1));
  }
}

TEST_CASE("small ensembles equal term-by-term summation exactly") {
  for (std::int64_t m = 1; m <= 7; ++m) {
    for (int p = 1; p <= 5; ++p) {
      const double phi_l = p / 8.0, phi_g = p / 16.0, t = 3.0 / p;
      const auto s = bloch_sum({phi_l, phi_g, m, t, Convention::Physical});
      const auto [sx, sy] = oracle::brute_bloch(phi_l, phi_g, m, t);
      CHECK(s.s_x == sx);
      CHECK(s.s_y == sy);
    }
  }
}

TEST_CASE("even layer counts use half-integer offsets") {
  // m = 2: phases +-theta/2 around the laser phase.
  const auto s = bloch_sum({0.0, 1.0, 2, 0.5, Convention::Physical});
  CHECK(s.s_x == doctest::Approx(2.0 * std::cos(0.25)));
  CHECK(s.s_y == 0.0);
}

TEST_CASE("large ensembles switch to compensated summation") {
  const std::int64_t m = 40001;
  const auto s = bloch_sum({1e-3, 1e-7, m, 10.0, Convention::Physical});
  const double closed = contrast_closed_form(1e-7, m, 10.0) * static_cast<double>(m);
  CHECK(s.length == doctest::Approx(closed).epsilon(1e-12));
}

TEST_CASE("invalid dephasing input") {
  CHECK_THROWS_AS(bloch_sum({NAN, 0, 3, 1, Convention::Physical}), ValidationError);
  CHECK_THROWS_AS(bloch_sum({0, 0, 0, 1, Convention::Physical}), ValidationError);
  CHECK_THROWS_AS(bloch_sum({0, 0, 3, -1, Convention::Physical}), ValidationError);
  CHECK(parse_convention("paper-figure") == Convention::PaperFigure);
  CHECK_THROWS_AS(parse_convention("paper"), ValidationError);
}

TEST_CASE("dephase curve") {
  const DephasingInput tmpl{1e-5, kPhiG, 101, 0.0, Convention::PaperFigure};
  CHECK(dephase_curve(tmpl, std::vector<double>{}).empty());

  std::vector<double> grid;
  for (int i = 1; i <= 200; ++i) grid.push_back(i);
  const auto curve = dephase_curve(tmpl, grid, 4);
  REQUIRE(curve.size() == grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    CHECK(curve[i].t == grid[i]);
    CHECK(std::abs(*curve[i].ratio - 1.0) < 2e-2);
  }
  // Parallel and serial evaluation agree bit for bit.
  const auto serial = dephase_curve(tmpl, grid, 1);
  for (std::size_t i = 0; i < grid.size(); ++i) CHECK(serial[i].ratio == curve[i].ratio);

  const DephasingInput n500{1e-5, kPhiG, 501, 0.0, Convention::PaperFigure};
  const auto row = dephase_curve(n500, std::vector<double>{100.0});
  CHECK(*row[0].ratio == *bloch_sum({1e-5, kPhiG, 501, 100.0, Convention::PaperFigure}).ratio);

  CHECK_THROWS_AS(dephase_curve(tmpl, std::vector<double>{2.0, 1.0}), ValidationError);
  CHECK_THROWS_AS(dephase_curve(tmpl, std::vector<double>{-1.0}), ValidationError);
}
