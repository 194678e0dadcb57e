#include <doctest.h>

#include <random>
#include <string>

#include "gravclock/errors.hpp"
#include "gravclock/format.hpp"
#include "gravclock/scenario.hpp"

using namespace gravclock;

TEST_CASE("empty scenario gives defaults") {
  const auto s = parse_scenario("");
  CHECK(s == Scenario{});
  CHECK(s.resolved_species() == ClockSpecies::ytterbium());
  CHECK(s.resolved_geometry().total_atoms() == 100 * 100 * 101);
  CHECK(parse_scenario("# only a comment\n\n   \n") == Scenario{});
}

TEST_CASE("geometry spec") {
  CHECK(GeometrySpec::parse("cubic:497").n_site == 497);
  const auto slab = GeometrySpec::parse("slab:10000:100");
  CHECK(slab.family == GeometryFamily::Slab);
  CHECK(slab.atoms_per_layer == 10000);
  CHECK(slab.n_layer == 100);
  CHECK(GeometrySpec::parse(slab.to_string()) == slab);
  CHECK_THROWS_AS(GeometrySpec::parse("cubic:0"), ValidationError);
  CHECK_THROWS_AS(GeometrySpec::parse("cubic:x"), ValidationError);
  CHECK_THROWS_AS(GeometrySpec::parse("slab:5"), ValidationError);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_scenario("species = Yb\n\ngeometry = cubic:0\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }
  try {
    parse_scenario("species = Yb\nflux.capacitor = 1\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(std::string(e.what()).find("flux.capacitor") != std::string::npos);
  }
  try {
    parse_scenario("threshold.tau = 30\nthreshold.tau = 31\n");
    FAIL("expected an error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_scenario("no equals sign\n"), ParseError);
  CHECK_THROWS_AS(parse_scenario("threshold.tau = -1\n"), ValidationError);
  CHECK_THROWS_AS(parse_scenario("convention = sideways\n"), ValidationError);
}

TEST_CASE("cubic sweep preset grid") {
  const auto s = load_scenario(GRAVCLOCK_PRESET_DIR "/cubic_sweep.scn");
  CHECK(s.sweep_sizes == log_spaced_sizes(2, 1000, 40));
  CHECK(s.sweep_phi_l == std::vector<double>{1e-6, 1e-5, 1e-4, 1e-3, 1e-2});
  CHECK(s.convention == Convention::PaperFigure);
  for (const char* name : {"default.scn", "dephasing.scn", "slab_sweep.scn", "budget.scn"})
    CHECK_NOTHROW(load_scenario(std::string(GRAVCLOCK_PRESET_DIR "/") + name));
  CHECK_THROWS_AS(load_scenario("/nonexistent/x.scn"), ValidationError);
}

TEST_CASE("serialize then parse is the identity") {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 200; ++i) {
    Scenario s;
    s.constants.g = 9.0 + u(rng);
    if (coin(rng)) s.omega0 = 1e15 * (1.0 + u(rng));
    if (coin(rng)) s.layer_spacing = 1e-7 + 1e-6 * u(rng);
    s.geometry = coin(rng) ? GeometrySpec::parse("cubic:" + std::to_string(1 + i))
                           : GeometrySpec::parse("slab:" + std::to_string(10 + i) + ":" +
                                                 std::to_string(1 + i % 7));
    s.convention = coin(rng) ? Convention::Physical : Convention::PaperFigure;
    s.threshold_tau = 1.0 + 100.0 * u(rng);
    s.dephase_phi_l = 1e-6 * u(rng);
    s.dephase_n_sites = {1 + i, 2 + 2 * i};
    s.dephase_t_stop = 10.0 + 1000.0 * u(rng);
    s.dephase_t_count = 2 + i;
    s.sweep_family = coin(rng) ? GeometryFamily::Cubic : GeometryFamily::Slab;
    s.sweep_sizes = log_spaced_sizes(2, 50 + i, 5 + i % 11);
    s.sweep_phi_l = {1e-7 * (1 + u(rng)), 1e-3 * (1 + u(rng))};
    s.budget.b_bias = u(rng);
    s.budget.T2 = 293.0 + u(rng);
    s.budget.signal_scale = u(rng);
    if (coin(rng)) s.output_dir = "out_" + std::to_string(i);
    const auto text = serialize_scenario(s);
    const auto back = parse_scenario(text);
    REQUIRE(back == s);
    CHECK(serialize_scenario(back) == text);
  }
}

TEST_CASE("number formatting") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
  CHECK(format_short(2.1471962e-6) == "2.1472e-06");
  CHECK(fnv1a_hex("") == "cbf29ce484222325");
  CHECK(json_escape("a\"b\n") == "\"a\\\"b\\n\"");
  JsonWriter w;
  w.begin_object().key("x").value(1.5).key("n").value(NAN).key("l").begin_array().value(1).end_array().end_object();
  CHECK(w.str() == "{\n  \"x\": 1.5,\n  \"n\": null,\n  \"l\": [\n    1\n  ]\n}\n");
}
