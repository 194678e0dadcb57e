#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "gravclock/dephasing.hpp"
#include "gravclock/errors.hpp"
#include "gravclock/physics.hpp"
#include "gravclock/run.hpp"
#include "gravclock/scenario.hpp"
#include "gravclock/sweep.hpp"
#include "gravclock/systematics.hpp"
#include "gravclock/threshold.hpp"

namespace py = pybind11;
using namespace gravclock;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Gravitational dephasing in optical lattice clocks";
  m.attr("__version__") = std::string(tool_version());

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);

  py::enum_<Convention>(m, "Convention")
      .value("Physical", Convention::Physical)
      .value("PaperFigure", Convention::PaperFigure);
  py::enum_<Partition>(m, "Partition")
      .value("PerLayer", Partition::PerLayer)
      .value("Halves", Partition::Halves);
  py::enum_<GeometryFamily>(m, "GeometryFamily")
      .value("Cubic", GeometryFamily::Cubic)
      .value("Slab", GeometryFamily::Slab);
  py::enum_<Regime>(m, "Regime").value("Small", Regime::Small).value("Large", Regime::Large);

  py::class_<PhysicalConstants>(m, "PhysicalConstants")
      .def(py::init<>())
      .def_readwrite("g", &PhysicalConstants::g)
      .def_readwrite("c", &PhysicalConstants::c);

  py::class_<ClockSpecies>(m, "ClockSpecies")
      .def_static("ytterbium", &ClockSpecies::ytterbium)
      .def_readonly("name", &ClockSpecies::name)
      .def_readonly("omega0", &ClockSpecies::omega0)
      .def_readonly("magic_wavelength", &ClockSpecies::magic_wavelength)
      .def_property_readonly("half_wavelength", &ClockSpecies::half_wavelength);

  py::class_<LatticeGeometry>(m, "LatticeGeometry")
      .def_static("cubic", &LatticeGeometry::cubic, py::arg("n_site"), py::arg("layer_spacing"))
      .def_static("slab", &LatticeGeometry::slab, py::arg("atoms_per_layer"), py::arg("n_layer"),
                  py::arg("layer_spacing"))
      .def_property_readonly("layer_count", &LatticeGeometry::layer_count)
      .def_property_readonly("atoms_per_layer", &LatticeGeometry::atoms_per_layer)
      .def_property_readonly("total_atoms", &LatticeGeometry::total_atoms)
      .def_property_readonly("vertical_extent", &LatticeGeometry::vertical_extent);

  m.def("relative_redshift", &relative_redshift, py::arg("consts"), py::arg("delta_h"));
  m.def("per_layer_phase_rate", &per_layer_phase_rate, py::arg("consts"), py::arg("species"),
        py::arg("layer_spacing"));
  m.def("per_layer_sql", &per_layer_sql, py::arg("species"), py::arg("tau"), py::arg("n_site"));
  m.def(
      "qpn_stability",
      [](const ClockSpecies& s, double tau, std::int64_t n, double xi) {
        return qpn_stability(s, InterrogationParams::single_sequence(tau, xi), n);
      },
      py::arg("species"), py::arg("tau"), py::arg("n_atoms"), py::arg("xi_w_sq") = 1.0);

  py::class_<BlochSummary>(m, "BlochSummary")
      .def_readonly("s_x", &BlochSummary::s_x)
      .def_readonly("s_y", &BlochSummary::s_y)
      .def_readonly("length", &BlochSummary::length)
      .def_readonly("phi_eff", &BlochSummary::phi_eff)
      .def_readonly("ratio", &BlochSummary::ratio);
  m.def(
      "bloch_sum",
      [](double phi_l, double phi_g, std::int64_t layer_count, double t, Convention c) {
        return bloch_sum({phi_l, phi_g, layer_count, t, c});
      },
      py::arg("phi_l"), py::arg("phi_g"), py::arg("layer_count"), py::arg("t"),
      py::arg("convention") = Convention::Physical);
  m.def("contrast_closed_form", &contrast_closed_form, py::arg("phi_g_eff"),
        py::arg("layer_count"), py::arg("t"));

  py::class_<DecoherenceSize>(m, "DecoherenceSize")
      .def_readonly("n_real", &DecoherenceSize::n_real)
      .def_readonly("n_rounded", &DecoherenceSize::n_rounded);
  m.def(
      "solve_decoherence_size",
      [](double tau, Partition p, Convention c) {
        ThresholdProblem prob;
        prob.tau = tau;
        prob.partition = p;
        prob.convention = c;
        return solve_decoherence_size(prob);
      },
      py::arg("tau") = 30.0, py::arg("partition") = Partition::PerLayer,
      py::arg("convention") = Convention::Physical);
  m.def("decoherence_atom_count", &decoherence_atom_count, py::arg("n_site"));

  py::class_<StabilityPoint>(m, "StabilityPoint")
      .def_readonly("size", &StabilityPoint::size)
      .def_readonly("phi_l", &StabilityPoint::phi_l)
      .def_readonly("tau_max", &StabilityPoint::tau_max)
      .def_readonly("sigma_at_tau", &StabilityPoint::sigma_at_tau)
      .def_readonly("sigma_at_1s", &StabilityPoint::sigma_at_1s)
      .def_readonly("flagged", &StabilityPoint::flagged);
  m.def(
      "best_stability_at_1s",
      [](const LatticeGeometry& g, double phi_l, Convention c) {
        return best_stability_at_1s(ClockSpecies::ytterbium(), PhysicalConstants{}, g, phi_l, c);
      },
      py::arg("geometry"), py::arg("phi_l"), py::arg("convention") = Convention::Physical);
  m.def("log_spaced_sizes", &log_spaced_sizes, py::arg("lo"), py::arg("hi"), py::arg("count"));
  m.def(
      "scaling_exponent",
      [](const std::vector<StabilityPoint>& curve, Regime r) { return scaling_exponent(curve, r); },
      py::arg("curve"), py::arg("regime"));

  py::class_<GravitationalSignal>(m, "GravitationalSignal")
      .def_readonly("delta_z", &GravitationalSignal::delta_z)
      .def_readonly("delta_nu", &GravitationalSignal::delta_nu)
      .def_readonly("nu", &GravitationalSignal::nu);
  m.def(
      "gravitational_signal",
      [](std::int64_t n) {
        return gravitational_signal(PhysicalConstants{}, ClockSpecies::ytterbium(), n);
      },
      py::arg("n_site"));

  m.def(
      "run_scenario",
      [](const std::string& subcommand, const std::string& scenario_text, unsigned threads) {
        const auto out = compute(parse_subcommand(subcommand), parse_scenario(scenario_text), threads);
        py::dict files;
        for (const auto& f : out.files) files[py::str(f.name)] = f.contents;
        return py::make_tuple(files, out.summary, out.flagged);
      },
      py::arg("subcommand"), py::arg("scenario_text"), py::arg("threads") = 1,
      "Run a subcommand on scenario text; returns (files, summary, flagged).");
}
