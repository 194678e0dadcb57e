#include "gravclock/run.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "gravclock/errors.hpp"
#include "gravclock/format.hpp"
#include "gravclock/threshold.hpp"

#ifndef GRAVCLOCK_VERSION
#define GRAVCLOCK_VERSION "0.0.0"
#endif

namespace gravclock {

namespace {

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string opt_csv(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

RunOutput threshold_output(const Scenario& sc) {
  const ClockSpecies species = sc.resolved_species();
  const double spacing = sc.resolved_layer_spacing();

  JsonWriter w;
  w.begin_object();
  w.key("subcommand").value("threshold");
  w.key("version").value(tool_version());
  w.key("species").value(species.name);
  w.key("tau_s").value(sc.threshold_tau);
  w.key("convention").value(to_string(sc.convention));
  w.key("layer_spacing_m").value(spacing);
  w.key("phi_g_rad_per_s").value(per_layer_phase_rate(sc.constants, species, spacing));
  w.key("results").begin_array();

  std::string text = pad("partition", 11) + pad("convention", 14) + pad("n_real", 24) +
                     pad("n_site", 8) + pad("N", 14) + "per_layer_sql\n";
  for (Partition part : {Partition::PerLayer, Partition::Halves}) {
    ThresholdProblem p{species, sc.constants, sc.threshold_tau, part, sc.convention, spacing};
    const auto size = solve_decoherence_size(p);
    const auto n = std::max<std::int64_t>(1, size.n_rounded);
    const auto atoms = decoherence_atom_count(n);
    const double sql = per_layer_sql(species, sc.threshold_tau, n);
    const double qpn =
        qpn_stability(species, InterrogationParams::single_sequence(sc.threshold_tau), atoms);

    w.begin_object();
    w.key("partition").value(to_string(part));
    w.key("convention").value(to_string(size.convention));
    w.key("n_real").value(size.n_real);
    w.key("n_site").value(n);
    w.key("total_atoms").value(atoms);
    w.key("per_layer_sql").value(sql);
    w.key("ensemble_qpn").value(qpn);
    w.key("reconstruction").value(part == Partition::Halves);
    w.end_object();

    text += pad(std::string(to_string(part)), 11) + pad(std::string(to_string(size.convention)), 14) +
            pad(format_double(size.n_real), 24) + pad(std::to_string(n), 8) +
            pad(std::to_string(atoms), 14) + format_double(sql) + "\n";
  }
  w.end_array();
  w.end_object();
  return RunOutput{{{"threshold.json", w.str()}}, text, 0};
}

RunOutput dephase_output(const Scenario& sc, unsigned threads) {
  const ClockSpecies species = sc.resolved_species();
  const double phi_g = per_layer_phase_rate(sc.constants, species, sc.resolved_layer_spacing());
  const auto grid = sc.dephase_t_grid();

  std::string csv = dephase_csv_header();
  std::string text = pad("n_site", 8) + pad("t_last_s", 12) + "ratio_at_t_last\n";
  for (auto n : sc.dephase_n_sites) {
    const DephasingInput tmpl{sc.dephase_phi_l, phi_g, n + 1, 0.0, sc.convention};
    const auto curve = dephase_curve(tmpl, grid, threads);
    for (const auto& pt : curve) {
      csv += format_double(pt.t) + "," + std::to_string(n) + "," + format_double(sc.dephase_phi_l) +
             "," + std::string(to_string(sc.convention)) + "," + opt_csv(pt.ratio) + "," +
             format_double(pt.contrast) + "\n";
    }
    if (!curve.empty())
      text += pad(std::to_string(n), 8) + pad(format_short(curve.back().t), 12) +
              (curve.back().ratio ? format_short(*curve.back().ratio) : std::string("-")) + "\n";
  }
  return RunOutput{{{"dephase_curve.csv", csv}}, text, 0};
}

RunOutput sweep_output(const Scenario& sc, unsigned threads) {
  const auto spec = sc.sweep_spec();
  const auto rows =
      sweep(sc.resolved_species(), sc.constants, spec, sc.resolved_layer_spacing(), threads);

  std::size_t flagged = 0;
  for (const auto& r : rows) flagged += r.flagged ? 1 : 0;

  JsonWriter w;
  w.begin_object();
  w.key("geometry").value(to_string(spec.family));
  w.key("convention").value(to_string(spec.convention));
  w.key("curves").begin_array();
  std::string text = pad("phi_l", 12) + pad("argmin_size", 13) + pad("min_sigma_1s", 14) +
                     pad("slope_small", 13) + "slope_large\n";
  for (double phi_l : spec.phi_l) {
    const auto curve = curve_for(rows, phi_l);
    const auto k = curve_argmin(curve);
    auto slope = [&](Regime r) -> std::optional<double> {
      try {
        return scaling_exponent(curve, r);
      } catch (const ValidationError&) {
        return std::nullopt;
      }
    };
    const auto small = slope(Regime::Small);
    const auto large = slope(Regime::Large);
    w.begin_object();
    w.key("phi_l").value(phi_l);
    w.key("argmin_size").value(curve[k].size);
    w.key("min_sigma_at_1s").value(curve[k].sigma_at_1s);
    w.key("slope_small").value(small);
    w.key("slope_large").value(large);
    w.end_object();
    auto s = [](const std::optional<double>& v) { return v ? format_short(*v) : std::string("-"); };
    text += pad(format_short(phi_l), 12) + pad(std::to_string(curve[k].size), 13) +
            pad(format_short(curve[k].sigma_at_1s), 14) + pad(s(small), 13) + s(large) + "\n";
  }
  w.end_array();
  w.end_object();
  if (flagged) text += std::to_string(flagged) + " point(s) flagged non-bracketable\n";
  return RunOutput{{{"stability_sweep.csv", stability_csv(rows)}, {"scaling.json", w.str()}},
                   text, flagged};
}

RunOutput budget_output(const Scenario& sc) {
  const Budget b = assemble_budget(sc.constants, sc.resolved_species(), sc.resolved_geometry(),
                                   sc.budget);
  const std::string table = budget_table(b);
  return RunOutput{{{"budget.json", budget_json(b, sc)}, {"budget.txt", table}}, table, 0};
}

}  // namespace

std::string_view tool_version() noexcept { return GRAVCLOCK_VERSION; }

std::string_view to_string(Subcommand c) noexcept {
  switch (c) {
    case Subcommand::Threshold: return "threshold";
    case Subcommand::DephaseCurve: return "dephase-curve";
    case Subcommand::StabilitySweep: return "stability-sweep";
    case Subcommand::Budget: return "budget";
  }
  return "";
}

Subcommand parse_subcommand(std::string_view text) {
  for (auto c : {Subcommand::Threshold, Subcommand::DephaseCurve, Subcommand::StabilitySweep,
                 Subcommand::Budget})
    if (text == to_string(c)) return c;
  throw ValidationError("unknown subcommand '" + std::string(text) + "'");
}

std::string dephase_csv_header() { return "t_s,n_site,phi_l,convention,ratio,contrast\n"; }

std::string stability_csv(const std::vector<StabilityPoint>& rows) {
  std::string csv = "geometry,size,phi_l,convention,tau_max_s,sigma_at_tau,sigma_at_1s,flag\n";
  for (const auto& r : rows) {
    csv += std::string(to_string(r.family)) + "," + std::to_string(r.size) + "," +
           format_double(r.phi_l) + "," + std::string(to_string(r.convention)) + "," +
           format_double(r.tau_max) + "," + format_double(r.sigma_at_tau) + "," +
           format_double(r.sigma_at_1s) + "," + (r.flagged ? "non-bracketable" : "ok") + "\n";
  }
  return csv;
}

std::string budget_json(const Budget& b, const Scenario& sc) {
  JsonWriter w;
  w.begin_object();
  w.key("subcommand").value("budget");
  w.key("version").value(tool_version());
  w.key("convention").value(to_string(sc.convention));
  w.key("geometry").value(sc.geometry.to_string());
  w.key("signal").begin_object();
  w.key("delta_z_m").value(b.signal.delta_z);
  w.key("delta_nu_Hz").value(b.signal.delta_nu);
  w.key("fractional").value(b.signal.fractional());
  w.end_object();
  w.key("allowed_b_gradient_G_per_m").value(b.allowed_b_gradient);
  w.key("residual_b_gradient_G_per_m").value(b.residual_b_gradient);
  w.key("calibration_shift_at_allowed_Hz").value(b.calibration_shift_at_allowed);
  w.key("allowed_e_gradient_V_per_m2").value(b.allowed_e_gradient);
  w.key("lattice").begin_object();
  w.key("z_numeric_m").value(b.lattice.z_numeric);
  w.key("z_closed_form_m").value(b.lattice.z_closed_form);
  w.key("z_relative_mismatch").value(b.lattice.z_relative_mismatch);
  w.key("max_intensity_change").value(b.lattice.max_change);
  w.key("reference_intensity_change").value(b.lattice.reference_change);
  w.end_object();
  w.key("bbr").begin_object();
  w.key("ratio_minus_one").value(b.bbr.ratio_minus_one);
  w.key("fractional_shift").value(b.bbr.fractional_shift);
  w.key("delta_t_limit_K").value(b.bbr_delta_t_limit);
  w.end_object();
  w.key("entries").begin_array();
  for (const auto& e : b.entries) {
    w.begin_object();
    w.key("name").value(e.name);
    w.key("shift_Hz").value(e.differential_shift);
    w.key("fractional").value(e.fractional);
    w.key("reference_Hz").value(e.reference_signal);
    w.key("passes").value(e.passes);
    w.key("note").value(e.note);
    w.end_object();
  }
  w.end_array();
  w.key("all_pass").value(b.all_pass());
  w.end_object();
  return w.str();
}

std::string budget_table(const Budget& b) {
  std::string out = pad("effect", 22) + pad("shift_Hz", 26) + pad("fractional", 26) +
                    pad("passes", 8) + "note\n";
  for (const auto& e : b.entries)
    out += pad(e.name, 22) + pad(format_double(e.differential_shift), 26) +
           pad(format_double(e.fractional), 26) + pad(e.passes ? "yes" : "no", 8) + e.note + "\n";
  out += "signal delta_nu = " + format_double(b.signal.delta_nu) + " Hz over " +
         format_double(b.signal.delta_z) + " m\n";
  if (b.bbr_delta_t_limit)
    out += "wall temperature difference limit = " + format_double(*b.bbr_delta_t_limit) + " K\n";
  return out;
}

RunOutput compute(Subcommand cmd, const Scenario& scenario, unsigned threads) {
  scenario.validate();
  switch (cmd) {
    case Subcommand::Threshold: return threshold_output(scenario);
    case Subcommand::DephaseCurve: return dephase_output(scenario, threads);
    case Subcommand::StabilitySweep: return sweep_output(scenario, threads);
    case Subcommand::Budget: return budget_output(scenario);
  }
  throw ValidationError("unhandled subcommand");
}

RunRecord run(Subcommand cmd, const Scenario& scenario, const std::filesystem::path& out_dir,
              unsigned threads) {
  RunOutput out = compute(cmd, scenario, threads);

  RunRecord rec;
  rec.scenario_digest = fnv1a_hex(serialize_scenario(scenario));
  rec.version = std::string(tool_version());
  rec.flagged = out.flagged;
  rec.summary = std::move(out.summary);

  std::filesystem::create_directories(out_dir);
  auto write = [&](const std::string& name, const std::string& contents) {
    std::ofstream f(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!f) throw std::runtime_error("cannot write " + (out_dir / name).string());
    f.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  };
  for (const auto& f : out.files) {
    write(f.name, f.contents);
    rec.files.push_back({f.name, f.contents.size(), fnv1a_hex(f.contents)});
  }

  JsonWriter w;
  w.begin_object();
  w.key("subcommand").value(to_string(cmd));
  w.key("version").value(rec.version);
  w.key("scenario_digest").value(rec.scenario_digest);
  w.key("flagged").value(static_cast<std::int64_t>(rec.flagged));
  w.key("files").begin_array();
  for (const auto& e : rec.files) {
    w.begin_object();
    w.key("name").value(e.name);
    w.key("bytes").value(static_cast<std::int64_t>(e.bytes));
    w.key("digest").value(e.digest);
    w.end_object();
  }
  w.end_array();
  w.end_object();
  write(std::string(to_string(cmd)) + ".manifest.json", w.str());
  return rec;
}

}  // namespace gravclock
