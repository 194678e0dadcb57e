// gravclock: gravitational dephasing of lattice-clock ensembles.
//
//   gravclock threshold|dephase-curve|stability-sweep|budget
//       --scenario FILE --out DIR [--convention physical|paper-figure] [--allow-flags]
//
// Exit codes: 0 success, 2 invalid input, 3 solver points flagged
// non-bracketable (suppressed by --allow-flags). GRAVCLOCK_THREADS sets the
// worker count for sweeps.

#include <CLI11.hpp>
#include <algorithm>
#include <utility>
#include <cstdlib>
#include <iostream>
#include <string>
#include <thread>

#include "gravclock/errors.hpp"
#include "gravclock/run.hpp"

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitFlagged = 3;

unsigned thread_count() {
  if (const char* env = std::getenv("GRAVCLOCK_THREADS")) {
    try {
      const int n = std::stoi(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
    std::cerr << "gravclock: ignoring invalid GRAVCLOCK_THREADS='" << env << "'\n";
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gravitational dephasing of optical lattice clock ensembles"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(gravclock::tool_version()));

  std::string scenario_path;
  std::string out_dir;
  std::string convention;
  bool allow_flags = false;

  const std::pair<gravclock::Subcommand, const char*> commands[] = {
      {gravclock::Subcommand::Threshold, "Ensemble size where gravity matches the SQL"},
      {gravclock::Subcommand::DephaseCurve, "Measured/expected phase ratio vs time"},
      {gravclock::Subcommand::StabilitySweep, "Best 1 s stability vs ensemble size"},
      {gravclock::Subcommand::Budget, "Differential systematics vs the redshift signal"},
  };
  for (const auto& [cmd, help] : commands) {
    auto* sub = app.add_subcommand(std::string(gravclock::to_string(cmd)), help);
    sub->add_option("--scenario", scenario_path, "Scenario file (key = value)")->required();
    sub->add_option("--out", out_dir, "Output directory (default: output.dir or .)");
    sub->add_option("--convention", convention, "Override: physical | paper-figure")
        ->check(CLI::IsMember({"physical", "paper-figure"}));
    sub->add_flag("--allow-flags", allow_flags, "Exit 0 even if solver points are flagged");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;
  }

  const auto* chosen = app.get_subcommands().front();
  try {
    const auto cmd = gravclock::parse_subcommand(chosen->get_name());
    auto scenario = gravclock::load_scenario(scenario_path);
    if (!convention.empty()) scenario.convention = gravclock::parse_convention(convention);
    if (out_dir.empty()) out_dir = scenario.output_dir.empty() ? "." : scenario.output_dir;

    const auto record = gravclock::run(cmd, scenario, out_dir, thread_count());
    std::cout << record.summary;
    for (const auto& f : record.files) std::cout << "wrote " << f.name << "\n";
    if (record.flagged > 0 && !allow_flags) {
      std::cerr << "gravclock: " << record.flagged
                << " point(s) non-bracketable; pass --allow-flags to accept\n";
      return kExitFlagged;
    }
    return 0;
  } catch (const gravclock::ValidationError& e) {
    std::cerr << "gravclock: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "gravclock: " << e.what() << "\n";
    return 1;
  }
}
