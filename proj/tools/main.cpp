// Command-line front end: one subcommand per experiment.

#include <omp.h>

#include <CLI11.hpp>
#include <iostream>
#include <string>

#include "config.hpp"
#include "experiments.hpp"
#include "tgqsl/error.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

const char* const kCommands[][2] = {
    {"eigens", "stationary energies and widths in the initial trap"},
    {"quench", "sudden quench: speeds, occupations and QSL bounds"},
    {"sta-design", "scaling polynomial and shortcut ramp"},
    {"sta-run", "evolve under a single ramp and report fidelity and bounds"},
    {"tf-scan", "fidelity, trace distance and speed against ramp duration"},
    {"coherence-scan", "largest occupation against particle number"},
    {"infidelity-scan", "final infidelity against particle number"},
    {"qsl-report", "QSL bounds for a single ramp"},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Driven and quenched 1D hard-core gases in power-law traps"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".";
  bool paper_scale = false, no_svg = false;
  int threads = 0;
  app.add_option("--config", config_path, "INI file applied on top of the subcommand defaults");
  app.add_option("--out", out_dir, "output directory");
  app.add_flag("--paper-scale", paper_scale, "N = 50 on a 512-point grid");
  app.add_option("--threads", threads, "OpenMP threads (0 keeps the runtime default)")->check(CLI::NonNegativeNumber);
  app.add_flag("--no-svg", no_svg, "skip plots");
  for (const auto& c : kCommands) app.add_subcommand(c[0], c[1])->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  const std::string kind = app.get_subcommands().front()->get_name();
  if (threads > 0) omp_set_num_threads(threads);
  try {
    auto cfg = tgqsl::cli::default_config(kind, paper_scale);
    if (!config_path.empty()) cfg = tgqsl::cli::load_config(config_path, cfg);
    cfg.kind = kind;
    cfg.out_dir = out_dir;
    if (no_svg) cfg.svg = false;
    const auto out = tgqsl::cli::run_experiment(cfg);
    tgqsl::cli::write_outputs(out, cfg);
    for (const auto& [name, table] : out.tables) std::cout << out_dir << '/' << name << '\n';
  } catch (const tgqsl::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.kind() == tgqsl::ErrorKind::config ? kExitConfig : kExitRuntime;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return 0;
}
