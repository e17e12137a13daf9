#pragma once

// Experiment configuration: INI-style sections of key = value pairs.

#include <string>
#include <vector>

namespace tgqsl::cli {

struct ExperimentConfig {
  std::string kind = "quench";

  int particles = 10;
  std::vector<int> particle_list;
  int q = 2;
  double lambda_i = 1.0;
  double lambda_f = 8.0;
  std::string statistics = "both";  ///< fermi | tg | both

  double half_width = 10.0;
  int grid_points = 256;

  double t_f = 2.0;
  std::vector<double> t_f_list;
  double dt = 1e-4;
  double record_dt = 0.01;

  int design_index = -1;  ///< -1: N - 1
  int samples = 4001;
  std::string ramp = "sta";  ///< sta | linear | constant | file
  std::string ramp_file;
  std::vector<std::string> ramps{"n0", "nmax", "linear"};

  bool speeds = true;
  int levels = 10;  ///< occupations tracked per snapshot in quench runs

  int seed = 0;  ///< reserved; every computation is deterministic
  bool svg = true;
  std::string out_dir = ".";

  bool wants_tg() const { return statistics != "fermi"; }
  bool wants_fermi() const { return statistics != "tg"; }
  int index_for(int n_particles) const { return design_index >= 0 ? design_index : n_particles - 1; }
  bool uses_ramp(const std::string& name) const;
  /// One-line echo of every setting, written as the first CSV line.
  std::string echo() const;
};

/// Defaults for a subcommand, optionally at full scale (N = 50, M = 512).
ExperimentConfig default_config(const std::string& kind, bool paper_scale);

/// Applies the file contents on top of `base`. Errors carry the line number.
ExperimentConfig parse_config(const std::string& text, ExperimentConfig base);
ExperimentConfig load_config(const std::string& path, ExperimentConfig base);

/// Throws a config error when a value is out of range.
void validate(const ExperimentConfig& cfg);

/// "a, b, c" or "start:stop:step" (inclusive).
std::vector<double> parse_real_list(const std::string& text);

}  // namespace tgqsl::cli
