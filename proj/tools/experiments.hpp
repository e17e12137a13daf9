#pragma once

// Experiment runners behind the command-line subcommands. Each returns its
// tables and plots in memory; write_outputs puts them on disk.

#include <string>
#include <utility>
#include <vector>

#include "config.hpp"
#include "output.hpp"
#include "tgqsl/metrics.hpp"

namespace tgqsl::cli {

/// Codes used in the ramp column of qsl.csv.
enum class RunKind { quench = 0, sta_n0 = 1, sta_nmax = 2, linear = 3, file = 4, sta = 5 };

struct QslRecord {
  RunKind run = RunKind::quench;
  double t_f = 0.0;
  QslReport report;

  /// Both bounds finite and at most the run duration (small relative slack).
  bool bounds_hold() const;
};

struct ExperimentOutput {
  std::vector<std::pair<std::string, CsvTable>> tables;
  std::vector<std::pair<std::string, std::string>> plots;  ///< file name, SVG text
  std::vector<std::pair<std::string, std::string>> files;  ///< other text outputs
  std::vector<QslRecord> qsl;
  std::string config_echo;

  const CsvTable& table(const std::string& name) const;
  std::vector<double> column(const std::string& table_name, const std::string& column) const;
};

ExperimentOutput run_eigens(const ExperimentConfig& cfg);
ExperimentOutput run_quench(const ExperimentConfig& cfg);
ExperimentOutput run_sta_design(const ExperimentConfig& cfg);
ExperimentOutput run_sta_run(const ExperimentConfig& cfg);
ExperimentOutput run_tf_scan(const ExperimentConfig& cfg);
ExperimentOutput run_coherence_scan(const ExperimentConfig& cfg);
ExperimentOutput run_infidelity_scan(const ExperimentConfig& cfg);
ExperimentOutput run_qsl_report(const ExperimentConfig& cfg);

/// Dispatch on cfg.kind.
ExperimentOutput run_experiment(const ExperimentConfig& cfg);

/// Writes every table, plus plots when cfg.svg, into cfg.out_dir.
void write_outputs(const ExperimentOutput& out, const ExperimentConfig& cfg);

/// Slope of a least-squares line through (log x, log y).
double log_log_slope(const std::vector<double>& x, const std::vector<double>& y);

/// Interior local extrema (strict sign change of the first difference).
std::vector<std::size_t> local_extrema(const std::vector<double>& v);
std::vector<std::size_t> local_minima(const std::vector<double>& v);

}  // namespace tgqsl::cli
