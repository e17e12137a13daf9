#include "experiments.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "tgqsl/error.hpp"
#include "tgqsl/sta.hpp"

namespace tgqsl::cli {

namespace {

constexpr double kNan = std::numeric_limits<double>::quiet_NaN();

PotentialSpec trap(const ExperimentConfig& cfg, double lambda) { return {cfg.q, lambda, 0.0}; }

Grid grid_of(const ExperimentConfig& cfg) { return build_grid(cfg.half_width, cfg.grid_points); }

std::vector<Statistics> statistics_of(const ExperimentConfig& cfg) {
  std::vector<Statistics> s;
  if (cfg.wants_tg()) s.push_back(Statistics::tg);
  if (cfg.wants_fermi()) s.push_back(Statistics::fermi);
  return s;
}

Trajectory run_ramp(const OrbitalSet& initial, const RampSchedule& ramp, const ExperimentConfig& cfg) {
  const double dt = std::min(cfg.dt, max_time_step(ramp.max_abs_strength()));
  return evolve(initial, ramp, cfg.q, dt, record_stride(dt, cfg.record_dt));
}

RampSchedule sta_schedule(const ExperimentConfig& cfg, int index, double t_f) {
  return design_ramp(index, cfg.q, cfg.lambda_i, cfg.lambda_f, t_f, cfg.samples).schedule();
}

/// Speed series and QSL report for each requested statistic.
void add_qsl(std::vector<QslRecord>& out, RunKind kind, const OrbitalSet& initial, const Trajectory& traj,
             const ExperimentConfig& cfg, const std::vector<Statistics>& stats, std::vector<SpeedSeries>* keep = nullptr) {
  for (Statistics s : stats) {
    SpeedSeries speeds = average_speed(traj, s);
    QslRecord rec;
    rec.run = kind;
    rec.t_f = traj.ramp.duration();
    rec.report = qsl_report(initial, traj.back(), trap(cfg, cfg.lambda_i), traj, speeds);
    out.push_back(rec);
    if (keep) keep->push_back(std::move(speeds));
  }
}

CsvTable qsl_table(const std::vector<QslRecord>& records) {
  CsvTable t({"t_f", "ramp", "statistics", "fidelity", "bures_angle", "delta_h", "mean_energy", "mt_bound", "ml_bound",
              "unified_bound", "trace_distance", "average_speed", "geometric_bound", "driven", "bounds_hold"});
  for (const auto& r : records) {
    const QslReport& q = r.report;
    t.add_row({r.t_f, static_cast<double>(r.run), q.statistics == Statistics::tg ? 1.0 : 0.0, q.fidelity,
               q.bures_angle, q.delta_h, q.driven ? kNan : q.mean_energy, q.mt_bound, q.ml_bound.value_or(kNan),
               q.unified_bound, q.trace_distance, q.average_speed, q.geometric_bound, q.driven ? 1.0 : 0.0,
               r.bounds_hold() ? 1.0 : 0.0});
  }
  return t;
}

}  // namespace

// ---------------------------------------------------------------- helpers

bool QslRecord::bounds_hold() const {
  const double limit = t_f * (1.0 + 1e-9);
  return std::isfinite(report.unified_bound) && std::isfinite(report.geometric_bound) &&
         report.unified_bound <= limit && report.geometric_bound <= limit;
}

const CsvTable& ExperimentOutput::table(const std::string& name) const {
  for (const auto& [n, t] : tables)
    if (n == name) return t;
  fail(ErrorKind::invalid_argument, "no table " + name);
}

std::vector<double> ExperimentOutput::column(const std::string& table_name, const std::string& column) const {
  const CsvTable& t = table(table_name);
  for (std::size_t k = 0; k < t.columns().size(); ++k)
    if (t.columns()[k] == column) return t.column(k);
  fail(ErrorKind::invalid_argument, "no column " + column + " in " + table_name);
}

double log_log_slope(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::invalid_argument, "slope needs two or more points");
  double mx = 0, my = 0;
  const double n = static_cast<double>(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) {
    mx += std::log(x[k]) / n;
    my += std::log(y[k]) / n;
  }
  double sxy = 0, sxx = 0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    sxy += (std::log(x[k]) - mx) * (std::log(y[k]) - my);
    sxx += (std::log(x[k]) - mx) * (std::log(x[k]) - mx);
  }
  return sxy / sxx;
}

std::vector<std::size_t> local_extrema(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if ((v[k] - v[k - 1]) * (v[k + 1] - v[k]) < 0.0) out.push_back(k);
  return out;
}

std::vector<std::size_t> local_minima(const std::vector<double>& v) {
  std::vector<std::size_t> out;
  for (std::size_t k = 1; k + 1 < v.size(); ++k)
    if (v[k] < v[k - 1] && v[k] < v[k + 1]) out.push_back(k);
  return out;
}

// ---------------------------------------------------------------- eigens

ExperimentOutput run_eigens(const ExperimentConfig& cfg) {
  const Grid grid = grid_of(cfg);
  const OrbitalSet orbs = stationary_states(grid, trap(cfg, cfg.lambda_i), cfg.particles);
  const VectorXd widths = rms_widths(orbs);
  CsvTable t({"n", "energy", "ansatz_energy", "rms_width", "sigma_harmonic", "sigma_quartic"});
  for (int n = 0; n < orbs.count(); ++n) {
    const AnsatzWidth w = ansatz_width(n, cfg.lambda_i);
    t.add_row({static_cast<double>(n), orbs.energies()[n], ansatz_energy(n, cfg.lambda_i, cfg.q), widths[n],
               w.harmonic, cfg.q == 2 ? w.quartic : kNan});
  }
  ExperimentOutput out;
  out.config_echo = cfg.echo();
  out.plots.emplace_back("eigens.svg", render_svg({"Stationary energies", "n", "E_n"},
                                                  {{"exact", t.column(0), t.column(1), true},
                                                   {"ansatz", t.column(0), t.column(2), false}}));
  out.tables.emplace_back("eigens.csv", std::move(t));
  return out;
}

// ---------------------------------------------------------------- quench

ExperimentOutput run_quench(const ExperimentConfig& cfg) {
  const Grid grid = grid_of(cfg);
  const OrbitalSet initial = stationary_states(grid, trap(cfg, cfg.lambda_i), cfg.particles);
  const Trajectory traj = run_ramp(initial, RampSchedule::constant(cfg.lambda_i, cfg.lambda_f, cfg.t_f), cfg);
  const std::size_t steps = traj.size();
  const int levels = std::min(cfg.levels, grid.size());

  ExperimentOutput out;
  out.config_echo = cfg.echo();
  std::vector<double> v_tg(steps, kNan), v_fermi(steps, kNan);
  std::vector<std::vector<double>> theta(steps, std::vector<double>(levels, kNan));
  VectorXd tg_first, tg_last, fermi_first, fermi_last;

  for (Statistics s : statistics_of(cfg)) {
    const bool tg = s == Statistics::tg;
    auto visit = [&](std::size_t k, const Rspdm& rho) {
      if (!tg && k != 0 && k + 1 != steps) return;
      const VectorXd occ = occupation_numbers(rho);
      if (tg)
        for (int l = 0; l < levels; ++l) theta[k][l] = occ[l];
      if (k == 0) (tg ? tg_first : fermi_first) = occ;
      if (k + 1 == steps) (tg ? tg_last : fermi_last) = occ;
    };
    const SpeedSeries speeds = average_speed(traj, s, visit);
    (tg ? v_tg : v_fermi) = speeds.speed;
    QslRecord rec;
    rec.run = RunKind::quench;
    rec.t_f = cfg.t_f;
    rec.report = qsl_report(initial, traj.back(), trap(cfg, cfg.lambda_i), traj, speeds);
    out.qsl.push_back(rec);
  }

  CsvTable speed({"t", "v_tg", "v_fermi"});
  std::vector<std::string> cols{"t"};
  for (int l = 0; l < levels; ++l) cols.push_back("theta_" + std::to_string(l));
  CsvTable theta_t(cols);
  for (std::size_t k = 0; k < steps; ++k) {
    speed.add_row({traj.times[k], v_tg[k], v_fermi[k]});
    std::vector<double> row{traj.times[k]};
    row.insert(row.end(), theta[k].begin(), theta[k].end());
    theta_t.add_row(std::move(row));
  }
  CsvTable spectrum({"n", "theta_tg_initial", "theta_tg_final", "theta_fermi_initial", "theta_fermi_final"});
  const int shown = std::min(grid.size(), 4 * cfg.particles);
  auto at = [](const VectorXd& v, int n) { return n < v.size() ? v[n] : kNan; };
  for (int n = 0; n < shown; ++n)
    spectrum.add_row({static_cast<double>(n), at(tg_first, n), at(tg_last, n), at(fermi_first, n), at(fermi_last, n)});

  out.plots.emplace_back("quench_speed.svg", render_svg({"Speed after the quench", "t", "v(t)"},
                                                        {{"TG", speed.column(0), speed.column(1)},
                                                         {"Fermi", speed.column(0), speed.column(2)}}));
  std::vector<Series> th;
  for (int l = 0; l < levels; ++l) th.push_back({"theta_" + std::to_string(l), theta_t.column(0), theta_t.column(l + 1)});
  out.plots.emplace_back("quench_theta.svg", render_svg({"TG occupations", "t", "theta_n(t)"}, th));
  out.plots.emplace_back("quench_spectrum.svg",
                         render_svg({"Occupation spectrum", "n", "theta_n", false, true},
                                    {{"TG t=0", spectrum.column(0), spectrum.column(1), true},
                                     {"TG t=t_f", spectrum.column(0), spectrum.column(2), true},
                                     {"Fermi", spectrum.column(0), spectrum.column(3), true}}));
  out.tables.emplace_back("quench_speed.csv", std::move(speed));
  out.tables.emplace_back("quench_theta.csv", std::move(theta_t));
  out.tables.emplace_back("quench_spectrum.csv", std::move(spectrum));
  out.tables.emplace_back("qsl.csv", qsl_table(out.qsl));
  return out;
}

// ---------------------------------------------------------------- STA design and single runs

ExperimentOutput run_sta_design(const ExperimentConfig& cfg) {
  const int index = cfg.index_for(cfg.particles);
  const ScalingPolynomial poly = design_scaling(index, cfg.q, cfg.lambda_i, cfg.lambda_f, cfg.t_f);
  const StaRamp ramp = ramp_from_scaling(poly, cfg.samples);
  CsvTable t({"t", "a", "a_ddot", "lambda"});
  for (std::size_t k = 0; k < ramp.times.size(); ++k) {
    const double s = ramp.times[k];
    t.add_row({s, poly.value(s), poly.acceleration(s), ramp.lambda[k]});
  }
  CsvTable summary({"design_index", "q", "coefficient", "a_initial", "a_final", "residual", "nonpositive"});
  summary.add_row({static_cast<double>(index), static_cast<double>(cfg.q), general_coefficients(index, cfg.q).d,
                   poly.value(0.0), poly.value(cfg.t_f), ermakov_residual(poly, ramp), ramp.has_nonpositive ? 1.0 : 0.0});
  ExperimentOutput out;
  out.config_echo = cfg.echo();
  std::ostringstream ramp_csv;
  write_ramp_csv(ramp_csv, ramp, out.config_echo);
  out.files.emplace_back("sta_ramp.csv", ramp_csv.str());
  out.plots.emplace_back("sta_ramp.svg", render_svg({"Shortcut ramp", "t", "lambda(t)"}, {{"lambda", t.column(0), t.column(3)}}));
  out.tables.emplace_back("sta_scaling.csv", std::move(t));
  out.tables.emplace_back("sta_design.csv", std::move(summary));
  return out;
}

namespace {

std::pair<RampSchedule, RunKind> configured_ramp(const ExperimentConfig& cfg) {
  if (cfg.ramp == "constant") return {RampSchedule::constant(cfg.lambda_i, cfg.lambda_f, cfg.t_f), RunKind::quench};
  if (cfg.ramp == "linear") return {RampSchedule::linear(cfg.lambda_i, cfg.lambda_f, cfg.t_f), RunKind::linear};
  if (cfg.ramp == "file") {
    std::ifstream in(cfg.ramp_file);
    require(static_cast<bool>(in), ErrorKind::config, "cannot open ramp file " + cfg.ramp_file);
    const StaRamp r = read_ramp_csv(in);
    return {r.schedule(), RunKind::file};
  }
  return {sta_schedule(cfg, cfg.index_for(cfg.particles), cfg.t_f), RunKind::sta};
}

}  // namespace

ExperimentOutput run_sta_run(const ExperimentConfig& cfg) {
  const Grid grid = grid_of(cfg);
  const OrbitalSet initial = stationary_states(grid, trap(cfg, cfg.lambda_i), cfg.particles);
  const auto [ramp, kind] = configured_ramp(cfg);
  const OrbitalSet target = stationary_states(grid, trap(cfg, ramp.lambda_final()), cfg.particles);
  const Trajectory traj = run_ramp(initial, ramp, cfg);
  CsvTable t({"t", "lambda", "fidelity_target", "fidelity_initial"});
  for (std::size_t k = 0; k < traj.size(); ++k)
    t.add_row({traj.times[k], ramp(traj.times[k]), many_body_fidelity(traj.snapshots[k], target),
               many_body_fidelity(traj.snapshots[k], initial)});
  ExperimentOutput out;
  out.config_echo = cfg.echo();
  if (cfg.speeds) add_qsl(out.qsl, kind, initial, traj, cfg, statistics_of(cfg));
  out.plots.emplace_back("sta_run.svg", render_svg({"Fidelity during the ramp", "t", "F"},
                                                   {{"target", t.column(0), t.column(2)},
                                                    {"initial", t.column(0), t.column(3)}}));
  out.tables.emplace_back("sta_run.csv", std::move(t));
  out.tables.emplace_back("qsl.csv", qsl_table(out.qsl));
  return out;
}

ExperimentOutput run_qsl_report(const ExperimentConfig& cfg) {
  const Grid grid = grid_of(cfg);
  const OrbitalSet initial = stationary_states(grid, trap(cfg, cfg.lambda_i), cfg.particles);
  const auto [ramp, kind] = configured_ramp(cfg);
  const Trajectory traj = run_ramp(initial, ramp, cfg);
  ExperimentOutput out;
  out.config_echo = cfg.echo();
  add_qsl(out.qsl, kind, initial, traj, cfg, statistics_of(cfg));
  out.tables.emplace_back("qsl.csv", qsl_table(out.qsl));
  return out;
}

// ---------------------------------------------------------------- t_f scan

ExperimentOutput run_tf_scan(const ExperimentConfig& cfg) {
  const Grid grid = grid_of(cfg);
  const int n_part = cfg.particles;
  const OrbitalSet initial = stationary_states(grid, trap(cfg, cfg.lambda_i), n_part);
  const OrbitalSet target = stationary_states(grid, trap(cfg, cfg.lambda_f), n_part);
  const bool tg = cfg.wants_tg(), fermi = cfg.wants_fermi();
  CoherenceSpectrum target_tg, target_fermi;
  Rspdm target_tg_kernel;
  if (tg) {
    target_tg_kernel = tg_rspdm(target);
    target_tg = coherence_spectrum(target_tg_kernel);
  }
  if (fermi) target_fermi = coherence_spectrum(fermi_rspdm(target));

  ExperimentOutput out;
  out.config_echo = cfg.echo();
  CsvTable fid({"t_f", "F_sta_n0", "F_sta_nmax", "F_linear"});
  CsvTable td({"t_f", "TD_tg", "TD_fermi", "TD_tg_approx", "TD_fermi_approx", "TD_tg_decomposed", "TD_fermi_decomposed"});
  CsvTable speed({"t_f", "vbar_tg", "vbar_fermi"});
  CsvTable fluct({"t_f", "theta0_minus_kappa0", "theta1_minus_kappa1"});
  const auto stats = statistics_of(cfg);

  for (double t_f : cfg.t_f_list) {
    const Trajectory main = run_ramp(initial, sta_schedule(cfg, cfg.index_for(n_part), t_f), cfg);
    double f_n0 = kNan, f_lin = kNan;
    if (cfg.uses_ramp("n0")) {
      const Trajectory tr = run_ramp(initial, sta_schedule(cfg, 0, t_f), cfg);
      f_n0 = many_body_fidelity(tr.back(), target);
      if (cfg.speeds) add_qsl(out.qsl, RunKind::sta_n0, initial, tr, cfg, stats);
    }
    if (cfg.uses_ramp("linear")) {
      const Trajectory tr = run_ramp(initial, RampSchedule::linear(cfg.lambda_i, cfg.lambda_f, t_f), cfg);
      f_lin = many_body_fidelity(tr.back(), target);
      if (cfg.speeds) add_qsl(out.qsl, RunKind::linear, initial, tr, cfg, stats);
    }
    fid.add_row({t_f, f_n0, many_body_fidelity(main.back(), target), f_lin});

    std::vector<double> td_row{t_f, kNan, kNan, kNan, kNan, kNan, kNan};
    double d0 = kNan, d1 = kNan;
    if (tg) {
      const Rspdm final_kernel = tg_rspdm(main.back());
      const CoherenceSpectrum fin = coherence_spectrum(final_kernel);
      const TraceDistanceParts p = trace_distance_decomposed(fin, target_tg, natural_orbital_overlaps(target_tg, fin));
      td_row[1] = trace_distance(final_kernel, target_tg_kernel);
      td_row[3] = p.tg_approx;
      td_row[5] = p.full;
      d0 = fin.occupations[0] - target_tg.occupations[0];
      d1 = fin.occupations[1] - target_tg.occupations[1];
    }
    if (fermi) {
      const CoherenceSpectrum fin = coherence_spectrum(fermi_rspdm(main.back()));
      const TraceDistanceParts p =
          trace_distance_decomposed(fin, target_fermi, natural_orbital_overlaps(target_fermi, fin));
      td_row[2] = fermi_trace_distance(main.back(), target);
      td_row[4] = p.fermi_approx;
      td_row[6] = p.full;
    }
    td.add_row(td_row);
    fluct.add_row({t_f, d0, d1});

    std::vector<double> v_row{t_f, kNan, kNan};
    if (cfg.speeds) {
      std::vector<SpeedSeries> series;
      add_qsl(out.qsl, RunKind::sta_nmax, initial, main, cfg, stats, &series);
      for (const auto& s : series) v_row[s.statistics == Statistics::tg ? 1 : 2] = s.average;
    }
    speed.add_row(v_row);
  }

  out.plots.emplace_back("fidelity.svg", render_svg({"Fidelity versus ramp duration", "t_f", "F"},
                                                    {{"STA n=0", fid.column(0), fid.column(1), true},
                                                     {"STA n=N-1", fid.column(0), fid.column(2), true},
                                                     {"linear", fid.column(0), fid.column(3), true}}));
  out.plots.emplace_back("trace_distance.svg",
                         render_svg({"Trace distance to the target", "t_f", "T_D", false, true},
                                    {{"TG", td.column(0), td.column(1), true},
                                     {"Fermi", td.column(0), td.column(2), true},
                                     {"TG approx", td.column(0), td.column(3)},
                                     {"Fermi approx", td.column(0), td.column(4)}}));
  out.plots.emplace_back("speed.svg", render_svg({"Average speed", "t_f", "v_bar", true, true},
                                                 {{"TG", speed.column(0), speed.column(1), true},
                                                  {"Fermi", speed.column(0), speed.column(2), true}}));
  out.plots.emplace_back("theta_fluct.svg", render_svg({"Occupation fluctuations (TG)", "t_f", "theta_n - kappa_n"},
                                                       {{"n=0", fluct.column(0), fluct.column(1), true},
                                                        {"n=1", fluct.column(0), fluct.column(2), true}}));
  out.tables.emplace_back("fidelity.csv", std::move(fid));
  out.tables.emplace_back("trace_distance.csv", std::move(td));
  out.tables.emplace_back("speed.csv", std::move(speed));
  out.tables.emplace_back("theta_fluct.csv", std::move(fluct));
  out.tables.emplace_back("qsl.csv", qsl_table(out.qsl));
  return out;
}

// ---------------------------------------------------------------- particle-number scans

ExperimentOutput run_coherence_scan(const ExperimentConfig& cfg) {
  const Grid grid = grid_of(cfg);
  std::vector<double> ns, th_tg, th_f;
  for (int n : cfg.particle_list) {
    const OrbitalSet orbs = stationary_states(grid, trap(cfg, cfg.lambda_i), n);
    ns.push_back(n);
    th_tg.push_back(cfg.wants_tg() ? occupation_numbers(tg_rspdm(orbs))[0] : kNan);
    th_f.push_back(cfg.wants_fermi() ? occupation_numbers(fermi_rspdm(orbs))[0] : kNan);
  }
  std::vector<double> fx, fy;
  for (std::size_t k = 0; k < ns.size(); ++k)
    if (ns[k] >= 2 && std::isfinite(th_tg[k])) {
      fx.push_back(ns[k]);
      fy.push_back(th_tg[k]);
    }
  const double alpha = fx.size() >= 2 ? log_log_slope(fx, fy) : kNan;
  CsvTable t({"N", "theta0_tg", "theta0_fermi", "exponent"});
  for (std::size_t k = 0; k < ns.size(); ++k) t.add_row({ns[k], th_tg[k], th_f[k], alpha});
  ExperimentOutput out;
  out.config_echo = cfg.echo();
  out.plots.emplace_back("theta0_vs_N.svg", render_svg({"Largest occupation", "N", "theta_0", true, true},
                                                       {{"TG", ns, th_tg, true}, {"Fermi", ns, th_f, true}}));
  out.tables.emplace_back("theta0_vs_N.csv", std::move(t));
  return out;
}

ExperimentOutput run_infidelity_scan(const ExperimentConfig& cfg) {
  const Grid grid = grid_of(cfg);
  ExperimentOutput out;
  out.config_echo = cfg.echo();
  CsvTable t({"N", "infidelity_n0", "infidelity_nmax"});
  const auto stats = statistics_of(cfg);
  for (int n : cfg.particle_list) {
    const OrbitalSet initial = stationary_states(grid, trap(cfg, cfg.lambda_i), n);
    const OrbitalSet target = stationary_states(grid, trap(cfg, cfg.lambda_f), n);
    const Trajectory a = run_ramp(initial, sta_schedule(cfg, 0, cfg.t_f), cfg);
    const double inf_a = 1.0 - many_body_fidelity(a.back(), target);
    if (cfg.speeds) add_qsl(out.qsl, RunKind::sta_n0, initial, a, cfg, stats);
    double inf_b = inf_a;
    if (cfg.index_for(n) != 0) {
      const Trajectory b = run_ramp(initial, sta_schedule(cfg, cfg.index_for(n), cfg.t_f), cfg);
      inf_b = 1.0 - many_body_fidelity(b.back(), target);
      if (cfg.speeds) add_qsl(out.qsl, RunKind::sta_nmax, initial, b, cfg, stats);
    }
    t.add_row({static_cast<double>(n), inf_a, inf_b});
  }
  out.plots.emplace_back("infidelity.svg", render_svg({"Infidelity versus particle number", "N", "1 - F", false, true},
                                                      {{"STA n=0", t.column(0), t.column(1), true},
                                                       {"STA n=N-1", t.column(0), t.column(2), true}}));
  out.tables.emplace_back("infidelity.csv", std::move(t));
  out.tables.emplace_back("qsl.csv", qsl_table(out.qsl));
  return out;
}

ExperimentOutput run_experiment(const ExperimentConfig& cfg) {
  validate(cfg);
  if (cfg.kind == "eigens") return run_eigens(cfg);
  if (cfg.kind == "quench") return run_quench(cfg);
  if (cfg.kind == "sta-design") return run_sta_design(cfg);
  if (cfg.kind == "sta-run") return run_sta_run(cfg);
  if (cfg.kind == "tf-scan") return run_tf_scan(cfg);
  if (cfg.kind == "coherence-scan") return run_coherence_scan(cfg);
  if (cfg.kind == "infidelity-scan") return run_infidelity_scan(cfg);
  return run_qsl_report(cfg);
}

void write_outputs(const ExperimentOutput& out, const ExperimentConfig& cfg) {
  std::filesystem::create_directories(cfg.out_dir);
  const std::filesystem::path dir(cfg.out_dir);
  for (const auto& [name, table] : out.tables) table.write((dir / name).string(), out.config_echo);
  for (const auto& [name, text] : out.files) {
    std::ofstream f(dir / name, std::ios::binary);
    require(static_cast<bool>(f), ErrorKind::invalid_argument, "cannot write " + name);
    f << text;
  }
  if (!cfg.svg) return;
  for (const auto& [name, svg] : out.plots) {
    std::ofstream f(dir / name, std::ios::binary);
    require(static_cast<bool>(f), ErrorKind::invalid_argument, "cannot write " + name);
    f << svg;
  }
}

}  // namespace tgqsl::cli
