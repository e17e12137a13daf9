#include "tgqsl/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tgqsl/error.hpp"

namespace tgqsl {

double schatten_norm(const MatrixXcd& kernel, double dx, double p) {
  require(p >= 1.0, ErrorKind::invalid_argument, "Schatten norm needs p >= 1");
  require(kernel.rows() == kernel.cols(), ErrorKind::invalid_argument, "Schatten norm of a non-square kernel");
  if (kernel.size() == 0) return 0.0;
  const MatrixXcd op = kernel * dx;
  const double scale = op.cwiseAbs().maxCoeff();
  if (scale == 0.0) return 0.0;
  VectorXd s;
  if ((op - op.adjoint()).cwiseAbs().maxCoeff() <= 1e-13 * scale) {
    const Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(op, Eigen::EigenvaluesOnly);
    s = solver.eigenvalues().cwiseAbs();
  } else {
    s = Eigen::BDCSVD<MatrixXcd>(op).singularValues();
  }
  if (p == 1.0) return s.sum();
  if (p == 2.0) return std::sqrt(s.squaredNorm());
  return std::pow(s.array().pow(p).sum(), 1.0 / p);
}

double low_rank_trace_norm(const MatrixXcd& left, const MatrixXcd& right) {
  require(left.rows() == right.rows() && left.cols() == right.cols(), ErrorKind::invalid_argument,
          "low-rank factors differ in shape");
  if (left.size() == 0) return 0.0;
  const auto k = std::min(left.rows(), left.cols());
  const Eigen::HouseholderQR<MatrixXcd> ql(left);
  const Eigen::HouseholderQR<MatrixXcd> qr(right);
  const MatrixXcd rl = ql.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  const MatrixXcd rr = qr.matrixQR().topRows(k).triangularView<Eigen::Upper>();
  // L R^dagger = Q_L (R_L R_R^dagger) Q_R^dagger with orthonormal Q factors.
  const MatrixXcd core = rl * rr.adjoint();
  return Eigen::BDCSVD<MatrixXcd>(core).singularValues().sum();
}

double trace_distance(const Rspdm& a, const Rspdm& b) {
  require(a.grid == b.grid, ErrorKind::invalid_argument, "trace distance between kernels on different grids");
  require(a.particles == b.particles, ErrorKind::invalid_argument, "trace distance between different particle numbers");
  return 0.5 * schatten_norm(a.kernel - b.kernel, a.grid.dx(), 1.0);
}

namespace {

/// ||rho_a - rho_b||_1 for two Fermi seas.
double fermi_difference_norm(const OrbitalSet& a, const OrbitalSet& b) {
  const double w = std::sqrt(a.grid().dx());
  const auto n = a.count();
  MatrixXcd left(a.grid().size(), 2 * n), right(a.grid().size(), 2 * n);
  left << a.amplitudes() * w, b.amplitudes() * w;
  right << a.amplitudes() * w, -b.amplitudes() * w;
  return low_rank_trace_norm(left, right);
}

double trapezoid_average(const std::vector<double>& t, const std::vector<double>& v) {
  double s = 0.0;
  for (std::size_t k = 0; k + 1 < t.size(); ++k) s += 0.5 * (v[k] + v[k + 1]) * (t[k + 1] - t[k]);
  const double span = t.back() - t.front();
  return span > 0.0 ? s / span : 0.0;
}

}  // namespace

double fermi_trace_distance(const OrbitalSet& a, const OrbitalSet& b) {
  require(a.grid() == b.grid(), ErrorKind::invalid_argument, "trace distance between sets on different grids");
  require(a.count() == b.count(), ErrorKind::invalid_argument, "trace distance between different particle numbers");
  return 0.5 * fermi_difference_norm(a, b);
}

SpeedPoint instantaneous_speed(const Trajectory& traj, Statistics statistics, std::size_t k) {
  const std::size_t n = traj.size();
  require(n >= 2, ErrorKind::invalid_argument, "speed needs at least two snapshots");
  require(k < n, ErrorKind::invalid_argument, "snapshot index out of range");
  std::size_t lo = k == 0 ? 0 : k - 1;
  std::size_t hi = k + 1 >= n ? n - 1 : k + 1;
  SpeedPoint p;
  p.reduced_order = (k == 0 || k == n - 1);
  const double span = traj.times[hi] - traj.times[lo];
  if (statistics == Statistics::fermi) {
    p.value = fermi_difference_norm(traj.snapshots[hi], traj.snapshots[lo]) / span;
  } else {
    const Rspdm a = tg_rspdm(traj.snapshots[hi]);
    const Rspdm b = tg_rspdm(traj.snapshots[lo]);
    p.value = schatten_norm(a.kernel - b.kernel, a.grid.dx(), 1.0) / span;
  }
  return p;
}

SpeedSeries average_speed(const Trajectory& traj, Statistics statistics, const KernelVisitor& visit) {
  const std::size_t n = traj.size();
  require(n >= 3, ErrorKind::invalid_argument, "average speed needs at least three snapshots");
  SpeedSeries out;
  out.statistics = statistics;
  out.times = traj.times;
  out.speed.assign(n, 0.0);
  out.reduced_order.assign(n, false);
  out.reduced_order.front() = out.reduced_order.back() = true;
  const auto& t = traj.times;

  if (statistics == Statistics::fermi) {
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t lo = k == 0 ? 0 : k - 1;
      const std::size_t hi = k + 1 >= n ? n - 1 : k + 1;
      out.speed[k] = fermi_difference_norm(traj.snapshots[hi], traj.snapshots[lo]) / (t[hi] - t[lo]);
    }
    if (visit)
      for (std::size_t k = 0; k < n; ++k) visit(k, fermi_rspdm(traj.snapshots[k]));
  } else {
    const double dx = traj.front().grid().dx();
    Rspdm prev = tg_rspdm(traj.snapshots[0]);
    Rspdm cur = tg_rspdm(traj.snapshots[1]);
    if (visit) visit(0, prev);
    out.speed[0] = schatten_norm(cur.kernel - prev.kernel, dx, 1.0) / (t[1] - t[0]);
    for (std::size_t k = 1; k + 1 < n; ++k) {
      Rspdm next = tg_rspdm(traj.snapshots[k + 1]);
      if (visit) visit(k, cur);
      out.speed[k] = schatten_norm(next.kernel - prev.kernel, dx, 1.0) / (t[k + 1] - t[k - 1]);
      prev = std::move(cur);
      cur = std::move(next);
    }
    if (visit) visit(n - 1, cur);
    out.speed[n - 1] = schatten_norm(cur.kernel - prev.kernel, dx, 1.0) / (t[n - 1] - t[n - 2]);
  }
  out.average = trapezoid_average(out.times, out.speed);
  return out;
}

double fermi_commutator_speed(const OrbitalSet& orbs, const PotentialSpec& pot) {
  require_orthonormal(orbs);
  const SingleParticleHamiltonian h(orbs.grid(), pot);
  const double w = std::sqrt(orbs.grid().dx());
  const MatrixXcd hpsi = h.apply(orbs.amplitudes()) * w;
  const MatrixXcd psi = orbs.amplitudes() * w;
  MatrixXcd left(psi.rows(), 2 * psi.cols()), right(psi.rows(), 2 * psi.cols());
  left << hpsi, psi;
  right << psi, -hpsi;
  return low_rank_trace_norm(left, right);
}

// ---------------------------------------------------------------- QSL

QslReport qsl_report(const OrbitalSet& initial, const OrbitalSet& final_state, const PotentialSpec& pot_initial,
                     const Trajectory& traj, Statistics statistics) {
  return qsl_report(initial, final_state, pot_initial, traj, average_speed(traj, statistics));
}

QslReport qsl_report(const OrbitalSet& initial, const OrbitalSet& final_state, const PotentialSpec& pot_initial,
                     const Trajectory& traj, const SpeedSeries& speeds) {
  pot_initial.validate();
  require(pot_initial.q == traj.q, ErrorKind::invalid_argument, "trajectory and potential use different powers");
  require(speeds.times.size() == traj.size(), ErrorKind::invalid_argument, "speed series does not match trajectory");
  constexpr double inf = std::numeric_limits<double>::infinity();

  QslReport r;
  r.statistics = speeds.statistics;
  r.duration = traj.ramp.duration();
  r.fidelity = many_body_fidelity(initial, final_state);
  r.bures_angle = std::acos(std::sqrt(std::clamp(r.fidelity, 0.0, 1.0)));
  r.driven = traj.ramp.kind() != RampSchedule::Kind::constant;

  if (!r.driven) {
    const PotentialSpec gen{pot_initial.q, traj.ramp.lambda_final(), pot_initial.x0};
    const EnergyStats s = slater_energy_stats(initial, gen);
    r.ground_energy = stationary_states(initial.grid(), gen, initial.count()).energies().sum();
    r.delta_h = s.std;
    r.mean_energy = s.mean - r.ground_energy;
  } else {
    std::vector<double> spread(traj.size());
    for (std::size_t k = 0; k < traj.size(); ++k)
      spread[k] = slater_energy_stats(traj.snapshots[k], traj.potential_at(traj.times[k])).std;
    r.delta_h = trapezoid_average(traj.times, spread);
  }

  // acos is ill-conditioned at F = 1; below this angle the state has not moved
  // beyond rounding of the overlap determinant
  constexpr double kAngleFloor = 1e-6;
  const double b = r.bures_angle < kAngleFloor ? 0.0 : r.bures_angle;
  if (b == 0.0) {
    r.mt_bound = 0.0;
  } else if (r.delta_h <= 1e-12) {
    r.mt_bound = inf;
    r.mt_infinite = true;
  } else {
    r.mt_bound = b / r.delta_h;
  }
  if (!r.driven) {
    if (b == 0.0) {
      r.ml_bound = 0.0;
    } else if (r.mean_energy <= 1e-12) {
      r.ml_bound = inf;
      r.ml_infinite = true;
    } else {
      r.ml_bound = 2.0 / std::numbers::pi * b * b / r.mean_energy;
    }
  }
  r.unified_bound = std::max(r.mt_bound, r.ml_bound.value_or(0.0));

  if (speeds.statistics == Statistics::fermi) {
    r.trace_distance = fermi_trace_distance(initial, final_state);
  } else {
    r.trace_distance = trace_distance(tg_rspdm(initial), tg_rspdm(final_state));
  }
  r.average_speed = speeds.average;
  if (r.trace_distance == 0.0) {
    r.geometric_bound = 0.0;
  } else if (r.average_speed <= 0.0) {
    r.geometric_bound = inf;
    r.geometric_infinite = true;
  } else {
    r.geometric_bound = 2.0 * r.trace_distance / r.average_speed;
  }
  return r;
}

// ---------------------------------------------------------------- decomposed trace distance

MatrixXcd natural_orbital_overlaps(const CoherenceSpectrum& target, const CoherenceSpectrum& final_state) {
  require(target.grid == final_state.grid, ErrorKind::invalid_argument, "natural orbitals on different grids");
  return (target.natural_orbitals.adjoint() * final_state.natural_orbitals) * target.grid.dx();
}

namespace {

/// Leading indices whose occupation stays at or above `floor` (occupations are descending).
Eigen::Index retained(const VectorXd& occ, double floor) {
  Eigen::Index k = 0;
  while (k < occ.size() && occ[k] >= floor) ++k;
  return k;
}

}  // namespace

TraceDistanceParts trace_distance_decomposed(const CoherenceSpectrum& final_state, const CoherenceSpectrum& target,
                                             const MatrixXcd& overlaps) {
  const VectorXd& theta = final_state.occupations;
  const VectorXd& kappa = target.occupations;
  require(overlaps.rows() == kappa.size() && overlaps.cols() == theta.size(), ErrorKind::invalid_argument,
          "overlap matrix shape does not match the spectra");
  const double n_target = kappa.sum();
  const double n_particles = std::round(n_target);
  if (std::abs(n_target - n_particles) > 1e-4 || std::abs(theta.sum() - n_particles) > 1e-4) {
    std::ostringstream msg;
    msg << "occupation sums " << theta.sum() << ", " << n_target << " do not match a particle number";
    fail(ErrorKind::invalid_state, msg.str());
  }

  TraceDistanceParts parts;
  // Full: rho_final - rho_target expressed in the target natural-orbital basis.
  MatrixXcd diff = overlaps * theta.asDiagonal() * overlaps.adjoint();
  diff.diagonal() -= kappa.cast<cplx>();
  diff = 0.5 * (diff + diff.adjoint()).eval();
  const Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(diff, Eigen::EigenvaluesOnly);
  parts.full = 0.5 * solver.eigenvalues().cwiseAbs().sum();

  // Without cross terms: diagonal of (rho_final - rho_target)^2 in the target basis.
  const Eigen::Index mk = retained(kappa, 1e-8);
  const Eigen::Index nk = retained(theta, 1e-8);
  const MatrixXd w = overlaps.topLeftCorner(mk, nk).cwiseAbs2();
  const VectorXd th = theta.head(nk);
  for (Eigen::Index m = 0; m < mk; ++m) {
    double x = kappa[m] * kappa[m];
    for (Eigen::Index n = 0; n < nk; ++n) x += w(m, n) * (th[n] * th[n] - 2.0 * th[n] * kappa[m]);
    parts.tg_approx += 0.5 * std::sqrt(std::max(x, 0.0));
  }

  // Unit occupations of the first N natural orbitals on both sides.
  const auto nf = static_cast<Eigen::Index>(n_particles);
  for (Eigen::Index m = 0; m < nf; ++m) {
    const double x = 1.0 - overlaps.row(m).head(nf).cwiseAbs2().sum();
    parts.fermi_approx += 0.5 * std::sqrt(std::max(x, 0.0));
  }
  return parts;
}

}  // namespace tgqsl
