#include "tgqsl/propagate.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "tgqsl/error.hpp"

namespace tgqsl {

// ---------------------------------------------------------------- RampSchedule

RampSchedule RampSchedule::constant(double lambda_i, double lambda_f, double t_f) {
  require(t_f > 0.0, ErrorKind::invalid_argument, "ramp duration must be positive");
  RampSchedule r;
  r.kind_ = Kind::constant;
  r.lambda_i_ = lambda_i;
  r.lambda_f_ = lambda_f;
  r.t_f_ = t_f;
  return r;
}

RampSchedule RampSchedule::linear(double lambda_i, double lambda_f, double t_f) {
  RampSchedule r = constant(lambda_i, lambda_f, t_f);
  r.kind_ = Kind::linear;
  return r;
}

RampSchedule RampSchedule::sampled(std::vector<double> times, std::vector<double> values) {
  require(times.size() == values.size(), ErrorKind::invalid_argument, "ramp times and values differ in length");
  require(times.size() >= 4, ErrorKind::invalid_argument, "sampled ramp needs at least 4 samples");
  require(times.front() == 0.0, ErrorKind::invalid_argument, "sampled ramp must start at t = 0");
  const double h = (times.back() - times.front()) / static_cast<double>(times.size() - 1);
  require(h > 0.0, ErrorKind::invalid_argument, "sampled ramp times must increase");
  for (std::size_t k = 1; k < times.size(); ++k)
    require(std::abs(times[k] - times[k - 1] - h) < 1e-6 * h, ErrorKind::invalid_argument,
            "sampled ramp times must be uniform");

  RampSchedule r;
  r.kind_ = Kind::sampled;
  r.lambda_i_ = values.front();
  r.lambda_f_ = values.back();
  r.t_f_ = times.back();
  const std::size_t n = values.size();
  r.slope_.resize(n);
  // Second-order finite-difference slopes for the cubic Hermite pieces.
  r.slope_[0] = (-3.0 * values[0] + 4.0 * values[1] - values[2]) / (2.0 * h);
  r.slope_[n - 1] = (3.0 * values[n - 1] - 4.0 * values[n - 2] + values[n - 3]) / (2.0 * h);
  for (std::size_t k = 1; k + 1 < n; ++k) r.slope_[k] = (values[k + 1] - values[k - 1]) / (2.0 * h);
  r.t_ = std::move(times);
  r.v_ = std::move(values);
  return r;
}

double RampSchedule::max_abs_strength() const noexcept {
  switch (kind_) {
    case Kind::constant: return std::abs(lambda_f_);
    case Kind::linear: return std::max(std::abs(lambda_i_), std::abs(lambda_f_));
    case Kind::sampled: {
      double m = 0.0;
      for (double v : v_) m = std::max(m, std::abs(v));
      return m;
    }
  }
  return 0.0;
}

double RampSchedule::operator()(double t) const {
  const double slack = 1e-12 * std::max(1.0, t_f_);
  if (!(t >= -slack && t <= t_f_ + slack)) {
    std::ostringstream msg;
    msg << "time " << t << " outside ramp interval [0, " << t_f_ << "]";
    fail(ErrorKind::invalid_argument, msg.str());
  }
  t = std::clamp(t, 0.0, t_f_);
  switch (kind_) {
    case Kind::constant: return lambda_f_;
    case Kind::linear: return lambda_i_ + (lambda_f_ - lambda_i_) * t / t_f_;
    case Kind::sampled: break;
  }
  const double h = t_[1] - t_[0];
  const auto last = t_.size() - 1;
  auto k = static_cast<std::size_t>(std::floor(t / h));
  if (k >= last) k = last - 1;
  const double s = (t - t_[k]) / h;
  const double s2 = s * s;
  const double s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * v_[k] + (s3 - 2 * s2 + s) * h * slope_[k] + (-2 * s3 + 3 * s2) * v_[k + 1] +
         (s3 - s2) * h * slope_[k + 1];
}

double eval_ramp(const RampSchedule& ramp, double t) { return ramp(t); }

// ---------------------------------------------------------------- evolution

double max_time_step(double lambda_max) { return 1e-3 / std::max(1.0, std::cbrt(std::abs(lambda_max))); }

int record_stride(double dt, double record_dt) {
  require(dt > 0.0 && record_dt > 0.0, ErrorKind::invalid_argument, "time steps must be positive");
  return std::max(1, static_cast<int>(std::lround(record_dt / dt)));
}

namespace {

double column_norm(const MatrixXcd& psi, Eigen::Index c, double dx) { return psi.col(c).squaredNorm() * dx; }

}  // namespace

Trajectory evolve(const OrbitalSet& initial, const RampSchedule& ramp, int q, double dt, int record_every) {
  require(q >= 1, ErrorKind::invalid_argument, "power-law exponent q must be >= 1");
  require(record_every >= 1, ErrorKind::invalid_argument, "record_every must be >= 1");
  require(dt > 0.0, ErrorKind::invalid_argument, "time step must be positive");
  const double dt_max = max_time_step(ramp.max_abs_strength());
  if (dt > dt_max * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds limit " << dt_max << " for peak strength " << ramp.max_abs_strength();
    fail(ErrorKind::invalid_argument, msg.str());
  }
  require(initial.count() >= 1, ErrorKind::invalid_argument, "no orbitals to evolve");
  require(boundary_amplitudes(initial).maxCoeff() < 1e-6, ErrorKind::invalid_argument,
          "initial orbitals reach the grid boundary");

  const Grid& grid = initial.grid();
  const int m = grid.size();
  const double t_f = ramp.duration();
  const long segments = std::max(1L, static_cast<long>(std::ceil(t_f / (dt * record_every) - 1e-9)));
  const long steps = segments * record_every;
  const double h = t_f / static_cast<double>(steps);

  const FftPlan fft(m);
  const VectorXd k = grid.wavenumbers();
  VectorXcd half_kin(m), full_kin(m);
  for (int i = 0; i < m; ++i) {
    const double e = 0.5 * k[i] * k[i];
    half_kin[i] = std::polar(1.0 / m, -0.5 * e * h);
    full_kin[i] = std::polar(1.0 / m, -e * h);
  }
  const PotentialSpec unit{q, 1.0, 0.0};
  VectorXd shape(m);
  for (int i = 0; i < m; ++i) shape[i] = unit(grid.x(i));

  Trajectory traj;
  traj.ramp = ramp;
  traj.q = q;
  traj.x0 = 0.0;
  traj.times.reserve(static_cast<std::size_t>(segments + 1));
  traj.snapshots.reserve(static_cast<std::size_t>(segments + 1));
  traj.times.push_back(0.0);
  traj.snapshots.push_back(OrbitalSet(grid, initial.amplitudes()));

  MatrixXcd psi = initial.amplitudes();
  const int n_orb = initial.count();
  std::vector<double> norm0(static_cast<std::size_t>(n_orb));
  for (int c = 0; c < n_orb; ++c) norm0[c] = column_norm(psi, c, grid.dx());

  VectorXcd pot_phase(m);
  long step = 0;
  for (long seg = 0; seg < segments; ++seg) {
    for (long s = 0; s < record_every; ++s, ++step) {
      const double lam = ramp((static_cast<double>(step) + 0.5) * h);
      for (int i = 0; i < m; ++i) pot_phase[i] = std::polar(1.0, -lam * shape[i] * h);
      const bool first = (s == 0);
      const bool last = (s == record_every - 1);
#pragma omp parallel for schedule(static)
      for (int c = 0; c < n_orb; ++c) {
        cplx* col = psi.col(c).data();
        if (first) {
          fft.forward(col);
          for (int i = 0; i < m; ++i) col[i] *= half_kin[i];
          fft.backward(col);
        }
        for (int i = 0; i < m; ++i) col[i] *= pot_phase[i];
        fft.forward(col);
        const VectorXcd& kin = last ? half_kin : full_kin;
        for (int i = 0; i < m; ++i) col[i] *= kin[i];
        fft.backward(col);
      }
    }
    for (int c = 0; c < n_orb; ++c) {
      const double nrm = column_norm(psi, c, grid.dx());
      if (!std::isfinite(nrm) || std::abs(nrm - norm0[c]) > 1e-6) {
        std::ostringstream msg;
        msg << "orbital " << c << " norm drifted to " << nrm << " by step " << step;
        fail(ErrorKind::propagation_diverged, msg.str());
      }
    }
    traj.times.push_back(t_f * static_cast<double>(seg + 1) / static_cast<double>(segments));
    traj.snapshots.push_back(OrbitalSet(grid, psi));
  }
  return traj;
}

}  // namespace tgqsl
