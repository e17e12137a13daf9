#pragma once

// Time evolution of orbital sets under a time-dependent trap strength.

#include <vector>

#include "tgqsl/spectral.hpp"

namespace tgqsl {

/// Trap strength lambda(t) on [0, t_f].
///   constant: lambda(t) = lambda_f (quench: state prepared at lambda_i)
///   linear:   lambda_i + (lambda_f - lambda_i) t / t_f
///   sampled:  cubic Hermite interpolation of uniform samples
class RampSchedule {
 public:
  enum class Kind { constant, linear, sampled };

  static RampSchedule constant(double lambda_i, double lambda_f, double t_f);
  static RampSchedule linear(double lambda_i, double lambda_f, double t_f);
  /// `times` must be uniform, start at 0 and have at least 4 entries.
  static RampSchedule sampled(std::vector<double> times, std::vector<double> values);

  Kind kind() const noexcept { return kind_; }
  double lambda_initial() const noexcept { return lambda_i_; }
  double lambda_final() const noexcept { return lambda_f_; }
  double duration() const noexcept { return t_f_; }
  const std::vector<double>& sample_times() const noexcept { return t_; }
  const std::vector<double>& sample_values() const noexcept { return v_; }

  /// Largest |lambda| over the schedule (sample maximum for sampled ramps).
  double max_abs_strength() const noexcept;
  /// Throws invalid_argument outside [0, t_f].
  double operator()(double t) const;

 private:
  Kind kind_ = Kind::constant;
  double lambda_i_ = 1.0;
  double lambda_f_ = 1.0;
  double t_f_ = 0.0;
  std::vector<double> t_;
  std::vector<double> v_;
  std::vector<double> slope_;
};

double eval_ramp(const RampSchedule& ramp, double t);

/// Orbital snapshots on a uniform time mesh ending exactly at t_f.
struct Trajectory {
  std::vector<double> times;
  std::vector<OrbitalSet> snapshots;
  RampSchedule ramp;
  int q = 2;
  double x0 = 0.0;

  double record_interval() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
  const OrbitalSet& front() const { return snapshots.front(); }
  const OrbitalSet& back() const { return snapshots.back(); }
  std::size_t size() const noexcept { return snapshots.size(); }
  PotentialSpec potential_at(double t) const { return {q, ramp(t), x0}; }
};

/// Largest time step accepted for a given peak trap strength.
double max_time_step(double lambda_max);

/// Strang split-step evolution (half kinetic, potential at the midpoint
/// strength, half kinetic) of every orbital. The step count is rounded up to
/// a multiple of `record_every` so that t_f is hit exactly; a snapshot is
/// kept every `record_every` steps including t = 0 and t = t_f.
/// Throws propagation_diverged if any orbital norm drifts by more than 1e-6.
Trajectory evolve(const OrbitalSet& initial, const RampSchedule& ramp, int q, double dt, int record_every);

/// `record_every` giving snapshots roughly every `record_dt` at step `dt`.
int record_stride(double dt, double record_dt);

}  // namespace tgqsl
