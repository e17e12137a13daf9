#pragma once

// Schatten norms, trace distances, RSPDM speeds and quantum speed limits.

#include <functional>
#include <optional>
#include <vector>

#include "tgqsl/manybody.hpp"
#include "tgqsl/propagate.hpp"

namespace tgqsl {

/// (sum_k s_k^p)^(1/p) over the singular values of the operator K*dx.
double schatten_norm(const MatrixXcd& kernel, double dx, double p);

/// Trace norm of the rank-deficient matrix L R^dagger (both n x r).
double low_rank_trace_norm(const MatrixXcd& left, const MatrixXcd& right);

/// 1/2 ||rho_a - rho_b||_1.
double trace_distance(const Rspdm& a, const Rspdm& b);

/// Trace distance of two Fermi-sea RSPDMs from their orbitals without forming kernels.
double fermi_trace_distance(const OrbitalSet& a, const OrbitalSet& b);

struct SpeedPoint {
  double value = 0.0;
  bool reduced_order = false;  ///< one-sided difference at a trajectory end
};

/// ||d rho / dt||_1 at snapshot k by central difference of the kernels at
/// k-1 and k+1; one-sided (flagged) at the two ends.
SpeedPoint instantaneous_speed(const Trajectory& traj, Statistics statistics, std::size_t k);

struct SpeedSeries {
  std::vector<double> times;
  std::vector<double> speed;
  std::vector<bool> reduced_order;
  Statistics statistics = Statistics::fermi;
  double average = 0.0;  ///< (1/t_f) * trapezoid integral of speed
};

/// Called once per snapshot with its kernel, in snapshot order.
using KernelVisitor = std::function<void(std::size_t, const Rspdm&)>;

/// Speeds at every snapshot (each kernel built once) and their time average.
/// Requires at least 3 snapshots.
SpeedSeries average_speed(const Trajectory& traj, Statistics statistics, const KernelVisitor& visit = {});

/// ||-i[h, rho]||_1 for a Fermi sea; exact rate of change of its RSPDM.
double fermi_commutator_speed(const OrbitalSet& orbs, const PotentialSpec& pot);

struct QslReport {
  double delta_h = 0.0;       ///< energy spread (time-averaged for driven ramps)
  double mean_energy = 0.0;   ///< <H> above the many-body ground energy of the generator
  double ground_energy = 0.0;
  double fidelity = 0.0;
  double bures_angle = 0.0;
  double mt_bound = 0.0;
  std::optional<double> ml_bound;  ///< only defined for a time-independent generator
  double unified_bound = 0.0;      ///< max(MT, ML)
  double trace_distance = 0.0;
  double average_speed = 0.0;
  double geometric_bound = 0.0;    ///< 2 T_D / v_bar
  double duration = 0.0;
  bool driven = false;             ///< generator depends on time
  bool mt_infinite = false;
  bool ml_infinite = false;
  bool geometric_infinite = false;
  Statistics statistics = Statistics::fermi;
};

/// Speed-limit bounds for the run initial -> final along `traj`.
/// For a constant (quench) ramp the generator is h(lambda_f) and Delta H, <H>
/// are those of the initial state, <H> measured from the lowest N levels of
/// h(lambda_f). For a driven ramp Delta H is averaged over the trajectory
/// and the ML bound is not defined.
QslReport qsl_report(const OrbitalSet& initial, const OrbitalSet& final_state, const PotentialSpec& pot_initial,
                     const Trajectory& traj, Statistics statistics);

/// Same, reusing a speed series already computed for `traj`.
QslReport qsl_report(const OrbitalSet& initial, const OrbitalSet& final_state, const PotentialSpec& pot_initial,
                     const Trajectory& traj, const SpeedSeries& speeds);

struct TraceDistanceParts {
  double full = 0.0;
  double tg_approx = 0.0;
  double fermi_approx = 0.0;
};

/// Delta_mn = <chi_m|phi_n> between target (chi) and final (phi) natural orbitals.
MatrixXcd natural_orbital_overlaps(const CoherenceSpectrum& target, const CoherenceSpectrum& final_state);

/// Trace distance from spectra and overlaps: the full expansion, the
/// cross-term-free approximation and the unit-occupation (Fermi) form.
TraceDistanceParts trace_distance_decomposed(const CoherenceSpectrum& final_state, const CoherenceSpectrum& target,
                                             const MatrixXcd& overlaps);

}  // namespace tgqsl
