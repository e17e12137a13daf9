#pragma once

// Variational shortcut design for power-law traps. The n-th trap state is
// modelled by a scaled harmonic-oscillator eigenfunction of width a(t); the
// width obeys  a'' + lambda(t) a^(2q-1) D(n,q) = a^-3,  which is inverted for
// lambda(t) once a(t) is fixed by a quintic through the endpoint conditions.

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "tgqsl/propagate.hpp"

namespace tgqsl {

/// <y^(2k)> in the n-th eigenstate of the unit harmonic oscillator.
double hermite_even_moment(int n, int k);

/// Quartic moment coefficient 3(2n^2+2n+1)/8 (= <y^4>/2).
double quartic_coefficient(int n);

struct GeneralCoefficients {
  std::vector<double> moments;  ///< <y^(2k)> for k = 0..q
  double d = 0.0;               ///< coefficient of the width equation
  double printed_d = 0.0;       ///< closed-form finite-sum expression, kept as a cross-check
};

/// Moment table and D(n,q) = 2q <y^(2q)> / (2n+1).
GeneralCoefficients general_coefficients(int n, int q);

/// Stationary width a_c = (D(n,q) lambda)^(-1/(2q+2)).
double scaling_fixed_point(int n, int q, double lambda);

/// a(t) = sum_i c_i t^i with a(0), a(t_f) at the fixed points and vanishing
/// first and second derivatives at both ends.
struct ScalingPolynomial {
  std::array<double, 6> c{};
  double t_f = 0.0;
  int n = 0;
  int q = 2;
  double lambda_i = 1.0;
  double lambda_f = 1.0;

  double value(double t) const noexcept;
  double velocity(double t) const noexcept;
  double acceleration(double t) const noexcept;
};

ScalingPolynomial design_scaling(int n, int q, double lambda_i, double lambda_f, double t_f);

/// lambda(t) sampled on a uniform mesh of [0, t_f].
struct StaRamp {
  std::vector<double> times;
  std::vector<double> lambda;
  int n = 0;
  int q = 2;
  double lambda_i = 1.0;
  double lambda_f = 1.0;
  double t_f = 0.0;
  bool has_nonpositive = false;  ///< some sample has lambda <= 0 (trap inversion)

  RampSchedule schedule() const;
  /// Largest |dlambda/dt| at the two ends, by one-sided differences.
  double endpoint_slope() const;
};

inline constexpr int default_ramp_samples = 4001;

/// Inverts the width equation sample by sample. Throws design_infeasible if
/// a(t) <= 0 anywhere on the mesh.
StaRamp ramp_from_scaling(const ScalingPolynomial& poly, int samples = default_ramp_samples);

/// Shortcut ramp for design index n in one call.
StaRamp design_ramp(int n, int q, double lambda_i, double lambda_f, double t_f, int samples = default_ramp_samples);

/// max_k |a'' + lambda_k a^(2q-1) D - a^-3| over the ramp mesh.
double ermakov_residual(const ScalingPolynomial& poly, const StaRamp& ramp);

/// Ansatz parameters: width a, chirp b, centre slope c, centre xi.
struct VariationalState {
  double a = 1.0;
  double b = 0.0;
  double c = 0.0;
  double xi = 0.0;
};

struct VariationalRates {
  double a_dot = 0.0;
  double b_dot = 0.0;
  double c_dot = 0.0;
  double xi_dot = 0.0;
};

/// Euler-Lagrange equations of the ansatz in a trap centred at x0.
VariationalRates variational_ode_rhs(const VariationalState& s, double lambda, int n, int q, double x0);

/// Integrates the ansatz equations along `ramp` with `steps` RK4 steps.
/// Returns the states at the steps+1 uniform times of [0, t_f].
std::vector<VariationalState> integrate_ansatz(const VariationalState& start, const RampSchedule& ramp, int n, int q,
                                               double x0, int steps);

/// Ansatz energy (2n+1)/(4a^2) + (lambda/2) a^(2q) <y^(2q)> at a = a_c.
double ansatz_energy(int n, double lambda, int q = 2);

/// CSV with an optional free comment, a metadata comment ("# n=...,q=..."),
/// a header and (t, lambda) rows at 12 significant digits. Reading ignores
/// comment lines other than the metadata line.
void write_ramp_csv(std::ostream& out, const StaRamp& ramp, const std::string& comment = {});
StaRamp read_ramp_csv(std::istream& in);

}  // namespace tgqsl
