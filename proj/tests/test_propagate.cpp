#include <doctest.h>

#include <cmath>

#include "tgqsl/error.hpp"
#include "tgqsl/manybody.hpp"
#include "tgqsl/oracle.hpp"
#include "tgqsl/propagate.hpp"
#include "tgqsl/sta.hpp"

using namespace tgqsl;

TEST_CASE("ramp evaluation") {
  const RampSchedule lin = RampSchedule::linear(1, 8, 2);
  CHECK(eval_ramp(lin, 1.0) == doctest::Approx(4.5));
  CHECK(eval_ramp(lin, 0.0) == doctest::Approx(1.0));
  CHECK(eval_ramp(lin, 2.0) == doctest::Approx(8.0));

  const RampSchedule quench = RampSchedule::constant(1, 8, 2);
  CHECK(eval_ramp(quench, 0.0) == 8.0);
  CHECK(eval_ramp(quench, 1.3) == 8.0);

  const StaRamp sta = design_ramp(4, 2, 1, 8, 1.5);
  CHECK(eval_ramp(sta.schedule(), 0.0) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(eval_ramp(sta.schedule(), 1.5) == doctest::Approx(8.0).epsilon(1e-6));

  bool threw = false;
  try {
    eval_ramp(lin, 2.5);
  } catch (const Error& e) {
    threw = e.kind() == ErrorKind::invalid_argument;
  }
  CHECK(threw);
}

TEST_CASE("sampled ramps pass through their samples and reproduce smooth data") {
  std::vector<double> t, v;
  for (int k = 0; k <= 40; ++k) t.push_back(0.05 * k), v.push_back(2.0 + std::sin(t.back()));
  const RampSchedule r = RampSchedule::sampled(t, v);
  CHECK(eval_ramp(r, 0.5) == doctest::Approx(v[10]).epsilon(1e-14));
  for (double x : {0.123, 0.777, 1.61}) CHECK(std::abs(eval_ramp(r, x) - 2.0 - std::sin(x)) < 1e-5);
  CHECK(r.max_abs_strength() == doctest::Approx(3.0).epsilon(1e-3));
  CHECK_THROWS_AS(RampSchedule::sampled({0.0, 1.0, 2.0}, {1.0, 3.0, 2.0}), Error);
}

TEST_CASE("stationary evolution keeps the state") {
  const Grid g = build_grid(8, 128);
  const OrbitalSet s = stationary_states(g, {2, 1.0, 0.0}, 3);
  const Trajectory traj = evolve(s, RampSchedule::linear(1, 1, 1.0), 2, 1e-3, 100);
  CHECK(traj.size() == 11);
  CHECK(traj.times.back() == doctest::Approx(1.0));
  for (const auto& snap : traj.snapshots) CHECK(many_body_fidelity(s, snap) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("stationary state picks up the phase exp(-iEt)") {
  const Grid g = build_grid(8, 128);
  const OrbitalSet s = stationary_states(g, {2, 1.0, 0.0}, 2);
  const double t = 0.7;
  const Trajectory traj = evolve(s, RampSchedule::linear(1, 1, t), 2, 1e-3, 700);
  for (int n = 0; n < 2; ++n) {
    const VectorXcd expect = s.amplitudes().col(n) * std::exp(cplx(0, -s.energies()[n] * t));
    CHECK((traj.back().amplitudes().col(n) - expect).cwiseAbs().maxCoeff() < 1e-5);
  }
}

TEST_CASE("quench evolution matches the implicit reference integrator") {
  // reference: dense Crank-Nicolson with Richardson extrapolation on the same grid
  const Grid g = build_grid(6, 64);
  const OrbitalSet s = stationary_states(g, {2, 1.0, 0.0}, 2);
  const RampSchedule quench = RampSchedule::constant(1, 8, 0.5);
  const Trajectory traj = evolve(s, quench, 2, 1e-4, 5000);
  const OrbitalSet ref = oracle::reference_integrator(s, quench, 2, 1e-4);
  CHECK((traj.back().amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("driven evolution matches the reference integrator") {
  const Grid g = build_grid(6, 64);
  const OrbitalSet s = stationary_states(g, {2, 1.0, 0.0}, 2);
  const RampSchedule ramp = design_ramp(1, 2, 1, 8, 0.5).schedule();
  const Trajectory traj = evolve(s, ramp, 2, 1e-4, 5000);
  const OrbitalSet ref = oracle::reference_integrator(s, ramp, 2, 1e-4);
  CHECK((traj.back().amplitudes() - ref.amplitudes()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("harmonic shortcut is exact for ten particles") {
  const Grid g = build_grid(10, 256);
  const PotentialSpec start{1, 1.0, 0.0};
  const OrbitalSet s = stationary_states(g, start, 10);
  const OrbitalSet target = stationary_states(g, start.with_strength(8.0), 10);
  for (double t_f : {0.5, 1.0}) {
    const RampSchedule ramp = design_ramp(9, 1, 1, 8, t_f).schedule();
    const double dt = std::min(1e-3, max_time_step(ramp.max_abs_strength()));
    const Trajectory traj = evolve(s, ramp, 1, dt, record_stride(dt, t_f));
    CHECK(many_body_fidelity(traj.back(), target) > 0.999);
  }
}

TEST_CASE("step and stride helpers") {
  CHECK(max_time_step(1.0) == doctest::Approx(1e-3));
  CHECK(max_time_step(8.0) == doctest::Approx(0.5e-3));
  CHECK(record_stride(1e-4, 0.01) == 100);
  CHECK(record_stride(1e-3, 1e-3) == 1);
}

TEST_CASE("bad time steps are rejected") {
  const OrbitalSet s = stationary_states(build_grid(8, 64), {2, 1.0, 0.0}, 1);
  CHECK_THROWS_AS(evolve(s, RampSchedule::linear(1, 2, 1), 2, 0.0, 1), Error);
  CHECK_THROWS_AS(evolve(s, RampSchedule::linear(1, 2, 1), 2, 1e-3, 0), Error);
}
