#include <doctest.h>

#include <cmath>
#include <random>

#include "tgqsl/error.hpp"
#include "tgqsl/manybody.hpp"
#include "tgqsl/metrics.hpp"
#include "tgqsl/propagate.hpp"
#include "tgqsl/spectral.hpp"

using namespace tgqsl;

namespace {

const Grid kGrid = build_grid(8, 128);

OrbitalSet ground(double lambda, int n, int q = 2) { return stationary_states(kGrid, {q, lambda, 0.0}, n); }

MatrixXcd random_hermitian(int m, unsigned seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> g;
  MatrixXcd a(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) a(i, j) = cplx(g(rng), g(rng));
  return (a + a.adjoint()) / 2.0;
}

Trajectory quench(int n, double lambda_f, double t_f, double record_dt) {
  const OrbitalSet s = ground(1.0, n);
  const double dt = 1e-4;
  return evolve(s, RampSchedule::constant(1.0, lambda_f, t_f), 2, dt, record_stride(dt, record_dt));
}

}  // namespace

TEST_CASE("Schatten norms") {
  CHECK(schatten_norm(MatrixXcd::Zero(10, 10), 0.1, 1.0) == 0.0);
  CHECK(schatten_norm(fermi_rspdm(ground(1.0, 4)).kernel, kGrid.dx(), 1.0) == doctest::Approx(4.0).epsilon(1e-6));

  const MatrixXcd h = random_hermitian(40, 7);
  CHECK(std::abs(schatten_norm(h, 0.25, 2.0) - (h * 0.25).norm()) < 1e-10);

  MatrixXcd g = random_hermitian(30, 8);
  g(0, 1) += 1.0;  // not Hermitian: general SVD path
  const Eigen::JacobiSVD<MatrixXcd> svd(g);
  CHECK(std::abs(schatten_norm(g, 1.0, 1.0) - svd.singularValues().sum()) < 1e-10);
  CHECK(std::abs(schatten_norm(g, 1.0, 3.0) - std::cbrt(svd.singularValues().array().cube().sum())) < 1e-9);

  CHECK_THROWS_AS(schatten_norm(h, 1.0, 0.5), Error);
}

TEST_CASE("low-rank trace norm equals the dense value") {
  std::mt19937 rng(3);
  std::normal_distribution<double> g;
  MatrixXcd l(50, 4), r(50, 4);
  for (int i = 0; i < 50; ++i)
    for (int j = 0; j < 4; ++j) l(i, j) = cplx(g(rng), g(rng)), r(i, j) = cplx(g(rng), g(rng));
  const MatrixXcd dense = l * r.adjoint();
  CHECK(low_rank_trace_norm(l, r) == doctest::Approx(schatten_norm(dense, 1.0, 1.0)).epsilon(1e-10));
}

TEST_CASE("trace distances") {
  const Rspdm a = fermi_rspdm(ground(1.0, 3));
  CHECK(trace_distance(a, a) < 1e-12);
  const OrbitalSet x = ground(1.0, 3), y = ground(4.0, 3);
  const double dense = trace_distance(fermi_rspdm(x), fermi_rspdm(y));
  CHECK(dense > 0.1);
  CHECK(dense <= 3.0);
  CHECK(fermi_trace_distance(x, y) == doctest::Approx(dense).epsilon(1e-9));
  CHECK(trace_distance(tg_rspdm(x), tg_rspdm(y)) > 0.1);

  const Rspdm other = fermi_rspdm(stationary_states(build_grid(8, 64), {2, 1.0, 0.0}, 3));
  CHECK_THROWS_AS(trace_distance(a, other), Error);
}

TEST_CASE("stationary trajectories have zero speed") {
  const OrbitalSet s = ground(1.0, 3);
  const Trajectory traj = evolve(s, RampSchedule::linear(1, 1, 0.5), 2, 1e-3, 50);
  for (Statistics st : {Statistics::fermi, Statistics::tg}) {
    const SpeedSeries v = average_speed(traj, st);
    CHECK(v.average < 1e-4);
    const SpeedPoint end = instantaneous_speed(traj, st, 0);
    CHECK(end.reduced_order);
    CHECK(end.value < 1e-4);
    CHECK_FALSE(instantaneous_speed(traj, st, 5).reduced_order);
  }
  CHECK_THROWS_AS(average_speed(evolve(s, RampSchedule::linear(1, 1, 0.002), 2, 1e-3, 2), Statistics::fermi),
                  Error);
}

TEST_CASE("Fermi quench speed is constant and agrees with the commutator") {
  const Trajectory traj = quench(3, 2.0, 1.0, 0.01);
  const SpeedSeries v = average_speed(traj, Statistics::fermi);
  const double exact = fermi_commutator_speed(traj.front(), {2, 2.0, 0.0});
  for (std::size_t k = 1; k + 1 < v.speed.size(); ++k) CHECK(v.speed[k] == doctest::Approx(v.speed[1]).epsilon(1e-3));
  CHECK(v.speed[1] == doctest::Approx(exact).epsilon(0.01));
  CHECK(v.average == doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("visitor sees every kernel in order") {
  const Trajectory traj = quench(2, 2.0, 0.1, 0.02);
  std::vector<std::size_t> seen;
  average_speed(traj, Statistics::tg, [&](std::size_t k, const Rspdm& rho) {
    seen.push_back(k);
    CHECK(rho.trace() == doctest::Approx(2.0).epsilon(1e-8));
  });
  REQUIRE(seen.size() == traj.size());
  for (std::size_t k = 0; k < seen.size(); ++k) CHECK(seen[k] == k);
}

TEST_CASE("QSL report for a trivial run is all zeros") {
  const OrbitalSet s = ground(1.0, 2);
  const Trajectory traj = evolve(s, RampSchedule::linear(1, 1, 0.1), 2, 1e-3, 10);
  for (Statistics st : {Statistics::fermi, Statistics::tg}) {
    const QslReport r = qsl_report(s, s, {2, 1.0, 0.0}, traj, st);
    CHECK(r.fidelity == doctest::Approx(1.0));
    CHECK(r.mt_bound < 1e-6);
    CHECK(r.unified_bound < 1e-6);
    CHECK(r.trace_distance < 1e-10);
    CHECK(r.geometric_bound < 1e-4);
  }
}

TEST_CASE("quench bounds stay below the elapsed time") {
  const Trajectory traj = quench(3, 8.0, 0.5, 0.005);
  for (Statistics st : {Statistics::fermi, Statistics::tg}) {
    const QslReport r = qsl_report(traj.front(), traj.back(), {2, 1.0, 0.0}, traj, st);
    CHECK_FALSE(r.driven);
    REQUIRE(r.ml_bound.has_value());
    CHECK(r.unified_bound == doctest::Approx(std::max(r.mt_bound, *r.ml_bound)));
    CHECK(r.mt_bound == doctest::Approx(r.bures_angle / r.delta_h));
    CHECK(r.unified_bound <= 0.5);
    CHECK(r.geometric_bound <= 0.5);
    CHECK(r.geometric_bound > 0.0);
    CHECK(r.mean_energy > 0.0);
  }
}

TEST_CASE("driven ramps report the time-averaged spread and no ML bound") {
  const OrbitalSet s = ground(1.0, 2);
  const Trajectory traj = evolve(s, RampSchedule::linear(1, 4, 0.5), 2, 1e-4, 100);
  const QslReport r = qsl_report(s, traj.back(), {2, 1.0, 0.0}, traj, Statistics::fermi);
  CHECK(r.driven);
  CHECK_FALSE(r.ml_bound.has_value());
  CHECK(r.unified_bound == doctest::Approx(r.mt_bound));
  CHECK(r.unified_bound <= 0.5);
  CHECK(r.geometric_bound <= 0.5);
}

TEST_CASE("spectral decomposition reproduces the direct trace distance") {
  const OrbitalSet target = ground(8.0, 3);
  const Trajectory traj = quench(3, 8.0, 0.3, 0.1);
  for (Statistics st : {Statistics::fermi, Statistics::tg}) {
    const Rspdm a = rspdm(traj.back(), st), b = rspdm(target, st);
    const CoherenceSpectrum fa = coherence_spectrum(a), fb = coherence_spectrum(b);
    const TraceDistanceParts parts = trace_distance_decomposed(fa, fb, natural_orbital_overlaps(fb, fa));
    CHECK(std::abs(parts.full - trace_distance(a, b)) < 1e-6);

    const TraceDistanceParts same = trace_distance_decomposed(fb, fb, natural_orbital_overlaps(fb, fb));
    CHECK(same.full < 1e-8);
    CHECK(same.tg_approx < 1e-6);
    CHECK(same.fermi_approx < 1e-6);
  }
}

TEST_CASE("decomposition rejects spectra with the wrong particle number") {
  const CoherenceSpectrum s = coherence_spectrum(fermi_rspdm(ground(1.0, 2)));
  CoherenceSpectrum bad = s;
  bad.occupations[0] = 1.01;
  CHECK_THROWS_AS(trace_distance_decomposed(bad, s, natural_orbital_overlaps(s, bad)), Error);
}
