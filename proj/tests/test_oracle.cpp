#include <doctest.h>

#include <cmath>

#include "tgqsl/error.hpp"
#include "tgqsl/manybody.hpp"
#include "tgqsl/oracle.hpp"
#include "tgqsl/spectral.hpp"

using namespace tgqsl;

// Full tensors are M^N, so these run on coarse grids.
namespace {

const Grid kGrid = build_grid(6, 48);

OrbitalSet ground(int q, double lambda, int n) { return stationary_states(kGrid, {q, lambda, 0.0}, n); }

}  // namespace

TEST_CASE("full states are normalized and carry the right exchange symmetry") {
  for (int n : {2, 3}) {
    const OrbitalSet a = ground(2, 1.0, n);
    for (Statistics s : {Statistics::fermi, Statistics::tg}) {
      const auto psi = oracle::build_full_state(a, s);
      CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-10));
      CHECK(psi.exchange_error() < 1e-12);
    }
  }
  CHECK_THROWS_AS(oracle::build_full_state(ground(2, 1.0, 4), Statistics::fermi), Error);
}

TEST_CASE("Fermi kernel matches brute-force integration") {
  for (int n : {2, 3}) {
    const OrbitalSet a = ground(2, 1.0, n);
    const Rspdm brute = oracle::brute_rspdm(oracle::build_full_state(a, Statistics::fermi));
    CHECK((brute.kernel - fermi_rspdm(a).kernel).cwiseAbs().maxCoeff() < 1e-8);
  }
}

TEST_CASE("TG kernel matches brute-force integration") {
  for (int q : {1, 2})
    for (int n : {2, 3}) {
      const OrbitalSet a = ground(q, 1.0, n);
      const Rspdm brute = oracle::brute_rspdm(oracle::build_full_state(a, Statistics::tg));
      CHECK((brute.kernel - tg_rspdm(a).kernel).cwiseAbs().maxCoeff() < 1e-6);
    }
}

TEST_CASE("TG kernel of an evolved, complex state matches brute force") {
  const OrbitalSet a = ground(2, 1.0, 3);
  MatrixXcd amps = a.amplitudes();
  for (int i = 0; i < kGrid.size(); ++i) amps.row(i) *= std::exp(cplx(0, 0.3 * kGrid.x(i) * kGrid.x(i)));
  const OrbitalSet chirped(kGrid, amps);
  const Rspdm brute = oracle::brute_rspdm(oracle::build_full_state(chirped, Statistics::tg));
  CHECK((brute.kernel - tg_rspdm(chirped).kernel).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("density is the kernel diagonal of the full state") {
  const OrbitalSet a = ground(2, 1.0, 3);
  const Rspdm brute = oracle::brute_rspdm(oracle::build_full_state(a, Statistics::tg));
  CHECK((brute.kernel.diagonal().real() - density(a)).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("determinant fidelity matches the full overlap") {
  const OrbitalSet a = ground(2, 1.0, 2), b = ground(2, 8.0, 2);
  const auto fa = oracle::build_full_state(a, Statistics::fermi), fb = oracle::build_full_state(b, Statistics::fermi);
  const auto ta = oracle::build_full_state(a, Statistics::tg), tb = oracle::build_full_state(b, Statistics::tg);
  CHECK(oracle::brute_fidelity(fa, fa) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(oracle::brute_fidelity(fa, fb) - many_body_fidelity(a, b)) < 1e-8);
  CHECK(std::abs(oracle::brute_fidelity(ta, tb) - oracle::brute_fidelity(fa, fb)) < 1e-12);
}

TEST_CASE("overlap matrix matches direct quadrature") {
  const OrbitalSet a = ground(2, 1.0, 2), b = ground(2, 8.0, 2);
  const MatrixXcd p = overlap_matrix(a, b);
  for (int m = 0; m < 2; ++m)
    for (int n = 0; n < 2; ++n) {
      cplx s = 0;
      for (int i = 0; i < kGrid.size(); ++i) s += std::conj(a.amplitudes()(i, m)) * b.amplitudes()(i, n);
      CHECK(std::abs(p(m, n) - s * kGrid.dx()) < 1e-12);
    }
}

TEST_CASE("Slater energy statistics match the full Hamiltonian") {
  const OrbitalSet a = ground(2, 1.0, 2);
  const PotentialSpec after{2, 8.0, 0.0};
  const EnergyStats fast = slater_energy_stats(a, after);
  const EnergyStats brute = oracle::brute_energy_stats(oracle::build_full_state(a, Statistics::fermi), after);
  CHECK(std::abs(fast.mean - brute.mean) < 1e-8);
  CHECK(std::abs(fast.std - brute.std) < 1e-8);
  CHECK(fast.std > 0.1);

  const OrbitalSet three = ground(2, 1.0, 3);
  const EnergyStats f3 = slater_energy_stats(three, after);
  const EnergyStats b3 = oracle::brute_energy_stats(oracle::build_full_state(three, Statistics::fermi), after);
  CHECK(std::abs(f3.mean - b3.mean) < 1e-8);
  CHECK(std::abs(f3.std - b3.std) < 1e-8);
}

TEST_CASE("plane-wave Hamiltonian equals the FFT Hamiltonian") {
  const PotentialSpec pot{2, 3.0, 0.0};
  const MatrixXcd pw = oracle::plane_wave_hamiltonian(kGrid, pot);
  const MatrixXd fft = SingleParticleHamiltonian(kGrid, pot).dense();
  CHECK((pw - fft.cast<cplx>()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("reference integrator keeps a stationary state up to its phase") {
  const OrbitalSet a = ground(2, 1.0, 1);
  const double t = 0.5;
  const OrbitalSet out = oracle::reference_integrator(a, RampSchedule::linear(1, 1, t), 2, 1e-3);
  const VectorXcd expect = a.amplitudes().col(0) * std::exp(cplx(0, -a.energies()[0] * t));
  CHECK((out.amplitudes().col(0) - expect).cwiseAbs().maxCoeff() < 1e-5);
}
