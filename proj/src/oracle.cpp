#include "tgqsl/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "tgqsl/error.hpp"

namespace tgqsl::oracle {

namespace {

using RowMatrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Index power(Eigen::Index m, int n) {
  Eigen::Index r = 1;
  for (int k = 0; k < n; ++k) r *= m;
  return r;
}

double sign(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

/// Applies `op` (M x M) along coordinate `axis` of an N-index tensor.
VectorXcd apply_along(const MatrixXcd& op, const VectorXcd& t, Eigen::Index m, int particles, int axis) {
  const Eigen::Index outer = power(m, axis);
  const Eigen::Index inner = power(m, particles - axis - 1);
  VectorXcd out = VectorXcd::Zero(t.size());
  for (Eigen::Index o = 0; o < outer; ++o) {
    // Block for fixed leading indices: M rows of `inner` contiguous entries.
    Eigen::Map<const RowMatrix> in_block(t.data() + o * m * inner, m, inner);
    Eigen::Map<RowMatrix> out_block(out.data() + o * m * inner, m, inner);
    out_block.noalias() = op * in_block;
  }
  return out;
}

}  // namespace

double FullWavefunction::norm() const { return values.squaredNorm() * std::pow(grid.dx(), particles); }

double FullWavefunction::exchange_error() const {
  const int m = grid.size();
  const double s = statistics == Statistics::fermi ? -1.0 : 1.0;
  double worst = 0.0;
  if (particles == 2) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) worst = std::max(worst, std::abs(at(i, j) - s * at(j, i)));
  } else {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const cplx v = at(i, j, k);
          worst = std::max({worst, std::abs(v - s * at(j, i, k)), std::abs(v - s * at(i, k, j)),
                            std::abs(v - s * at(k, j, i))});
        }
  }
  return worst;
}

FullWavefunction build_full_state(const OrbitalSet& orbs, Statistics statistics) {
  const int n = orbs.count();
  require(n == 2 || n == 3, ErrorKind::invalid_argument, "full tensors are only built for 2 or 3 particles");
  const int m = orbs.grid().size();
  const MatrixXcd& p = orbs.amplitudes();
  FullWavefunction f;
  f.grid = orbs.grid();
  f.particles = n;
  f.statistics = statistics;
  f.values.resize(power(m, n));
  const bool tg = statistics == Statistics::tg;
  if (n == 2) {
    const double c = 1.0 / std::sqrt(2.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) {
        cplx v = c * (p(i, 0) * p(j, 1) - p(i, 1) * p(j, 0));
        if (tg) v *= sign(f.grid.x(j) - f.grid.x(i));
        f.values[static_cast<Eigen::Index>(i) * m + j] = v;
      }
  } else {
    const double c = 1.0 / std::sqrt(6.0);
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          // Explicit 3x3 determinant over (orbital, coordinate).
          cplx v = p(i, 0) * (p(j, 1) * p(k, 2) - p(j, 2) * p(k, 1)) - p(i, 1) * (p(j, 0) * p(k, 2) - p(j, 2) * p(k, 0)) +
                   p(i, 2) * (p(j, 0) * p(k, 1) - p(j, 1) * p(k, 0));
          v *= c;
          if (tg) {
            const double xi = f.grid.x(i), xj = f.grid.x(j), xk = f.grid.x(k);
            v *= sign(xj - xi) * sign(xk - xi) * sign(xk - xj);
          }
          f.values[(static_cast<Eigen::Index>(i) * m + j) * m + k] = v;
        }
  }
  return f;
}

Rspdm brute_rspdm(const FullWavefunction& psi) {
  const Eigen::Index m = psi.grid.size();
  const Eigen::Index rest = power(m, psi.particles - 1);
  Eigen::Map<const RowMatrix> t(psi.values.data(), m, rest);
  Rspdm r;
  r.grid = psi.grid;
  r.statistics = psi.statistics;
  r.particles = psi.particles;
  r.kernel = (t * t.adjoint()) * (psi.particles * std::pow(psi.grid.dx(), psi.particles - 1));
  return r;
}

double brute_fidelity(const FullWavefunction& a, const FullWavefunction& b) {
  require(a.grid == b.grid && a.particles == b.particles && a.statistics == b.statistics,
          ErrorKind::invalid_argument, "fidelity between incompatible tensors");
  return std::norm(a.values.dot(b.values) * std::pow(a.grid.dx(), a.particles));
}

MatrixXcd plane_wave_hamiltonian(const Grid& grid, const PotentialSpec& pot) {
  const int m = grid.size();
  const double len = m * grid.dx();
  // Plane waves exp(i k x) with k = 2 pi j / L, j = -m/2 .. (m-1)/2 .. so that
  // the set matches the grid's alias classes.
  std::vector<double> ks;
  for (int j = -m / 2; j < m - m / 2; ++j) ks.push_back(2.0 * std::numbers::pi * j / len);
  MatrixXcd h = MatrixXcd::Zero(m, m);
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      cplx s = 0.0;
      const double d = grid.x(a) - grid.x(b);
      for (double k : ks) s += 0.5 * k * k * std::exp(cplx(0.0, k * d));
      h(a, b) = s / static_cast<double>(m);
    }
  for (int a = 0; a < m; ++a) {
    const double y = grid.x(a) - pot.x0;
    h(a, a) += 0.5 * pot.lambda * std::pow(y, 2 * pot.q);
  }
  return h;
}

EnergyStats brute_energy_stats(const FullWavefunction& psi, const PotentialSpec& pot) {
  const MatrixXcd h = plane_wave_hamiltonian(psi.grid, pot);
  const Eigen::Index m = psi.grid.size();
  auto apply_total = [&](const VectorXcd& v) {
    VectorXcd out = VectorXcd::Zero(v.size());
    for (int axis = 0; axis < psi.particles; ++axis) out += apply_along(h, v, m, psi.particles, axis);
    return out;
  };
  const double w = std::pow(psi.grid.dx(), psi.particles);
  const VectorXcd h1 = apply_total(psi.values);
  const VectorXcd h2 = apply_total(h1);
  const double mean = psi.values.dot(h1).real() * w;
  const double second = psi.values.dot(h2).real() * w;
  return {mean, std::sqrt(std::max(0.0, second - mean * mean))};
}

namespace {

MatrixXcd crank_nicolson(const OrbitalSet& orbs, const RampSchedule& ramp, int q, double dt) {
  const Grid& grid = orbs.grid();
  const int m = grid.size();
  const double t_f = ramp.duration();
  const long steps = std::max(1L, static_cast<long>(std::ceil(t_f / dt - 1e-9)));
  const double h = t_f / steps;
  const MatrixXcd kinetic = plane_wave_hamiltonian(grid, PotentialSpec{q, 0.0, 0.0});
  VectorXd shape(m);
  for (int i = 0; i < m; ++i) shape[i] = 0.5 * std::pow(grid.x(i), 2 * q);

  MatrixXcd psi = orbs.amplitudes();
  const VectorXd norm0 = psi.colwise().squaredNorm().transpose();
  const bool fixed = ramp.kind() == RampSchedule::Kind::constant;
  Eigen::PartialPivLU<MatrixXcd> lhs;
  MatrixXcd rhs_op;
  double last_lambda = std::numeric_limits<double>::quiet_NaN();
  const cplx half(0.0, 0.5 * h);
  for (long s = 0; s < steps; ++s) {
    const double lam = ramp((s + 0.5) * h);
    if (!(fixed && lam == last_lambda)) {
      MatrixXcd hm = kinetic;
      hm.diagonal() += (lam * shape).cast<cplx>();
      MatrixXcd a = MatrixXcd::Identity(m, m) + half * hm;
      rhs_op = MatrixXcd::Identity(m, m) - half * hm;
      lhs.compute(a);
      last_lambda = lam;
    }
    psi = lhs.solve(rhs_op * psi);
  }
  const VectorXd norm1 = psi.colwise().squaredNorm().transpose();
  const double drift = ((norm1 - norm0).cwiseAbs().array() / norm0.array()).maxCoeff();
  if (!std::isfinite(drift) || drift > 1e-8) {
    std::ostringstream msg;
    msg << "Crank-Nicolson norm drift " << drift;
    fail(ErrorKind::oracle_failure, msg.str());
  }
  return psi;
}

}  // namespace

OrbitalSet reference_integrator(const OrbitalSet& orbs, const RampSchedule& ramp, int q, double dt) {
  require(dt > 0.0, ErrorKind::invalid_argument, "time step must be positive");
  // Richardson combination of steps h and h/2 cancels the h^2 error term.
  const MatrixXcd coarse = crank_nicolson(orbs, ramp, q, dt);
  const MatrixXcd fine = crank_nicolson(orbs, ramp, q, 0.5 * dt);
  return OrbitalSet(orbs.grid(), (4.0 * fine - coarse) / 3.0);
}

}  // namespace tgqsl::oracle
