#include "tgqsl/manybody.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "tgqsl/error.hpp"

namespace tgqsl {

void require_orthonormal(const OrbitalSet& orbs, double tol) {
  const double err = orbs.orthonormality_error();
  if (!(err < tol)) {
    std::ostringstream msg;
    msg << "orbital set is not orthonormal (Gram deviation " << err << ")";
    fail(ErrorKind::invalid_state, msg.str());
  }
}

MatrixXcd overlap_matrix(const OrbitalSet& a, const OrbitalSet& b) {
  require(a.grid() == b.grid(), ErrorKind::invalid_argument, "overlap of orbital sets on different grids");
  require(a.count() == b.count(), ErrorKind::invalid_argument, "overlap of orbital sets of different size");
  return (a.amplitudes().adjoint() * b.amplitudes()) * a.grid().dx();
}

double many_body_fidelity(const OrbitalSet& a, const OrbitalSet& b) {
  const MatrixXcd p = overlap_matrix(a, b);
  if (p.size() == 0) return 1.0;
  return std::norm(p.partialPivLu().determinant());
}

VectorXd density(const OrbitalSet& orbs) {
  require_orthonormal(orbs);
  return orbs.amplitudes().cwiseAbs2().rowwise().sum();
}

Rspdm fermi_rspdm(const OrbitalSet& orbs) {
  require_orthonormal(orbs);
  Rspdm r;
  r.grid = orbs.grid();
  r.kernel = orbs.amplitudes() * orbs.amplitudes().adjoint();
  r.statistics = Statistics::fermi;
  r.particles = orbs.count();
  return r;
}

// ---------------------------------------------------------------- TG kernel

namespace {

/// Scratch space for y^dagger adj(Q) x; one per thread.
class AdjugateSolver {
 public:
  explicit AdjugateSolver(int n) : n_(n), lu_(static_cast<std::size_t>(n) * n), rhs_(n), herm_(n, n), xv_(n), yv_(n) {}

  /// `q` is row-major n*n Hermitian; `x`, `y` are length-n.
  cplx operator()(const cplx* q, const cplx* x, const cplx* y) {
    const int n = n_;
    std::copy(q, q + static_cast<std::ptrdiff_t>(n) * n, lu_.begin());
    std::copy(x, x + n, rhs_.begin());
    cplx det = 1.0;
    double pmax = 0.0;
    double pmin = std::numeric_limits<double>::infinity();
    for (int k = 0; k < n; ++k) {
      int p = k;
      double best = std::abs(lu_[k * n + k]);
      for (int r = k + 1; r < n; ++r) {
        const double v = std::abs(lu_[r * n + k]);
        if (v > best) {
          best = v;
          p = r;
        }
      }
      if (p != k) {
        std::swap_ranges(lu_.begin() + k * n, lu_.begin() + (k + 1) * n, lu_.begin() + p * n);
        std::swap(rhs_[k], rhs_[p]);
        det = -det;
      }
      pmax = std::max(pmax, best);
      pmin = std::min(pmin, best);
      const cplx piv = lu_[k * n + k];
      det *= piv;
      if (best == 0.0) break;
      const cplx inv = 1.0 / piv;
      for (int r = k + 1; r < n; ++r) {
        const cplx l = lu_[r * n + k] * inv;
        if (l == cplx(0.0)) continue;
        cplx* row = &lu_[r * n];
        const cplx* top = &lu_[k * n];
        for (int c = k + 1; c < n; ++c) row[c] -= l * top[c];
        rhs_[r] -= l * rhs_[k];
      }
    }
    if (!(pmin > 1e-13 * pmax)) return eigen_fallback(q, x, y);

    for (int k = n - 1; k >= 0; --k) {
      cplx s = rhs_[k];
      const cplx* row = &lu_[k * n];
      for (int c = k + 1; c < n; ++c) s -= row[c] * rhs_[c];
      rhs_[k] = s / row[k];
    }
    cplx acc = 0.0;
    for (int b = 0; b < n; ++b) acc += std::conj(y[b]) * rhs_[b];
    return det * acc;
  }

 private:
  cplx eigen_fallback(const cplx* q, const cplx* x, const cplx* y) {
    const int n = n_;
    for (int r = 0; r < n; ++r) {
      for (int c = 0; c < n; ++c) herm_(r, c) = q[r * n + c];
      xv_[r] = x[r];
      yv_[r] = y[r];
    }
    eig_.compute(herm_);
    const VectorXd& mu = eig_.eigenvalues();
    const MatrixXcd& u = eig_.eigenvectors();
    cplx acc = 0.0;
    for (int k = 0; k < n; ++k) {
      double cof = 1.0;
      for (int l = 0; l < n; ++l)
        if (l != k) cof *= mu[l];
      if (cof == 0.0) continue;
      acc += cof * yv_.dot(u.col(k)) * u.col(k).dot(xv_);
    }
    return acc;
  }

  int n_;
  std::vector<cplx> lu_;
  std::vector<cplx> rhs_;
  MatrixXcd herm_;
  VectorXcd xv_, yv_;
  Eigen::SelfAdjointEigenSolver<MatrixXcd> eig_;
};

}  // namespace

namespace detail {

cplx adjugate_form(const MatrixXcd& q, const VectorXcd& x, const VectorXcd& y) {
  const int n = static_cast<int>(q.rows());
  require(q.cols() == n && x.size() == n && y.size() == n, ErrorKind::invalid_argument, "adjugate size mismatch");
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = q;
  AdjugateSolver solver(n);
  return solver(rm.data(), x.data(), y.data());
}

}  // namespace detail

Rspdm tg_rspdm(const OrbitalSet& orbs) {
  require_orthonormal(orbs);
  require(orbs.count() >= 1, ErrorKind::invalid_argument, "TG kernel needs at least one particle");
  const int m = orbs.grid().size();
  const int n = orbs.count();
  const double dx = orbs.grid().dx();

  // Row-major copy: samples(i, a) = psi_a(x_i).
  const Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> samples = orbs.amplitudes();

  Rspdm r;
  r.grid = orbs.grid();
  r.statistics = Statistics::tg;
  r.particles = n;
  r.kernel.resize(m, m);
  bool bad = false;

#pragma omp parallel
  {
    AdjugateSolver solver(n);
    std::vector<cplx> q(static_cast<std::size_t>(n) * n);
#pragma omp for schedule(dynamic, 4)
    for (int i = 0; i < m; ++i) {
      const cplx* xi = samples.row(i).data();
      std::fill(q.begin(), q.end(), cplx(0.0));
      double diag = 0.0;
      for (int a = 0; a < n; ++a) {
        q[a * n + a] = 1.0;
        diag += std::norm(xi[a]);
      }
      r.kernel(i, i) = diag;
      for (int j = i + 1; j < m; ++j) {
        const cplx* u = samples.row(j - 1).data();
        const cplx* v = samples.row(j).data();
        for (int a = 0; a < n; ++a) {
          const cplx ua = dx * u[a];
          const cplx va = dx * v[a];
          cplx* qa = &q[a * n];
          for (int b = 0; b < n; ++b) qa[b] -= ua * std::conj(u[b]) + va * std::conj(v[b]);
        }
        const cplx val = solver(q.data(), xi, v);
        if (!std::isfinite(val.real()) || !std::isfinite(val.imag())) bad = true;
        r.kernel(i, j) = val;
        r.kernel(j, i) = std::conj(val);
      }
    }
  }
  require(!bad, ErrorKind::invalid_state, "non-finite value in TG kernel");
  return r;
}

Rspdm rspdm(const OrbitalSet& orbs, Statistics statistics) {
  return statistics == Statistics::fermi ? fermi_rspdm(orbs) : tg_rspdm(orbs);
}

// ---------------------------------------------------------------- spectra

namespace {
void require_hermitian(const Rspdm& rho) {
  const double err = rho.hermiticity_error();
  if (!(err < 1e-8)) {
    std::ostringstream msg;
    msg << "RSPDM kernel is not Hermitian (deviation " << err << ")";
    fail(ErrorKind::invalid_state, msg.str());
  }
}
}  // namespace

CoherenceSpectrum coherence_spectrum(const Rspdm& rho) {
  require_hermitian(rho);
  const double dx = rho.grid.dx();
  const Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(rho.kernel * dx);
  require(solver.info() == Eigen::Success, ErrorKind::invalid_state, "eigensolver failed");
  CoherenceSpectrum s;
  s.grid = rho.grid;
  s.occupations = solver.eigenvalues().reverse();
  s.natural_orbitals = solver.eigenvectors().rowwise().reverse() / std::sqrt(dx);
  return s;
}

VectorXd occupation_numbers(const Rspdm& rho) {
  require_hermitian(rho);
  const Eigen::SelfAdjointEigenSolver<MatrixXcd> solver(rho.kernel * rho.grid.dx(), Eigen::EigenvaluesOnly);
  require(solver.info() == Eigen::Success, ErrorKind::invalid_state, "eigensolver failed");
  return solver.eigenvalues().reverse();
}

}  // namespace tgqsl
