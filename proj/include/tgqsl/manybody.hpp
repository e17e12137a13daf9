#pragma once

// Many-body quantities of the Fermi sea and its Bose-Fermi mapped
// Tonks-Girardeau counterpart, built from the shared single-particle orbitals.

#include "tgqsl/spectral.hpp"

namespace tgqsl {

/// P_ij = <a_i|b_j> (Riemann sum with dx weight).
MatrixXcd overlap_matrix(const OrbitalSet& a, const OrbitalSet& b);

/// |det P|^2. Identical for the Fermi and TG gases.
double many_body_fidelity(const OrbitalSet& a, const OrbitalSet& b);

/// Reduced single-particle density matrix rho(x_i, x_j) sampled on the grid.
/// Normalized so that sum_i rho(x_i, x_i) dx = N.
struct Rspdm {
  Grid grid;
  MatrixXcd kernel;
  Statistics statistics = Statistics::fermi;
  int particles = 0;

  double trace() const { return kernel.diagonal().real().sum() * grid.dx(); }
  double hermiticity_error() const { return (kernel - kernel.adjoint()).cwiseAbs().maxCoeff(); }
};

Rspdm fermi_rspdm(const OrbitalSet& orbs);

/// Kernel of the hard-core boson gas. Each row x_i sweeps x_j >= x_i while
/// accumulating P(x_i, x_j) = 1 - 2 int_{x_i}^{x_j} psi psi^* by the trapezoid
/// rule; rho(x_i, x_j) = psi(x_j)^dagger adj(P) psi(x_i). The lower triangle
/// follows from Hermiticity. Rows run in parallel.
Rspdm tg_rspdm(const OrbitalSet& orbs);

Rspdm rspdm(const OrbitalSet& orbs, Statistics statistics);

/// Eigen-decomposition of the kernel operator rho*dx.
struct CoherenceSpectrum {
  VectorXd occupations;        ///< descending
  MatrixXcd natural_orbitals;  ///< columns, sum |phi|^2 dx = 1
  Grid grid;
};

CoherenceSpectrum coherence_spectrum(const Rspdm& rho);

/// Occupations only (descending); cheaper than the full spectrum.
VectorXd occupation_numbers(const Rspdm& rho);

/// n(x) = sum_n |psi_n(x)|^2.
VectorXd density(const OrbitalSet& orbs);

/// Throws invalid_state unless the Gram matrix is the identity within `tol`.
void require_orthonormal(const OrbitalSet& orbs, double tol = 1e-6);

namespace detail {

/// y^dagger adj(Q) x for a Hermitian Q (column-major, n*n). Solves by LU with
/// partial pivoting, det(Q) Q^{-1} x, and switches to the eigen-decomposition
/// adj(Q) = U diag(prod_{l!=k} mu_l) U^dagger when a pivot vanishes.
cplx adjugate_form(const MatrixXcd& q, const VectorXcd& x, const VectorXcd& y);

}  // namespace detail

}  // namespace tgqsl
