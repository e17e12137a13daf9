#include "tgqsl/spectral.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "tgqsl/error.hpp"

namespace tgqsl {

// ---------------------------------------------------------------- Grid

Grid::Grid(double x_min, double x_max, int n_points) : x_min_(x_min), x_max_(x_max), n_(n_points) {
  require(n_points >= 2, ErrorKind::invalid_argument, "grid needs at least 2 points");
  require(x_max > x_min, ErrorKind::invalid_argument, "grid extent must be positive");
  dx_ = (x_max - x_min) / (n_points - 1);
}

VectorXd Grid::points() const {
  VectorXd x(n_);
  for (int i = 0; i < n_; ++i) x[i] = this->x(i);
  return x;
}

VectorXd Grid::wavenumbers() const {
  VectorXd k(n_);
  const double dk = 2.0 * std::numbers::pi / period();
  for (int i = 0; i < n_; ++i) k[i] = dk * (i <= n_ / 2 ? i : i - n_);
  return k;
}

Grid build_grid(double half_width, int n_points) {
  require(half_width > 0.0 && std::isfinite(half_width), ErrorKind::invalid_argument,
          "grid half-width must be positive");
  require(n_points >= 2, ErrorKind::invalid_argument, "grid needs at least 2 points");
  return Grid(-half_width, half_width, n_points);
}

// ---------------------------------------------------------------- PotentialSpec

void PotentialSpec::validate() const {
  require(q >= 1, ErrorKind::invalid_argument, "power-law exponent q must be >= 1");
  require(lambda > 0.0 && std::isfinite(lambda), ErrorKind::invalid_argument, "trap strength must be positive");
}

double PotentialSpec::operator()(double x) const noexcept {
  const double d2 = (x - x0) * (x - x0);
  double p = 1.0;
  for (int i = 0; i < q; ++i) p *= d2;
  return 0.5 * lambda * p;
}

// ---------------------------------------------------------------- OrbitalSet

OrbitalSet::OrbitalSet(Grid grid, MatrixXcd amplitudes, VectorXd energies)
    : grid_(std::move(grid)), amps_(std::move(amplitudes)), energies_(std::move(energies)) {
  require(amps_.rows() == grid_.size(), ErrorKind::invalid_argument, "orbital length does not match grid");
  require(energies_.size() == 0 || energies_.size() == amps_.cols(), ErrorKind::invalid_argument,
          "energy count does not match orbital count");
}

OrbitalSet OrbitalSet::head(int n) const {
  require(n >= 0 && n <= count(), ErrorKind::invalid_argument, "requested more orbitals than available");
  return OrbitalSet(grid_, amps_.leftCols(n), has_energies() ? VectorXd(energies_.head(n)) : VectorXd());
}

MatrixXcd OrbitalSet::gram() const { return (amps_.adjoint() * amps_) * grid_.dx(); }

double OrbitalSet::orthonormality_error() const {
  if (count() == 0) return 0.0;
  return (gram() - MatrixXcd::Identity(count(), count())).cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------- FftPlan

namespace {
std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}
}  // namespace

FftPlan::FftPlan(int n) : n_(n) {
  require(n > 0, ErrorKind::invalid_argument, "FFT length must be positive");
  std::lock_guard lock(fftw_planner_mutex());
  auto* buf = fftw_alloc_complex(static_cast<size_t>(n));
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
  forward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_FORWARD, flags);
  backward_ = fftw_plan_dft_1d(n, buf, buf, FFTW_BACKWARD, flags);
  fftw_free(buf);
}

FftPlan::~FftPlan() {
  std::lock_guard lock(fftw_planner_mutex());
  fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  fftw_destroy_plan(static_cast<fftw_plan>(backward_));
}

void FftPlan::forward(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(forward_), p, p);
}

void FftPlan::backward(cplx* data) const {
  auto* p = reinterpret_cast<fftw_complex*>(data);
  fftw_execute_dft(static_cast<fftw_plan>(backward_), p, p);
}

// ---------------------------------------------------------------- Hamiltonian

SingleParticleHamiltonian::SingleParticleHamiltonian(const Grid& grid, const PotentialSpec& pot)
    : grid_(grid), pot_(pot), v_(grid.size()), t_k_(grid.size()), fft_(std::make_shared<FftPlan>(grid.size())) {
  // fast shortcut ramps pass through inverted traps, so only finiteness is required here
  require(pot.q >= 1, ErrorKind::invalid_argument, "power-law exponent q must be >= 1");
  require(std::isfinite(pot.lambda), ErrorKind::invalid_argument, "trap strength must be finite");
  for (int i = 0; i < grid.size(); ++i) v_[i] = pot(grid.x(i));
  const VectorXd k = grid.wavenumbers();
  t_k_ = 0.5 * k.array().square();
}

MatrixXcd SingleParticleHamiltonian::apply_kinetic(const MatrixXcd& psi) const {
  MatrixXcd out = psi;
  const double inv_n = 1.0 / grid_.size();
  for (Eigen::Index c = 0; c < out.cols(); ++c) {
    cplx* col = out.col(c).data();
    fft_->forward(col);
    for (int i = 0; i < grid_.size(); ++i) col[i] *= t_k_[i] * inv_n;
    fft_->backward(col);
  }
  return out;
}

MatrixXcd SingleParticleHamiltonian::apply(const MatrixXcd& psi) const {
  MatrixXcd out = apply_kinetic(psi);
  out += v_.asDiagonal() * psi;
  return out;
}

MatrixXd spectral_kinetic_matrix(const Grid& grid) {
  const int n = grid.size();
  const VectorXd k = grid.wavenumbers();
  VectorXd row(n);
  for (int d = 0; d < n; ++d) {
    double s = 0.0;
    for (int m = 0; m < n; ++m) s += 0.5 * k[m] * k[m] * std::cos(k[m] * grid.dx() * d);
    row[d] = s / n;
  }
  MatrixXd t(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t(i, j) = row[std::abs(i - j)];
  return t;
}

MatrixXd SingleParticleHamiltonian::dense() const {
  MatrixXd h = spectral_kinetic_matrix(grid_);
  h.diagonal() += v_;
  return h;
}

// ---------------------------------------------------------------- stationary states

OrbitalSet stationary_states(const Grid& grid, const PotentialSpec& pot, int count) {
  pot.validate();
  require(grid.size() >= 16, ErrorKind::invalid_argument, "stationary states need at least 16 grid points");
  require(count >= 1 && count <= grid.size(), ErrorKind::invalid_argument, "state count out of range");

  const SingleParticleHamiltonian h(grid, pot);
  const Eigen::SelfAdjointEigenSolver<MatrixXd> solver(h.dense());
  require(solver.info() == Eigen::Success, ErrorKind::invalid_state, "eigensolver failed");

  MatrixXcd amps(grid.size(), count);
  const double scale = 1.0 / std::sqrt(grid.dx());
  for (int n = 0; n < count; ++n) {
    VectorXd v = solver.eigenvectors().col(n);
    Eigen::Index imax = 0;
    v.cwiseAbs().maxCoeff(&imax);
    if (v[imax] < 0.0) v = -v;
    amps.col(n) = (v * scale).cast<cplx>();
  }
  OrbitalSet orbs(grid, std::move(amps), solver.eigenvalues().head(count));

  const VectorXd edge = boundary_amplitudes(orbs);
  for (int n = 0; n < count; ++n) {
    if (edge[n] >= 1e-6) {
      std::ostringstream msg;
      msg << "state " << n << " has amplitude " << edge[n] << " at the grid boundary (limit 1e-6)";
      fail(ErrorKind::grid_too_small, msg.str());
    }
  }
  return orbs;
}

// ---------------------------------------------------------------- energy statistics

EnergyStats slater_energy_stats(const OrbitalSet& orbs, const SingleParticleHamiltonian& h) {
  require(orbs.grid() == h.grid(), ErrorKind::invalid_argument, "orbitals and Hamiltonian use different grids");
  require(orbs.orthonormality_error() < 1e-6, ErrorKind::invalid_state, "orbitals are not orthonormal");
  const double dx = orbs.grid().dx();
  const MatrixXcd& psi = orbs.amplitudes();
  const MatrixXcd hpsi = h.apply(psi);
  const MatrixXcd g = (psi.adjoint() * hpsi) * dx;
  // Delta H^2 = sum_n <psi_n|h^2|psi_n> - sum_mn |<psi_m|h|psi_n>|^2, written as the
  // squared norm of the component of h psi_n outside the occupied span.
  const MatrixXcd residual = hpsi - psi * g;
  EnergyStats s;
  s.mean = g.diagonal().real().sum();
  s.std = std::sqrt(residual.squaredNorm() * dx);
  return s;
}

EnergyStats slater_energy_stats(const OrbitalSet& orbs, const PotentialSpec& pot) {
  return slater_energy_stats(orbs, SingleParticleHamiltonian(orbs.grid(), pot));
}

// ---------------------------------------------------------------- widths

AnsatzWidth ansatz_width(int n, double lambda) {
  require(n >= 0, ErrorKind::invalid_argument, "state index must be non-negative");
  require(lambda > 0.0, ErrorKind::invalid_argument, "trap strength must be positive");
  AnsatzWidth w;
  w.harmonic = std::sqrt(2.0 * (n + 0.5));
  const double nn = static_cast<double>(n);
  w.quartic = w.harmonic * std::pow((2.0 * nn + 1.0) / (3.0 * lambda * (2.0 * nn * nn + 2.0 * nn + 1.0)), 1.0 / 6.0);
  return w;
}

VectorXd rms_widths(const OrbitalSet& orbs) {
  const VectorXd x2 = orbs.grid().points().array().square();
  VectorXd w(orbs.count());
  for (int n = 0; n < orbs.count(); ++n)
    w[n] = std::sqrt((orbs.amplitudes().col(n).cwiseAbs2().array() * x2.array()).sum() * orbs.grid().dx());
  return w;
}

VectorXd boundary_amplitudes(const OrbitalSet& orbs) {
  VectorXd e(orbs.count());
  const auto last = orbs.grid().size() - 1;
  for (int n = 0; n < orbs.count(); ++n)
    e[n] = std::max(std::abs(orbs.amplitudes()(0, n)), std::abs(orbs.amplitudes()(last, n)));
  return e;
}

}  // namespace tgqsl
