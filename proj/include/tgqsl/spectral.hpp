#pragma once

// Spatial grids, power-law traps, stationary states and one-body energy
// statistics of Slater determinants. Units: lengths in the harmonic length
// of the reference frequency, energies in hbar*omega_0, hbar = m = 1.

#include <memory>
#include <mutex>
#include <vector>

#include "tgqsl/types.hpp"

namespace tgqsl {

/// Uniform 1-D grid including both endpoints.
class Grid {
 public:
  Grid() = default;
  Grid(double x_min, double x_max, int n_points);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  int size() const noexcept { return n_; }
  double dx() const noexcept { return dx_; }
  double x(int i) const noexcept { return x_min_ + dx_ * i; }
  /// Period of the spectral representation, n*dx.
  double period() const noexcept { return dx_ * n_; }

  VectorXd points() const;
  /// Angular wavenumbers in FFT storage order (0, +, ..., Nyquist, -, ...).
  VectorXd wavenumbers() const;

  bool operator==(const Grid& other) const noexcept {
    return n_ == other.n_ && x_min_ == other.x_min_ && x_max_ == other.x_max_;
  }

 private:
  double x_min_ = 0.0;
  double x_max_ = 0.0;
  int n_ = 0;
  double dx_ = 0.0;
};

/// Symmetric grid on [-half_width, half_width].
Grid build_grid(double half_width, int n_points);

/// V(x) = lambda/2 * (x - x0)^(2q).
struct PotentialSpec {
  int q = 2;
  double lambda = 1.0;
  double x0 = 0.0;

  void validate() const;
  double operator()(double x) const noexcept;
  PotentialSpec with_strength(double new_lambda) const noexcept { return {q, new_lambda, x0}; }
};

/// Ordered single-particle orbitals stored column-wise on a shared grid.
/// Energies are present for stationary sets and empty for evolved ones.
class OrbitalSet {
 public:
  OrbitalSet() = default;
  OrbitalSet(Grid grid, MatrixXcd amplitudes, VectorXd energies = {});

  const Grid& grid() const noexcept { return grid_; }
  const MatrixXcd& amplitudes() const noexcept { return amps_; }
  MatrixXcd& amplitudes() noexcept { return amps_; }
  const VectorXd& energies() const noexcept { return energies_; }
  bool has_energies() const noexcept { return energies_.size() == amps_.cols(); }
  int count() const noexcept { return static_cast<int>(amps_.cols()); }

  /// First `n` orbitals.
  OrbitalSet head(int n) const;
  /// Gram matrix <psi_m|psi_n> with dx weight.
  MatrixXcd gram() const;
  /// Max-abs deviation of the Gram matrix from the identity.
  double orthonormality_error() const;

 private:
  Grid grid_;
  MatrixXcd amps_;
  VectorXd energies_;
};

/// In-place 1-D complex FFT of fixed length; unnormalized in both directions.
/// Plans are created once and executed on caller-owned buffers from any thread.
class FftPlan {
 public:
  explicit FftPlan(int n);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;

  int size() const noexcept { return n_; }
  void forward(cplx* data) const;
  void backward(cplx* data) const;

 private:
  int n_;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

/// Discretized h = -1/2 d^2/dx^2 + V(x) with a Fourier-spectral kinetic term.
class SingleParticleHamiltonian {
 public:
  SingleParticleHamiltonian(const Grid& grid, const PotentialSpec& pot);

  const Grid& grid() const noexcept { return grid_; }
  const PotentialSpec& potential() const noexcept { return pot_; }
  const VectorXd& potential_values() const noexcept { return v_; }
  const VectorXd& kinetic_spectrum() const noexcept { return t_k_; }

  /// h applied to every column.
  MatrixXcd apply(const MatrixXcd& psi) const;
  /// Kinetic part only.
  MatrixXcd apply_kinetic(const MatrixXcd& psi) const;
  /// Dense real-symmetric matrix of h in the position basis.
  MatrixXd dense() const;

 private:
  Grid grid_;
  PotentialSpec pot_;
  VectorXd v_;
  VectorXd t_k_;
  std::shared_ptr<FftPlan> fft_;
};

/// Dense kinetic matrix T_ij = (1/M) sum_k (k^2/2) cos(k (x_i - x_j)).
MatrixXd spectral_kinetic_matrix(const Grid& grid);

/// Lowest `count` eigenpairs of h. Each state is normalized with its
/// largest-magnitude sample real and positive.
/// Throws grid_too_small if any state exceeds 1e-6 at the grid edges.
OrbitalSet stationary_states(const Grid& grid, const PotentialSpec& pot, int count);

struct EnergyStats {
  double mean = 0.0;
  double std = 0.0;
};

/// <H> and Delta H of the Slater determinant of `orbs` under H = sum_i h(x_i).
EnergyStats slater_energy_stats(const OrbitalSet& orbs, const PotentialSpec& pot);
EnergyStats slater_energy_stats(const OrbitalSet& orbs, const SingleParticleHamiltonian& h);

struct AnsatzWidth {
  double harmonic = 0.0;
  double quartic = 0.0;
};

/// Closed-form widths of the n-th harmonic state and its quartic rescaling.
AnsatzWidth ansatz_width(int n, double lambda);

/// (sum |psi|^2 x^2 dx)^(1/2) for each orbital.
VectorXd rms_widths(const OrbitalSet& orbs);

/// Per-orbital maximum of |psi| at the two grid endpoints.
VectorXd boundary_amplitudes(const OrbitalSet& orbs);

}  // namespace tgqsl
