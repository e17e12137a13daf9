#pragma once

// Brute-force references for two and three particles. Everything here works
// on the full N-body tensor with plain quadrature and shares no numerical
// code with the production modules beyond the grid and container types.

#include "tgqsl/manybody.hpp"
#include "tgqsl/propagate.hpp"

namespace tgqsl::oracle {

/// Psi(x_i1, ..., x_iN) stored with the first coordinate varying slowest.
struct FullWavefunction {
  Grid grid;
  int particles = 0;
  Statistics statistics = Statistics::fermi;
  VectorXcd values;

  cplx at(int i, int j) const { return values[static_cast<Eigen::Index>(i) * grid.size() + j]; }
  cplx at(int i, int j, int k) const {
    const Eigen::Index m = grid.size();
    return values[(static_cast<Eigen::Index>(i) * m + j) * m + k];
  }
  /// sum |Psi|^2 dx^N
  double norm() const;
  /// Largest |Psi(..x_a..x_b..) -/+ Psi(..x_b..x_a..)| over all pairs of
  /// coordinates; antisymmetric for fermi, symmetric for tg.
  double exchange_error() const;
};

/// Slater tensor (fermi) or the sign-mapped hard-core boson tensor (tg).
FullWavefunction build_full_state(const OrbitalSet& orbs, Statistics statistics);

/// N * integral of Psi(x, rest) Psi*(x', rest) over the other coordinates.
Rspdm brute_rspdm(const FullWavefunction& psi);

/// |<Psi_a|Psi_b>|^2
double brute_fidelity(const FullWavefunction& a, const FullWavefunction& b);

/// Dense h = T + V with T built from an explicit plane-wave sum.
MatrixXcd plane_wave_hamiltonian(const Grid& grid, const PotentialSpec& pot);

/// <H> and Delta H of the tensor, applying sum_i h(x_i) axis by axis.
EnergyStats brute_energy_stats(const FullWavefunction& psi, const PotentialSpec& pot);

/// Crank-Nicolson integration of every orbital to t_f with the dense
/// plane-wave Hamiltonian, strength taken at each step midpoint. Runs at dt
/// and dt/2 and extrapolates to fourth order.
/// Throws oracle_failure if a norm drifts by more than 1e-8.
OrbitalSet reference_integrator(const OrbitalSet& orbs, const RampSchedule& ramp, int q, double dt);

}  // namespace tgqsl::oracle
