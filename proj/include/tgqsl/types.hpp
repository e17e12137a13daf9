#pragma once

#include <complex>

#include <Eigen/Dense>

namespace tgqsl {

using cplx = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Particle statistics sharing one set of mapped orbitals.
enum class Statistics { fermi, tg };

inline const char* to_string(Statistics s) noexcept { return s == Statistics::fermi ? "fermi" : "tg"; }

}  // namespace tgqsl
