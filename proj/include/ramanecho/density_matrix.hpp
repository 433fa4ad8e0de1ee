#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <complex>

namespace ramanecho {

using complexd = std::complex<double>;
using Matrix3c = Eigen::Matrix3cd;

// Smallest eigenvalue of a 3x3 Hermitian matrix, closed form
// (trigonometric solution of the characteristic polynomial).
inline double min_eigenvalue_hermitian(const Matrix3c& a) {
  const double p1 = std::norm(a(0, 1)) + std::norm(a(0, 2)) + std::norm(a(1, 2));
  const double q = std::real(a.trace()) / 3.0;
  if (p1 == 0.0) {
    return std::min({std::real(a(0, 0)), std::real(a(1, 1)), std::real(a(2, 2))});
  }
  const double d0 = std::real(a(0, 0)) - q;
  const double d1 = std::real(a(1, 1)) - q;
  const double d2 = std::real(a(2, 2)) - q;
  const double p2 = d0 * d0 + d1 * d1 + d2 * d2 + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Matrix3c b = (a - q * Matrix3c::Identity()) / p;
  double r = std::real(b.determinant()) / 2.0;
  r = std::clamp(r, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  // Eigenvalues are q + 2p cos(phi + 2k pi/3); k = 1 gives the smallest.
  return q + 2.0 * p * std::cos(phi + 2.0 * M_PI / 3.0);
}

// State of one atom group. Basis order: |1>, |2>, |3> (two ground states,
// one excited state). Populations on the diagonal, coherences off it.
struct DensityMatrix {
  Matrix3c m = Matrix3c::Zero();

  static DensityMatrix ground() {
    DensityMatrix rho;
    rho.m(0, 0) = 1.0;
    return rho;
  }

  complexd rho11() const { return m(0, 0); }
  complexd rho22() const { return m(1, 1); }
  complexd rho33() const { return m(2, 2); }
  complexd rho12() const { return m(0, 1); }
  complexd rho13() const { return m(0, 2); }
  complexd rho23() const { return m(1, 2); }

  double trace_error() const { return std::abs(std::real(m.trace()) - 1.0) + std::abs(std::imag(m.trace())); }

  double hermiticity_error() const {
    double e = 0.0;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) e = std::max(e, std::abs(m(i, j) - std::conj(m(j, i))));
    return e;
  }

  double min_eigenvalue() const { return min_eigenvalue_hermitian(m); }

  bool is_finite() const {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        if (!std::isfinite(std::real(m(i, j))) || !std::isfinite(std::imag(m(i, j)))) return false;
    return true;
  }

  // rho <- (rho + rho^dagger)/2, applied after every integration step.
  void symmetrize() { m = ((m + m.adjoint()) / 2.0).eval(); }
};

}  // namespace ramanecho
