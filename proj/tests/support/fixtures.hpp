#pragma once

#include <cmath>
#include <initializer_list>

#include <Eigen/Dense>

#include "momenta/linalg.hpp"

namespace momenta::testing {

/// The 3×3 matrix with eigenvalues {-12, 0, 12} used for the worked bound example.
inline ComplexMatrix example_matrix() {
  const double s = 3.0 * std::sqrt(2.0);
  Eigen::Matrix3d a;
  a << 3, -s, -9,  //
      -s, -6, -s,  //
      -9, -s, 3;
  return a.cast<Complex>();
}

inline ComplexMatrix diag(std::initializer_list<double> values) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (double x : values) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

inline ComplexMatrix cdiag(std::initializer_list<Complex> values) {
  ComplexVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (Complex x : values) v(i++) = x;
  return v.asDiagonal();
}

inline ComplexMatrix real_matrix(std::initializer_list<std::initializer_list<double>> rows) {
  ComplexMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    Eigen::Index j = 0;
    for (double x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

/// Eigenvalues from Eigen's own solver; an oracle independent of the Jacobi sweeps.
inline Eigen::VectorXd reference_eigenvalues(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(a, Eigen::EigenvaluesOnly);
  return solver.eigenvalues();
}

}  // namespace momenta::testing
