#pragma once

// Dense complex linear algebra on Eigen types: a cyclic Jacobi eigensolver for
// Hermitian matrices, PSD testing with a reportable margin, Kronecker and Schur
// products, spectral matrix functions and seeded Haar unitaries.
//
// Everything here is templated on the real scalar type; `double` aliases are
// provided for the rest of the library.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace momenta {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

template <typename Real>
using CMatrix = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using CVector = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;
template <typename Real>
using RVector = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

using Complex = std::complex<double>;
using ComplexMatrix = CMatrix<double>;
using ComplexVector = CVector<double>;
using RealVector = RVector<double>;

inline constexpr double kDefaultPsdTolerance = 1e-9;
inline constexpr double kHermitianTolerance = 1e-8;
inline constexpr Eigen::Index kDefaultKronCap = 4096;

/// Eigenvalues in ascending order with matching orthonormal eigenvector columns.
template <typename Real>
struct HermitianSpectrum {
  RVector<Real> eigenvalues;
  CMatrix<Real> eigenvectors;
  int sweeps = 0;

  Real min() const { return eigenvalues(0); }
  Real max() const { return eigenvalues(eigenvalues.size() - 1); }
  Eigen::Index size() const { return eigenvalues.size(); }

  /// Spectral projection onto the j-th eigenvector.
  CMatrix<Real> projector(Eigen::Index j) const {
    return eigenvectors.col(j) * eigenvectors.col(j).adjoint();
  }
};

template <typename Real>
struct PsdVerdict {
  Real min_eigenvalue = 0;
  Real scale = 1;
  bool passed = false;
  Real tolerance_used = 0;
};

using Spectrum = HermitianSpectrum<double>;
using Verdict = PsdVerdict<double>;

template <typename Derived>
void require_square(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (a.rows() != a.cols()) {
    throw DimensionError(std::string(what) + ": expected a square matrix, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

template <typename Derived>
void require_finite(const Eigen::MatrixBase<Derived>& a, const char* what) {
  if (!a.allFinite()) throw DomainError(std::string(what) + ": non-finite entry");
}

/// ||A - A*||_F, the quantity the ingest tolerance is measured against.
template <typename Derived>
typename Derived::RealScalar hermitian_defect(const Eigen::MatrixBase<Derived>& a) {
  return (a - a.adjoint()).norm();
}

/// Returns (A + A*)/2 when A is Hermitian up to `rel_tol`·||A||_F, throws otherwise.
template <typename Derived>
CMatrix<typename Derived::RealScalar> hermitize(const Eigen::MatrixBase<Derived>& a,
                                                double rel_tol = kHermitianTolerance) {
  using Real = typename Derived::RealScalar;
  require_square(a, "hermitize");
  require_finite(a, "hermitize");
  CMatrix<Real> m = a.template cast<std::complex<Real>>();
  const Real defect = hermitian_defect(m);
  if (defect > Real(rel_tol) * m.norm()) {
    throw DomainError("matrix is not Hermitian: ||A - A*||_F = " + std::to_string(defect));
  }
  CMatrix<Real> h = (m + m.adjoint()) / Real(2);
  for (Eigen::Index i = 0; i < h.rows(); ++i) h(i, i) = std::complex<Real>(h(i, i).real(), 0);
  return h;
}

template <typename Derived>
bool is_hermitian(const Eigen::MatrixBase<Derived>& a, double rel_tol = kHermitianTolerance) {
  return a.rows() == a.cols() && a.allFinite() &&
         hermitian_defect(a) <= typename Derived::RealScalar(rel_tol) * a.norm();
}

namespace detail {

template <typename Real>
Real off_diagonal_norm(const CMatrix<Real>& a) {
  Real sum = 0;
  for (Eigen::Index j = 0; j < a.cols(); ++j)
    for (Eigen::Index i = 0; i < a.rows(); ++i)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

// One two-sided complex Jacobi rotation annihilating a(p,q). The unitary G acts on
// columns p,q: first a phase makes a(p,q) real, then a real Givens rotation.
template <typename Real>
void jacobi_rotate(CMatrix<Real>& a, CMatrix<Real>& v, Eigen::Index p, Eigen::Index q) {
  using C = std::complex<Real>;
  const C apq = a(p, q);
  const Real r = std::abs(apq);
  if (r == Real(0)) return;
  const C w = apq / r;
  const Real app = a(p, p).real();
  const Real aqq = a(q, q).real();
  const Real theta = (aqq - app) / (Real(2) * r);
  const Real t = (theta >= 0 ? Real(1) : Real(-1)) /
                 (std::abs(theta) + std::sqrt(Real(1) + theta * theta));
  const Real c = Real(1) / std::sqrt(Real(1) + t * t);
  const Real s = t * c;

  const C g_pp = c;
  const C g_pq = s;
  const C g_qp = -s * std::conj(w);
  const C g_qq = c * std::conj(w);

  // A <- A G, V <- V G
  for (Eigen::Index k = 0; k < a.rows(); ++k) {
    const C akp = a(k, p), akq = a(k, q);
    a(k, p) = akp * g_pp + akq * g_qp;
    a(k, q) = akp * g_pq + akq * g_qq;
    const C vkp = v(k, p), vkq = v(k, q);
    v(k, p) = vkp * g_pp + vkq * g_qp;
    v(k, q) = vkp * g_pq + vkq * g_qq;
  }
  // A <- G* A
  for (Eigen::Index k = 0; k < a.cols(); ++k) {
    const C apk = a(p, k), aqk = a(q, k);
    a(p, k) = std::conj(g_pp) * apk + std::conj(g_qp) * aqk;
    a(q, k) = std::conj(g_pq) * apk + std::conj(g_qq) * aqk;
  }
  a(p, q) = C(0);
  a(q, p) = C(0);
  a(p, p) = C(app - t * r, 0);
  a(q, q) = C(aqq + t * r, 0);
}

}  // namespace detail

/// Cyclic Jacobi eigendecomposition of a Hermitian matrix.
///
/// Sweeps over all (p,q) pairs until the off-diagonal Frobenius mass falls to
/// 1e-14·||A||_F or 50 sweeps have run. The input is symmetrized first and
/// rejected if its asymmetry exceeds the ingest tolerance.
template <typename Derived>
HermitianSpectrum<typename Derived::RealScalar> hermitian_eig(const Eigen::MatrixBase<Derived>& input,
                                                              int max_sweeps = 50) {
  using Real = typename Derived::RealScalar;
  CMatrix<Real> a = hermitize(input);
  const Eigen::Index n = a.rows();
  CMatrix<Real> v = CMatrix<Real>::Identity(n, n);
  const Real threshold = Real(1e-14) * a.norm();

  int sweep = 0;
  while (sweep < max_sweeps && detail::off_diagonal_norm(a) > threshold) {
    ++sweep;
    for (Eigen::Index p = 0; p + 1 < n; ++p)
      for (Eigen::Index q = p + 1; q < n; ++q) detail::jacobi_rotate(a, v, p, q);
  }

  std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), Eigen::Index(0));
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index i, Eigen::Index j) { return a(i, i).real() < a(j, j).real(); });

  HermitianSpectrum<Real> out;
  out.eigenvalues.resize(n);
  out.eigenvectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.eigenvalues(k) = a(order[k], order[k]).real();
    out.eigenvectors.col(k) = v.col(order[k]);
  }
  out.sweeps = sweep;
  return out;
}

/// PSD test on the eigenvalue floor: passes iff λ_min ≥ -tol·max(1, ||M||_F).
template <typename Derived>
PsdVerdict<typename Derived::RealScalar> is_psd(const Eigen::MatrixBase<Derived>& m,
                                                double tol = kDefaultPsdTolerance) {
  using Real = typename Derived::RealScalar;
  if (!(tol > 0)) throw DomainError("is_psd: tolerance must be positive");
  const auto spectrum = hermitian_eig(m);
  PsdVerdict<Real> verdict;
  verdict.min_eigenvalue = spectrum.min();
  verdict.scale = std::max(Real(1), m.norm());
  verdict.tolerance_used = Real(tol);
  verdict.passed = verdict.min_eigenvalue >= -verdict.tolerance_used * verdict.scale;
  return verdict;
}

/// Kronecker product; (A⊗B)[(i,k),(j,l)] = A[i,j]·B[k,l].
template <typename DerivedA, typename DerivedB>
CMatrix<typename DerivedA::RealScalar> kron(const Eigen::MatrixBase<DerivedA>& a,
                                            const Eigen::MatrixBase<DerivedB>& b,
                                            Eigen::Index max_dim = kDefaultKronCap) {
  using Real = typename DerivedA::RealScalar;
  require_finite(a, "kron");
  require_finite(b, "kron");
  const Eigen::Index rows = a.rows() * b.rows();
  const Eigen::Index cols = a.cols() * b.cols();
  if (rows > max_dim || cols > max_dim) {
    throw DimensionError("kron: result " + std::to_string(rows) + "x" + std::to_string(cols) +
                         " exceeds dimension cap " + std::to_string(max_dim));
  }
  CMatrix<Real> out(rows, cols);
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) =
          std::complex<Real>(a(i, j)) * b.template cast<std::complex<Real>>();
  return out;
}

/// Schur (entrywise) product.
template <typename DerivedA, typename DerivedB>
CMatrix<typename DerivedA::RealScalar> hadamard(const Eigen::MatrixBase<DerivedA>& a,
                                                const Eigen::MatrixBase<DerivedB>& b) {
  using Real = typename DerivedA::RealScalar;
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError("hadamard: dimension mismatch");
  }
  return a.template cast<std::complex<Real>>().cwiseProduct(b.template cast<std::complex<Real>>());
}

/// A scalar function applied through the spectral theorem: a finite sum of
/// terms coeff·x^power·(log x)^{0 or 1}.
template <typename Real>
struct ScalarFunction {
  struct Term {
    Real coeff = 1;
    int power = 0;
    bool with_log = false;
  };
  std::vector<Term> terms;

  static ScalarFunction power(int p) { return {{Term{Real(1), p, false}}}; }
  static ScalarFunction log() { return {{Term{Real(1), 0, true}}}; }
  static ScalarFunction combination(std::vector<Term> t) { return {std::move(t)}; }

  bool needs_positive_definite() const {
    return std::any_of(terms.begin(), terms.end(),
                       [](const Term& t) { return t.with_log || t.power < 0; });
  }

  Real operator()(Real x) const {
    Real y = 0;
    for (const auto& t : terms) {
      Real v = t.coeff * std::pow(x, t.power);
      if (t.with_log) v *= std::log(x);
      y += v;
    }
    return y;
  }
};

/// f(A) = V diag(f(λ)) V* from a precomputed spectrum.
template <typename Real, typename F>
CMatrix<Real> spectral_apply(const HermitianSpectrum<Real>& s, F&& f) {
  const Eigen::Index n = s.size();
  CVector<Real> values(n);
  for (Eigen::Index k = 0; k < n; ++k) values(k) = f(s.eigenvalues(k));
  CMatrix<Real> out = s.eigenvectors * values.asDiagonal() * s.eigenvectors.adjoint();
  return (out + out.adjoint()) / Real(2);
}

template <typename Derived>
CMatrix<typename Derived::RealScalar> matrix_function(
    const Eigen::MatrixBase<Derived>& a, const ScalarFunction<typename Derived::RealScalar>& f) {
  const auto spectrum = hermitian_eig(a);
  if (f.needs_positive_definite() && !(spectrum.min() > 0)) {
    throw DomainError("matrix_function: log or negative power of a matrix that is not positive definite (λ_min = " +
                      std::to_string(spectrum.min()) + ")");
  }
  return spectral_apply(spectrum, f);
}

/// Haar-distributed unitary from a seeded complex Gaussian matrix (QR with the
/// R-diagonal phases folded back into Q).
template <typename Real = double>
CMatrix<Real> random_unitary(Eigen::Index n, std::uint64_t seed) {
  if (n < 1) throw DimensionError("random_unitary: n must be at least 1");
  std::mt19937_64 rng(seed);
  std::normal_distribution<Real> gauss(0, 1);
  CMatrix<Real> z(n, n);
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index i = 0; i < n; ++i) {
      const Real re = gauss(rng);
      const Real im = gauss(rng);
      z(i, j) = {re, im};
    }
  Eigen::HouseholderQR<CMatrix<Real>> qr(z);
  CMatrix<Real> q = qr.householderQ() * CMatrix<Real>::Identity(n, n);
  const CMatrix<Real> r = qr.matrixQR().template triangularView<Eigen::Upper>();
  for (Eigen::Index k = 0; k < n; ++k) {
    const Real mag = std::abs(r(k, k));
    if (mag > 0) q.col(k) *= r(k, k) / mag;
  }
  return q;
}

}  // namespace momenta
