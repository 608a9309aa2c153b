#pragma once

// Extreme-eigenvalue bounds from the central moments of a Hermitian matrix
// under a positive unital functional φ.
//
// With B = A - φ(A)I and b_k = φ(B^k), the smallest and largest eigenvalues of B
// are bounded by the extreme roots of the monic cubic
//
//   x³ + (β₁/γ)x² + (β₂/γ)x + β₃/γ,
//   γ = b3² - b2·b4 + b2³,
//
// whose numerator γ·cubic(a) is the determinant of the 3×3 matrix
// [b_{i+j+1} - a·b_{i+j}] (b0 = 1, b1 = 0). γ ≤ 0 always; γ = 0 exactly
// when the spectral measure of φ has at most two atoms.

#include <array>
#include <optional>
#include <vector>

#include "momenta/linalg.hpp"
#include "momenta/maps.hpp"

namespace momenta {

struct CentralMoments {
  double mean = 0;  // φ(A)
  double b2 = 0;
  double b3 = 0;
  double b4 = 0;
  double b5 = 0;
  /// φ(|B|^k) for k = 0..5; bounds |b_k| and sets the rounding scale of b_k.
  std::array<double, 6> absolute{1, 0, 0, 0, 0, 0};

  /// b_k for k = 0..5 (b0 = 1, b1 = 0).
  double operator[](int k) const;
};

CentralMoments central_moments(const PositiveUnitalMap& functional, const ComplexMatrix& a);

struct CubicCoefficients {
  double c2 = 0;
  double c1 = 0;
  double c0 = 0;
  double gamma = 0;
  bool degenerate = false;
};

/// γ first; when |γ| ≤ 1e-10·max(1, b2³) the result is flagged degenerate and
/// c2, c1, c0 are left at zero.
CubicCoefficients cubic_coefficients(const CentralMoments& cm);

double degeneracy_threshold(const CentralMoments& cm);

struct CubicRoots {
  std::vector<double> roots;  // ascending
  bool complex_pair = false;  // only one real root exists
};

/// Real roots of x³ + c2x² + c1x + c0.
CubicRoots solve_cubic(double c2, double c1, double c0);

double evaluate_cubic(double c2, double c1, double c0, double x);

/// The 3×3 determinant of [b_{i+j+1} - a·b_{i+j}], expanded by cofactors.
double determinant_oracle(const CentralMoments& cm, double a);

/// The same expansion with every b_k replaced by max(|b_k|, φ(|B|^k)) and every
/// difference by a sum: a bound on the size of the terms, and so the scale
/// against which a determinant that cancels to (near) zero is compared.
double determinant_scale(const CentralMoments& cm, double a);

struct WolkowiczStyanBounds {
  double min_upper = 0;
  double max_lower = 0;
};

/// μ ∓ s/√(n-1) with μ = tr(A)/n and s² = tr((A - μI)²)/n.
WolkowiczStyanBounds wolkowicz_styan(const ComplexMatrix& a);

struct EigenBoundReport {
  CentralMoments moments;
  CubicCoefficients cubic;
  std::vector<double> roots;
  bool complex_pair = false;
  std::optional<double> lambda_min_upper;
  std::optional<double> lambda_max_lower;
  WolkowiczStyanBounds ws;
  bool degenerate = false;
};

EigenBoundReport spectral_bounds(const PositiveUnitalMap& functional, const ComplexMatrix& a);

}  // namespace momenta
