#include "momenta/eigenbounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace momenta {

double CentralMoments::operator[](int k) const {
  switch (k) {
    case 0: return 1.0;
    case 1: return 0.0;
    case 2: return b2;
    case 3: return b3;
    case 4: return b4;
    case 5: return b5;
    default: throw DomainError("central moment index out of range 0..5");
  }
}

CentralMoments central_moments(const PositiveUnitalMap& functional, const ComplexMatrix& a) {
  if (!functional.is_functional()) throw DimensionError("central_moments: map must have a 1x1 codomain");
  const auto spectrum = hermitian_eig(a);
  const auto n = spectrum.size();
  RealVector weights(n);
  for (Eigen::Index j = 0; j < n; ++j) weights(j) = functional.functional(spectrum.projector(j)).real();

  CentralMoments cm;
  cm.mean = weights.dot(spectrum.eigenvalues);
  const RealVector centered = spectrum.eigenvalues.array() - cm.mean;
  RealVector power = centered.cwiseProduct(centered);
  cm.b2 = weights.dot(power);
  power = power.cwiseProduct(centered);
  cm.b3 = weights.dot(power);
  power = power.cwiseProduct(centered);
  cm.b4 = weights.dot(power);
  power = power.cwiseProduct(centered);
  cm.b5 = weights.dot(power);
  const RealVector magnitude = centered.cwiseAbs();
  RealVector abs_power = RealVector::Ones(n);
  for (std::size_t k = 1; k < cm.absolute.size(); ++k) {
    abs_power = abs_power.cwiseProduct(magnitude);
    cm.absolute[k] = weights.dot(abs_power);
  }
  return cm;
}

double degeneracy_threshold(const CentralMoments& cm) {
  return 1e-10 * std::max(1.0, cm.b2 * cm.b2 * cm.b2);
}

CubicCoefficients cubic_coefficients(const CentralMoments& cm) {
  const double b2 = cm.b2, b3 = cm.b3, b4 = cm.b4, b5 = cm.b5;
  CubicCoefficients out;
  out.gamma = b3 * b3 - b2 * b4 + b2 * b2 * b2;
  if (std::abs(out.gamma) <= degeneracy_threshold(cm)) {
    out.degenerate = true;
    return out;
  }
  const double beta1 = -b4 * b3 - b2 * b2 * b3 + b2 * b5;
  const double beta2 = -b3 * b5 + b4 * b4 + b3 * b3 * b2 - b2 * b2 * b4;
  const double beta3 = 2.0 * b2 * b3 * b4 - b2 * b2 * b5 - b3 * b3 * b3;
  out.c2 = beta1 / out.gamma;
  out.c1 = beta2 / out.gamma;
  out.c0 = beta3 / out.gamma;
  return out;
}

double evaluate_cubic(double c2, double c1, double c0, double x) { return ((x + c2) * x + c1) * x + c0; }

CubicRoots solve_cubic(double c2, double c1, double c0) {
  // x = t - c2/3 gives t³ + pt + q.
  const double shift = c2 / 3.0;
  const double p = c1 - c2 * c2 / 3.0;
  const double q = 2.0 * c2 * c2 * c2 / 27.0 - c2 * c1 / 3.0 + c0;
  const double disc = -(4.0 * p * p * p + 27.0 * q * q);
  const double disc_scale = 4.0 * std::abs(p * p * p) + 27.0 * q * q;

  CubicRoots out;
  if (p == 0.0 && q == 0.0) {
    out.roots = {-shift, -shift, -shift};
  } else if (disc >= -1e-12 * disc_scale && p < 0.0) {
    const double amplitude = 2.0 * std::sqrt(-p / 3.0);
    const double arg = std::clamp(3.0 * q / (2.0 * p) * std::sqrt(-3.0 / p), -1.0, 1.0);
    const double phi = std::acos(arg) / 3.0;
    for (int k = 0; k < 3; ++k)
      out.roots.push_back(amplitude * std::cos(phi - 2.0 * std::numbers::pi * k / 3.0) - shift);
  } else {
    const double root = std::sqrt(q * q / 4.0 + p * p * p / 27.0);
    out.roots = {std::cbrt(-q / 2.0 + root) + std::cbrt(-q / 2.0 - root) - shift};
    out.complex_pair = true;
  }

  for (auto& x : out.roots) {
    const double deriv = (3.0 * x + 2.0 * c2) * x + c1;
    if (deriv != 0.0) {
      const double polished = x - evaluate_cubic(c2, c1, c0, x) / deriv;
      if (std::abs(evaluate_cubic(c2, c1, c0, polished)) <= std::abs(evaluate_cubic(c2, c1, c0, x))) x = polished;
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

namespace {

double cofactor_expansion(const double (&e)[3][3], double sign) {
  // sign = -1 gives the determinant, +1 the permanent
  return e[0][0] * (e[1][1] * e[2][2] + sign * e[1][2] * e[2][1]) +
         sign * e[0][1] * (e[1][0] * e[2][2] + sign * e[1][2] * e[2][0]) +
         e[0][2] * (e[1][0] * e[2][1] + sign * e[1][1] * e[2][0]);
}

}  // namespace

double determinant_oracle(const CentralMoments& cm, double a) {
  // entry(i, j) = b_{i+j+1} - a·b_{i+j}
  double e[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[i][j] = cm[i + j + 1] - a * cm[i + j];
  return cofactor_expansion(e, -1.0);
}

double determinant_scale(const CentralMoments& cm, double a) {
  auto size = [&](int k) { return std::max(std::abs(cm[k]), cm.absolute[static_cast<std::size_t>(k)]); };
  double e[3][3];
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) e[i][j] = size(i + j + 1) + std::abs(a) * size(i + j);
  return cofactor_expansion(e, 1.0);
}

WolkowiczStyanBounds wolkowicz_styan(const ComplexMatrix& a) {
  require_square(a, "wolkowicz_styan");
  const auto n = a.rows();
  if (n < 2) throw DimensionError("wolkowicz_styan: needs n >= 2");
  const double mean = a.trace().real() / static_cast<double>(n);
  const ComplexMatrix centered = a - mean * ComplexMatrix::Identity(n, n);
  const double s = std::sqrt(centered.squaredNorm() / static_cast<double>(n));
  const double spread = s / std::sqrt(static_cast<double>(n - 1));
  return {mean - spread, mean + spread};
}

EigenBoundReport spectral_bounds(const PositiveUnitalMap& functional, const ComplexMatrix& a) {
  EigenBoundReport report;
  report.moments = central_moments(functional, a);
  report.cubic = cubic_coefficients(report.moments);
  report.degenerate = report.cubic.degenerate;
  if (a.rows() >= 2) {
    report.ws = wolkowicz_styan(hermitize(a));
  } else {
    report.ws = {a(0, 0).real(), a(0, 0).real()};
  }
  if (!report.degenerate) {
    const auto roots = solve_cubic(report.cubic.c2, report.cubic.c1, report.cubic.c0);
    report.roots = roots.roots;
    report.complex_pair = roots.complex_pair;
    report.lambda_min_upper = report.moments.mean + roots.roots.front();
    report.lambda_max_lower = report.moments.mean + roots.roots.back();
  }
  return report;
}

}  // namespace momenta
