#include "momenta/moments.hpp"

#include <cmath>
#include <limits>

namespace momenta {

namespace {

constexpr double kSpectrumSlack = 1e-10;
constexpr double kStrictness = 1e-8;
constexpr double kNormalityTolerance = 1e-8;

double slack_for(const RealVector& eigenvalues) {
  const double scale = eigenvalues.size() ? eigenvalues.cwiseAbs().maxCoeff() : 0.0;
  return kSpectrumSlack * std::max(1.0, scale);
}

ComplexMatrix symmetrized(const ComplexMatrix& x) { return (x + x.adjoint()) / 2.0; }

void require_contains_spectrum(const RealVector& eigenvalues, double m, double M, const char* what) {
  const double slack = slack_for(eigenvalues);
  if (m > eigenvalues(0) + slack || M < eigenvalues(eigenvalues.size() - 1) - slack) {
    throw DomainError(std::string(what) + ": interval [" + std::to_string(m) + ", " + std::to_string(M) +
                      "] does not contain the spectrum [" + std::to_string(eigenvalues(0)) + ", " +
                      std::to_string(eigenvalues(eigenvalues.size() - 1)) + "]");
  }
}

// A polynomial-like factor q(x) = Σ coeff·x^offset, offsets in [-1, 2].
struct Factor {
  int offset;
  double coeff;
};

std::vector<Factor> factor_of(BlockKind kind, double m, double M, double gap_lo, double gap_hi) {
  switch (kind) {
    case BlockKind::Hankel: return {{0, 1.0}};
    case BlockKind::ShiftedHankel: return {{1, 1.0}};
    case BlockKind::LowerEndpoint: return {{1, 1.0}, {0, -m}};
    case BlockKind::UpperEndpoint: return {{0, M}, {1, -1.0}};
    case BlockKind::InverseLowerEndpoint: return {{0, 1.0}, {-1, -m}};
    case BlockKind::InverseUpperEndpoint: return {{-1, M}, {0, -1.0}};
    case BlockKind::IntervalProduct: return {{1, m + M}, {2, -1.0}, {0, -m * M}};
    case BlockKind::SpectralGap: return {{2, 1.0}, {1, -(gap_lo + gap_hi)}, {0, gap_lo * gap_hi}};
    case BlockKind::InverseIntervalProduct: return {{0, m + M}, {1, -1.0}, {-1, -m * M}};
    default: break;
  }
  throw DomainError("block kind " + std::string(to_string(kind)) + " is not assembled from a moment table");
}

template <typename BlockFn>
ComplexMatrix assemble(int count, Eigen::Index d, BlockFn&& block) {
  ComplexMatrix out(count * d, count * d);
  for (int i = 0; i < count; ++i)
    for (int j = 0; j < count; ++j) out.block(i * d, j * d, d, d) = block(i, j);
  return symmetrized(out);
}

struct GapEndpoints {
  double lo = 0;
  double hi = 0;
};

GapEndpoints resolve_gap(const RealVector& spectrum, const BlockOptions& options) {
  const std::vector<double> values =
      options.eigenvalues.empty() ? distinct_eigenvalues(spectrum) : options.eigenvalues;
  if (!options.gap_index) throw DomainError("spectral gap block needs a gap index");
  const int g = *options.gap_index;
  if (g < 2 || g > static_cast<int>(values.size())) {
    throw DomainError("gap index " + std::to_string(g) + " outside [2, " + std::to_string(values.size()) + "]");
  }
  const double lo = values[static_cast<std::size_t>(g - 2)];
  const double hi = values[static_cast<std::size_t>(g - 1)];
  const double width = spectrum(spectrum.size() - 1) - spectrum(0);
  if (!(hi - lo > 1e-8 * width)) {
    throw DomainError("gap " + std::to_string(g) + " between " + std::to_string(lo) + " and " +
                      std::to_string(hi) + " is not a gap between distinct eigenvalues");
  }
  return {lo, hi};
}

void require_block_preconditions(BlockKind kind, const RealVector& spectrum) {
  const double lmin = spectrum(0);
  switch (kind) {
    case BlockKind::ShiftedHankel:
      if (lmin < -slack_for(spectrum))
        throw DomainError("shifted Hankel block requires A >= 0 (λ_min = " + std::to_string(lmin) + ")");
      break;
    case BlockKind::InverseLowerEndpoint:
    case BlockKind::InverseUpperEndpoint:
    case BlockKind::InverseIntervalProduct:
      if (!(lmin > 0))
        throw DomainError(std::string(to_string(kind)) + " requires positive definite A (λ_min = " +
                          std::to_string(lmin) + ")");
      break;
    default: break;
  }
}

ComplexMatrix integer_power(const ComplexMatrix& a, int k) {
  const auto n = a.rows();
  if (k < 0) {
    ComplexMatrix inv = a.partialPivLu().inverse();
    ComplexMatrix out = ComplexMatrix::Identity(n, n);
    for (int i = 0; i < -k; ++i) out = out * inv;
    return symmetrized(out);
  }
  ComplexMatrix out = ComplexMatrix::Identity(n, n);
  for (int i = 0; i < k; ++i) out = out * a;
  return out;
}

InequalityCheck not_applicable(std::string id, std::string statement, std::string reason) {
  InequalityCheck c;
  c.id = std::move(id);
  c.statement = std::move(statement);
  c.status = CheckStatus::NotApplicable;
  c.margin = std::numeric_limits<double>::quiet_NaN();
  c.reason = std::move(reason);
  return c;
}

InequalityCheck psd_check(std::string id, std::string statement, const ComplexMatrix& difference, double tol) {
  InequalityCheck c;
  c.id = std::move(id);
  c.statement = std::move(statement);
  c.difference = symmetrized(difference);
  c.verdict = is_psd(c.difference, tol);
  c.margin = c.verdict->min_eigenvalue;
  c.status = c.verdict->passed ? CheckStatus::Passed : CheckStatus::Failed;
  return c;
}

ComplexMatrix identity_like(const PositiveUnitalMap& map) {
  return ComplexMatrix::Identity(map.codomain_dim(), map.codomain_dim());
}

double lambda_min(const ComplexMatrix& h) { return hermitian_eig(h).min(); }

}  // namespace

const ComplexMatrix& MomentTable::power(int k) const {
  if (k < k_min || k > k_max) {
    throw DomainError("moment table covers powers " + std::to_string(k_min) + ".." + std::to_string(k_max) +
                      ", power " + std::to_string(k) + " requested");
  }
  return blocks[static_cast<std::size_t>(k - k_min)];
}

double MomentTable::scalar(int k) const {
  if (block_dim != 1) throw DimensionError("MomentTable::scalar: table is not from a functional");
  return power(k)(0, 0).real();
}

MomentTable moment_table(const PositiveUnitalMap& map, const ComplexMatrix& a, int k_min, int k_max,
                         MomentRoute route) {
  if (k_min != 0 && k_min != -1) throw DomainError("moment_table: k_min must be -1 or 0");
  if (k_max < k_min) throw DomainError("moment_table: k_max < k_min");
  const ComplexMatrix h = hermitize(a);
  const auto spectrum = hermitian_eig(h);
  if (k_min == -1 && !(spectrum.min() > 0)) {
    throw DomainError("moment_table: negative powers need positive definite A (λ_min = " +
                      std::to_string(spectrum.min()) + ")");
  }

  MomentTable table;
  table.k_min = k_min;
  table.k_max = k_max;
  table.block_dim = map.codomain_dim();
  table.eigenvalues = spectrum.eigenvalues;
  table.m = spectrum.min();
  table.M = spectrum.max();

  if (route == MomentRoute::Spectral) {
    std::vector<ComplexMatrix> images;
    images.reserve(static_cast<std::size_t>(spectrum.size()));
    for (Eigen::Index j = 0; j < spectrum.size(); ++j) images.push_back(map.apply(spectrum.projector(j)));
    for (int k = k_min; k <= k_max; ++k) {
      ComplexMatrix acc = ComplexMatrix::Zero(table.block_dim, table.block_dim);
      for (Eigen::Index j = 0; j < spectrum.size(); ++j)
        acc += std::pow(spectrum.eigenvalues(j), k) * images[static_cast<std::size_t>(j)];
      table.blocks.push_back(k == 0 ? identity_like(map) : symmetrized(acc));
    }
  } else {
    for (int k = k_min; k <= k_max; ++k) table.blocks.push_back(symmetrized(map.apply(integer_power(h, k))));
  }
  return table;
}

MomentTable with_interval(MomentTable table, SpectralInterval interval) {
  require_contains_spectrum(table.eigenvalues, interval.m, interval.M, "with_interval");
  table.m = interval.m;
  table.M = interval.M;
  return table;
}

std::vector<double> distinct_eigenvalues(const RealVector& ascending, double rel_tol) {
  std::vector<double> out;
  if (ascending.size() == 0) return out;
  const double tol = rel_tol * std::max(1.0, ascending(ascending.size() - 1) - ascending(0));
  double sum = ascending(0);
  int count = 1;
  for (Eigen::Index i = 1; i < ascending.size(); ++i) {
    if (ascending(i) - ascending(i - 1) <= tol) {
      sum += ascending(i);
      ++count;
    } else {
      out.push_back(sum / count);
      sum = ascending(i);
      count = 1;
    }
  }
  out.push_back(sum / count);
  return out;
}

std::string_view to_string(BlockKind kind) {
  switch (kind) {
    case BlockKind::Hankel: return "hankel";
    case BlockKind::ShiftedHankel: return "hankel_shift";
    case BlockKind::LowerEndpoint: return "lower_endpoint";
    case BlockKind::UpperEndpoint: return "upper_endpoint";
    case BlockKind::InverseLowerEndpoint: return "inverse_lower_endpoint";
    case BlockKind::InverseUpperEndpoint: return "inverse_upper_endpoint";
    case BlockKind::IntervalProduct: return "interval_product";
    case BlockKind::SpectralGap: return "spectral_gap";
    case BlockKind::InverseIntervalProduct: return "inverse_interval_product";
    case BlockKind::QuarticRefinement: return "quartic_refinement";
    case BlockKind::LogLinear: return "log_linear";
    case BlockKind::LogUpper: return "log_upper";
    case BlockKind::LogLower: return "log_lower";
    case BlockKind::NormalMoment: return "normal_moment";
  }
  return "unknown";
}

std::pair<int, int> required_powers(BlockKind kind, int r) {
  int lo = 0;
  int hi = 0;
  for (const auto& f : factor_of(kind, 0, 0, 0, 0)) {
    lo = std::min(lo, f.offset);
    hi = std::max(hi, f.offset);
  }
  return {lo, 2 * r + hi};
}

BlockMatrixSpec build_block(BlockKind kind, const MomentTable& table, int r, const BlockOptions& options) {
  if (r < 0) throw DomainError("build_block: order r must be non-negative");
  const auto [lo, hi] = required_powers(kind, r);
  if (!table.covers(lo, hi)) {
    throw DomainError("build_block(" + std::string(to_string(kind)) + ", r=" + std::to_string(r) +
                      ") needs powers " + std::to_string(lo) + ".." + std::to_string(hi) + ", table has " +
                      std::to_string(table.k_min) + ".." + std::to_string(table.k_max));
  }
  require_block_preconditions(kind, table.eigenvalues);
  GapEndpoints gap;
  if (kind == BlockKind::SpectralGap) gap = resolve_gap(table.eigenvalues, options);

  const auto factor = factor_of(kind, table.m, table.M, gap.lo, gap.hi);
  const auto d = table.block_dim;
  BlockMatrixSpec spec;
  spec.kind = kind;
  spec.r = r;
  spec.assembled = assemble(r + 1, d, [&](int i, int j) {
    ComplexMatrix block = ComplexMatrix::Zero(d, d);
    for (const auto& f : factor) block += f.coeff * table.power(i + j + f.offset);
    return block;
  });
  return spec;
}

BlockMatrixSpec build_block_by_products(BlockKind kind, const PositiveUnitalMap& map, const ComplexMatrix& a,
                                        int r, SpectralInterval interval, const BlockOptions& options) {
  if (r < 0) throw DomainError("build_block_by_products: order r must be non-negative");
  const ComplexMatrix h = hermitize(a);
  const auto spectrum = hermitian_eig(h);
  require_contains_spectrum(spectrum.eigenvalues, interval.m, interval.M, "build_block_by_products");
  require_block_preconditions(kind, spectrum.eigenvalues);
  GapEndpoints gap;
  if (kind == BlockKind::SpectralGap) gap = resolve_gap(spectrum.eigenvalues, options);

  const auto n = h.rows();
  ComplexMatrix q = ComplexMatrix::Zero(n, n);
  for (const auto& f : factor_of(kind, interval.m, interval.M, gap.lo, gap.hi))
    q += f.coeff * integer_power(h, f.offset);

  const auto d = map.codomain_dim();
  BlockMatrixSpec spec;
  spec.kind = kind;
  spec.r = r;
  spec.assembled = assemble(r + 1, d, [&](int i, int j) { return ComplexMatrix(map.apply(integer_power(h, i + j) * q)); });
  return spec;
}

QuarticChain build_quartic_chain(const MomentTable& table, double m) {
  if (!(m > 0)) throw DomainError("build_quartic_chain: m must be positive");
  if (m > table.eigenvalues(0) + slack_for(table.eigenvalues)) {
    throw DomainError("build_quartic_chain: m = " + std::to_string(m) + " exceeds λ_min(A) = " +
                      std::to_string(table.eigenvalues(0)));
  }
  if (!table.covers(0, 4)) throw DomainError("build_quartic_chain: table must cover powers 0..4");
  const auto d = table.block_dim;
  auto hankel2 = [&](int shift) {
    return assemble(2, d, [&](int i, int j) { return table.power(i + j + shift); });
  };
  QuarticChain chain;
  chain.upper = hankel2(2);
  chain.middle = symmetrized(2.0 * m * hankel2(1) - m * m * hankel2(0));
  return chain;
}

ComplexMatrix build_log_linear_matrix(const PositiveUnitalMap& map, const ComplexMatrix& a) {
  const auto spectrum = hermitian_eig(a);
  if (!(spectrum.min() > 0)) throw DomainError("build_log_linear_matrix: A must be positive definite");
  using F = ScalarFunction<double>;
  const ComplexMatrix a1 = map.apply(spectral_apply(spectrum, F::power(1)));
  const ComplexMatrix a2 = map.apply(spectral_apply(spectrum, F::power(2)));
  const ComplexMatrix alog =
      map.apply(spectral_apply(spectrum, F::combination({{1.0, 1, false}, {-1.0, 0, true}})));
  const ComplexMatrix* grid[2][2] = {{&a2, &a1}, {&a1, &alog}};
  return assemble(2, map.codomain_dim(), [&](int i, int j) { return *grid[i][j]; });
}

LogMatrices build_log_matrices(const PositiveUnitalMap& map, const ComplexMatrix& a, double m, double M) {
  if (!(m > 0)) throw DomainError("build_log_matrices: m must be positive");
  if (m > M) throw DomainError("build_log_matrices: m > M");
  const auto spectrum = hermitian_eig(a);
  require_contains_spectrum(spectrum.eigenvalues, m, M, "build_log_matrices");
  if (!(spectrum.min() > 0)) throw DomainError("build_log_matrices: A must be positive definite");

  using F = ScalarFunction<double>;
  const double log_M = std::log(M);
  const double log_m = std::log(m);
  std::vector<ComplexMatrix> upper_terms;
  std::vector<ComplexMatrix> lower_terms;
  for (int p = 0; p <= 2; ++p) {
    upper_terms.push_back(map.apply(spectral_apply(spectrum, F::combination({{log_M, p, false}, {-1.0, p, true}}))));
    lower_terms.push_back(map.apply(spectral_apply(spectrum, F::combination({{1.0, p, true}, {-log_m, p, false}}))));
  }
  const auto d = map.codomain_dim();
  LogMatrices out;
  out.upper = assemble(2, d, [&](int i, int j) { return upper_terms[static_cast<std::size_t>(i + j)]; });
  out.lower = assemble(2, d, [&](int i, int j) { return lower_terms[static_cast<std::size_t>(i + j)]; });
  return out;
}

bool is_normal(const ComplexMatrix& a, double rel_tol) {
  if (a.rows() != a.cols() || !a.allFinite()) return false;
  const double norm = a.norm();
  return (a.adjoint() * a - a * a.adjoint()).norm() <= rel_tol * norm * norm;
}

ComplexMatrix build_normal_block(const PositiveUnitalMap& map, const ComplexMatrix& a) {
  require_square(a, "build_normal_block");
  if (!is_normal(a, kNormalityTolerance)) throw DomainError("build_normal_block: A is not normal");
  const ComplexMatrix as = a.adjoint();
  const ComplexMatrix asa = as * a;
  const ComplexMatrix blocks[3][3] = {
      {identity_like(map), map.apply(a), map.apply(asa)},
      {map.apply(as), map.apply(a * as), map.apply(as * asa)},
      {map.apply(asa), map.apply(asa * a), map.apply(as * asa * a)},
  };
  return assemble(3, map.codomain_dim(), [&](int i, int j) { return blocks[i][j]; });
}

ComplexMatrix scalar_lemma_oracle(double x, double y, double z, int r, LemmaKind kind) {
  if (r < 0) throw DomainError("scalar_lemma_oracle: r must be non-negative");
  if (kind == LemmaKind::LinearFactor && !(x >= y)) throw DomainError("scalar_lemma_oracle: requires x >= y");
  if (kind == LemmaKind::QuadraticFactor && !(x >= y && y >= z))
    throw DomainError("scalar_lemma_oracle: requires x >= y >= z");
  ComplexMatrix out(r + 1, r + 1);
  for (int i = 0; i <= r; ++i)
    for (int j = 0; j <= r; ++j) {
      out(i, j) = kind == LemmaKind::LinearFactor ? std::pow(x, i + j) * (x - y)
                                                  : std::pow(y, i + j) * (x - y) * (y - z);
    }
  return out;
}

std::string_view to_string(CheckStatus status) {
  switch (status) {
    case CheckStatus::Passed: return "passed";
    case CheckStatus::Failed: return "failed";
    case CheckStatus::NotApplicable: return "not applicable";
  }
  return "unknown";
}

InequalityCheck check_kadison(const PositiveUnitalMap& map, const ComplexMatrix& a, double tol) {
  const char* statement = "Phi(A^2) >= Phi(A)^2";
  if (!is_hermitian(a)) return not_applicable("kadison", statement, "requires Hermitian A");
  const ComplexMatrix h = hermitize(a);
  const ComplexMatrix p1 = symmetrized(map.apply(h));
  const ComplexMatrix p2 = symmetrized(map.apply(h * h));
  return psd_check("kadison", statement, p2 - p1 * p1, tol);
}

InequalityCheck check_variance_bound(const PositiveUnitalMap& map, const ComplexMatrix& a, SpectralInterval iv,
                                     double tol) {
  const char* statement = "Phi(A^2) - Phi(A)^2 <= ((M - m)/2)^2 I";
  if (!is_hermitian(a)) return not_applicable("variance_bound", statement, "requires Hermitian A");
  const ComplexMatrix h = hermitize(a);
  const ComplexMatrix p1 = symmetrized(map.apply(h));
  const ComplexMatrix p2 = symmetrized(map.apply(h * h));
  const double half = (iv.M - iv.m) / 2.0;
  return psd_check("variance_bound", statement, half * half * identity_like(map) - (p2 - p1 * p1), tol);
}

InequalityCheck check_variance_refined(const PositiveUnitalMap& map, const ComplexMatrix& a, SpectralInterval iv,
                                       double tol) {
  const char* statement = "Phi(A^2) - Phi(A)^2 <= (Phi(A) - mI)(MI - Phi(A))";
  if (!is_hermitian(a)) return not_applicable("variance_refined", statement, "requires Hermitian A");
  const ComplexMatrix h = hermitize(a);
  const ComplexMatrix id = identity_like(map);
  const ComplexMatrix p1 = symmetrized(map.apply(h));
  const ComplexMatrix p2 = symmetrized(map.apply(h * h));
  const ComplexMatrix rhs = (p1 - iv.m * id) * (iv.M * id - p1);
  return psd_check("variance_refined", statement, rhs - (p2 - p1 * p1), tol);
}

InequalityCheck check_inverse(const PositiveUnitalMap& map, const ComplexMatrix& a, double tol) {
  const char* statement = "Phi(A^-1) >= Phi(A)^-1";
  if (!is_hermitian(a)) return not_applicable("inverse", statement, "requires Hermitian A");
  const auto spectrum = hermitian_eig(a);
  if (!(spectrum.min() > 0)) return not_applicable("inverse", statement, "requires positive definite A");
  const ComplexMatrix inv_image = map.apply(spectral_apply(spectrum, ScalarFunction<double>::power(-1)));
  const ComplexMatrix image = symmetrized(map.apply(spectral_apply(spectrum, ScalarFunction<double>::power(1))));
  return psd_check("inverse", statement, inv_image - ComplexMatrix(image.partialPivLu().inverse()), tol);
}

InequalityCheck check_cubic_lower(const PositiveUnitalMap& map, const ComplexMatrix& a, double m, double tol) {
  const char* statement = "Phi(A^3) >= m Phi(A^2) + X (Phi(A) - mI)^-1 X, X = Phi(A^2) - m Phi(A)";
  if (!is_hermitian(a)) return not_applicable("cubic_lower", statement, "requires Hermitian A");
  const ComplexMatrix h = hermitize(a);
  const auto spectrum = hermitian_eig(h);
  if (m > spectrum.min() + slack_for(spectrum.eigenvalues))
    return not_applicable("cubic_lower", statement, "m exceeds λ_min(A)");
  const ComplexMatrix id = identity_like(map);
  const ComplexMatrix p1 = symmetrized(map.apply(h));
  const ComplexMatrix shifted = p1 - m * id;
  if (!(lambda_min(shifted) > kStrictness * std::max(1.0, p1.norm())))
    return not_applicable("cubic_lower", statement, "requires Phi(A) > mI strictly");
  const ComplexMatrix p2 = symmetrized(map.apply(h * h));
  const ComplexMatrix p3 = symmetrized(map.apply(h * h * h));
  const ComplexMatrix x = p2 - m * p1;
  return psd_check("cubic_lower", statement, p3 - m * p2 - x * shifted.partialPivLu().solve(x), tol);
}

InequalityCheck check_cubic_upper(const PositiveUnitalMap& map, const ComplexMatrix& a, double M, double tol) {
  const char* statement = "Phi(A^3) <= M Phi(A^2) - Y (MI - Phi(A))^-1 Y, Y = M Phi(A) - Phi(A^2)";
  if (!is_hermitian(a)) return not_applicable("cubic_upper", statement, "requires Hermitian A");
  const ComplexMatrix h = hermitize(a);
  const auto spectrum = hermitian_eig(h);
  if (M < spectrum.max() - slack_for(spectrum.eigenvalues))
    return not_applicable("cubic_upper", statement, "M is below λ_max(A)");
  const ComplexMatrix id = identity_like(map);
  const ComplexMatrix p1 = symmetrized(map.apply(h));
  const ComplexMatrix shifted = M * id - p1;
  if (!(lambda_min(shifted) > kStrictness * std::max(1.0, p1.norm())))
    return not_applicable("cubic_upper", statement, "requires Phi(A) < MI strictly");
  const ComplexMatrix p2 = symmetrized(map.apply(h * h));
  const ComplexMatrix p3 = symmetrized(map.apply(h * h * h));
  const ComplexMatrix y = M * p1 - p2;
  return psd_check("cubic_upper", statement, M * p2 - y * shifted.partialPivLu().solve(y) - p3, tol);
}

InequalityCheck check_normal_fourth_moment(const PositiveUnitalMap& functional, const ComplexMatrix& a,
                                           double tol) {
  const char* statement = "phi(|B|^4) >= |phi(B|B|^2)|^2 / phi(|B|^2) + phi(|B|^2)^2, B = A - phi(A)I";
  if (!functional.is_functional()) return not_applicable("normal_fourth_moment", statement, "requires a functional");
  if (!is_normal(a, kNormalityTolerance)) return not_applicable("normal_fourth_moment", statement, "requires normal A");
  const auto n = a.rows();
  const ComplexMatrix b = a - functional.functional(a) * ComplexMatrix::Identity(n, n);
  const ComplexMatrix bsb = b.adjoint() * b;
  const double s = functional.functional(bsb).real();
  const Complex t = functional.functional(b * bsb);
  const double u = functional.functional(bsb * bsb).real();
  // φ(|B|²) = 0 forces φ(B|B|²) = 0 by Cauchy–Schwarz; the quotient is taken as 0.
  const double quotient = s > 1e-12 * std::max(1.0, bsb.norm()) ? std::norm(t) / s : 0.0;
  const double slack = u - quotient - s * s;

  InequalityCheck c;
  c.id = "normal_fourth_moment";
  c.statement = statement;
  c.margin = slack;
  c.difference = ComplexMatrix::Constant(1, 1, slack);
  c.status = slack >= -tol * std::max(1.0, std::abs(u)) ? CheckStatus::Passed : CheckStatus::Failed;
  return c;
}

std::vector<InequalityCheck> scalar_checks(const PositiveUnitalMap& map, const ComplexMatrix& a,
                                           std::optional<SpectralInterval> interval, double tol) {
  std::vector<InequalityCheck> out;
  if (is_hermitian(a)) {
    const auto spectrum = hermitian_eig(a);
    const SpectralInterval iv = interval.value_or(SpectralInterval{spectrum.min(), spectrum.max()});
    require_contains_spectrum(spectrum.eigenvalues, iv.m, iv.M, "scalar_checks");
    out.push_back(check_kadison(map, a, tol));
    out.push_back(check_variance_bound(map, a, iv, tol));
    out.push_back(check_variance_refined(map, a, iv, tol));
    out.push_back(check_inverse(map, a, tol));
    out.push_back(check_cubic_lower(map, a, iv.m, tol));
    out.push_back(check_cubic_upper(map, a, iv.M, tol));
  } else {
    for (const char* id : {"kadison", "variance_bound", "variance_refined", "inverse", "cubic_lower", "cubic_upper"})
      out.push_back(not_applicable(id, "", "requires Hermitian A"));
  }
  out.push_back(check_normal_fourth_moment(map, a, tol));
  return out;
}

}  // namespace momenta
