#pragma once

// Moment tables Φ(A^k) and the positive semidefinite block matrices built
// from them. Block indices are 0-based throughout: the (i,j) block of a
// Hankel-type matrix of order r uses the power i+j, 0 ≤ i,j ≤ r.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "momenta/linalg.hpp"
#include "momenta/maps.hpp"

namespace momenta {

enum class MomentRoute {
  Spectral,  // Σ_j λ_j^k Φ(v_j v_j*)
  Direct,    // Φ(A^k) from explicit matrix products (LU inverse for k = -1)
};

struct SpectralInterval {
  double m = 0;
  double M = 0;
};

struct MomentTable {
  int k_min = 0;
  int k_max = 0;
  std::vector<ComplexMatrix> blocks;  // blocks[k - k_min] = Φ(A^k)
  double m = 0;
  double M = 0;
  Eigen::Index block_dim = 0;
  RealVector eigenvalues;  // spectrum of A, ascending

  const ComplexMatrix& power(int k) const;
  bool covers(int lo, int hi) const { return lo >= k_min && hi <= k_max; }
  /// Φ(A^k) as a real number; functionals only.
  double scalar(int k) const;
};

MomentTable moment_table(const PositiveUnitalMap& map, const ComplexMatrix& a, int k_min, int k_max,
                         MomentRoute route = MomentRoute::Spectral);

/// Replaces [m, M] by a wider interval. Throws DomainError when the new
/// interval does not contain the spectrum.
MomentTable with_interval(MomentTable table, SpectralInterval interval);

/// Distinct values of an ascending spectrum; values closer than
/// rel_tol·max(1, λ_max − λ_min) are merged.
std::vector<double> distinct_eigenvalues(const RealVector& ascending, double rel_tol = 1e-8);

enum class BlockKind {
  Hankel,                  // [Φ(A^{i+j})]
  ShiftedHankel,           // [Φ(A^{i+j+1})], A ≥ 0
  LowerEndpoint,           // [Φ(A^{i+j+1}) - mΦ(A^{i+j})]
  UpperEndpoint,           // [MΦ(A^{i+j}) - Φ(A^{i+j+1})]
  InverseLowerEndpoint,    // [Φ(A^{i+j}) - mΦ(A^{i+j-1})], A > 0
  InverseUpperEndpoint,    // [MΦ(A^{i+j-1}) - Φ(A^{i+j})], A > 0
  IntervalProduct,         // [Φ(A^{i+j}(A - m)(M - A))]
  SpectralGap,             // [Φ(A^{i+j}(A - λ_{g-1})(A - λ_g))]
  InverseIntervalProduct,  // [Φ(A^{i+j-1}(A - m)(M - A))], A > 0
  QuarticRefinement,
  LogLinear,
  LogUpper,
  LogLower,
  NormalMoment,
};

std::string_view to_string(BlockKind kind);

/// Kinds assembled from a moment table by build_block().
inline constexpr BlockKind kTableBlockKinds[] = {
    BlockKind::Hankel,          BlockKind::ShiftedHankel,        BlockKind::LowerEndpoint,
    BlockKind::UpperEndpoint,   BlockKind::InverseLowerEndpoint, BlockKind::InverseUpperEndpoint,
    BlockKind::IntervalProduct, BlockKind::SpectralGap,          BlockKind::InverseIntervalProduct};

struct BlockMatrixSpec {
  BlockKind kind = BlockKind::Hankel;
  int r = 0;
  ComplexMatrix assembled;
};

struct BlockOptions {
  /// 1-based index g of the gap (λ_{g-1}, λ_g) between consecutive distinct eigenvalues.
  std::optional<int> gap_index;
  /// Distinct eigenvalues, ascending; derived from the table when empty.
  std::vector<double> eigenvalues;
};

/// Power range [lo, hi] of the table that build_block(kind, ·, r) reads.
std::pair<int, int> required_powers(BlockKind kind, int r);

BlockMatrixSpec build_block(BlockKind kind, const MomentTable& table, int r, const BlockOptions& options = {});

/// Assembles the same kinds as build_block by applying Φ to the product
/// matrix A^p·q(A) instead of expanding it over the moment table.
BlockMatrixSpec build_block_by_products(BlockKind kind, const PositiveUnitalMap& map, const ComplexMatrix& a,
                                        int r, SpectralInterval interval, const BlockOptions& options = {});

struct QuarticChain {
  ComplexMatrix upper;   // [[Φ(A²), Φ(A³)], [Φ(A³), Φ(A⁴)]]
  ComplexMatrix middle;  // 2m·[[Φ(A), Φ(A²)], [Φ(A²), Φ(A³)]] - m²·[[I, Φ(A)], [Φ(A), Φ(A²)]]
};

/// Both upper - middle and middle are PSD when 0 < m ≤ λ_min(A).
QuarticChain build_quartic_chain(const MomentTable& table, double m);

/// [[Φ(A²), Φ(A)], [Φ(A), Φ(A - log A)]] for A > 0.
ComplexMatrix build_log_linear_matrix(const PositiveUnitalMap& map, const ComplexMatrix& a);

struct LogMatrices {
  ComplexMatrix upper;  // built from log M - log x
  ComplexMatrix lower;  // built from log x - log m
};

/// Two 2×2 block matrices from (log M)·A^p - A^p log A and A^p log A - (log m)·A^p, p = 0, 1, 2.
LogMatrices build_log_matrices(const PositiveUnitalMap& map, const ComplexMatrix& a, double m, double M);

/// 3×3 block moment matrix of a normal A built from direct products:
/// [[I, Φ(A), Φ(A*A)], [Φ(A*), Φ(AA*), Φ(A*²A)], [Φ(A*A), Φ(A*A²), Φ(A*²A²)]].
ComplexMatrix build_normal_block(const PositiveUnitalMap& map, const ComplexMatrix& a);

bool is_normal(const ComplexMatrix& a, double rel_tol = 1e-8);

enum class LemmaKind {
  LinearFactor,     // [x^{i+j}(x - y)], x ≥ y
  QuadraticFactor,  // [y^{i+j}(x - y)(y - z)], x ≥ y ≥ z
};

/// Scalar (r+1)×(r+1) Schur-product matrices behind the block constructions.
ComplexMatrix scalar_lemma_oracle(double x, double y, double z, int r, LemmaKind kind);

enum class CheckStatus { Passed, Failed, NotApplicable };

std::string_view to_string(CheckStatus status);

struct InequalityCheck {
  std::string id;
  std::string statement;
  CheckStatus status = CheckStatus::NotApplicable;
  /// Minimum eigenvalue of the difference (or scalar slack); NaN when not applicable.
  double margin = 0;
  std::optional<Verdict> verdict;
  ComplexMatrix difference;
  std::string reason;
};

/// Kadison, the two Bhatia–Davis variance bounds, the inverse inequality
/// Φ(A⁻¹) ≥ Φ(A)⁻¹, the two Schur-complement bounds on Φ(A³), and (for
/// functionals) the fourth-moment bound for normal A. Inapplicable checks
/// are reported, not thrown.
std::vector<InequalityCheck> scalar_checks(const PositiveUnitalMap& map, const ComplexMatrix& a,
                                           std::optional<SpectralInterval> interval = std::nullopt,
                                           double tol = kDefaultPsdTolerance);

/// The individual checks, exposed for direct use.
InequalityCheck check_kadison(const PositiveUnitalMap& map, const ComplexMatrix& a, double tol);
InequalityCheck check_variance_bound(const PositiveUnitalMap& map, const ComplexMatrix& a, SpectralInterval iv,
                                     double tol);
InequalityCheck check_variance_refined(const PositiveUnitalMap& map, const ComplexMatrix& a, SpectralInterval iv,
                                       double tol);
InequalityCheck check_inverse(const PositiveUnitalMap& map, const ComplexMatrix& a, double tol);
InequalityCheck check_cubic_lower(const PositiveUnitalMap& map, const ComplexMatrix& a, double m, double tol);
InequalityCheck check_cubic_upper(const PositiveUnitalMap& map, const ComplexMatrix& a, double M, double tol);
InequalityCheck check_normal_fourth_moment(const PositiveUnitalMap& functional, const ComplexMatrix& a, double tol);

}  // namespace momenta
