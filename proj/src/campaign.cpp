#include "momenta/campaign.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "momenta/eigenbounds.hpp"
#include "momenta/moments.hpp"

namespace momenta {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kRouteTolerance = 1e-8;
constexpr double kIdentityTolerance = 1e-10;
constexpr double kBoundTolerance = 1e-8;

std::string citation_for(BlockKind kind) {
  switch (kind) {
    case BlockKind::Hankel: return "[Phi(A^{i+j-2})] >= 0";
    case BlockKind::ShiftedHankel: return "[Phi(A^{i+j-1})] >= 0 for A >= 0";
    case BlockKind::LowerEndpoint: return "[Phi(A^{i+j-1}) - m Phi(A^{i+j-2})] >= 0";
    case BlockKind::UpperEndpoint: return "[M Phi(A^{i+j-2}) - Phi(A^{i+j-1})] >= 0";
    case BlockKind::InverseLowerEndpoint: return "[Phi(A^{i+j-2}) - m Phi(A^{i+j-3})] >= 0 for A > 0";
    case BlockKind::InverseUpperEndpoint: return "[M Phi(A^{i+j-3}) - Phi(A^{i+j-2})] >= 0 for A > 0";
    case BlockKind::IntervalProduct: return "[Phi(A^{i+j-2}(A - mI)(MI - A))] >= 0";
    case BlockKind::SpectralGap: return "[Phi(A^{i+j-2}(A - l_{g-1}I)(A - l_gI))] >= 0";
    case BlockKind::InverseIntervalProduct: return "[Phi(A^{i+j-3}(A - mI)(MI - A))] >= 0 for A > 0";
    case BlockKind::QuarticRefinement:
      return "[[Phi(A^2),Phi(A^3)],[Phi(A^3),Phi(A^4)]] >= 2m[[Phi(A),Phi(A^2)],[Phi(A^2),Phi(A^3)]] - "
             "m^2[[I,Phi(A)],[Phi(A),Phi(A^2)]] >= 0";
    case BlockKind::LogLinear: return "[[Phi(A^2),Phi(A)],[Phi(A),Phi(A - log A)]] >= 0 for A > 0";
    case BlockKind::LogUpper: return "[Phi(A^{i+j-2}(log M - log A))] >= 0";
    case BlockKind::LogLower: return "[Phi(A^{i+j-2}(log A - log m))] >= 0";
    case BlockKind::NormalMoment: return "[[I,Phi(A),Phi(A*A)],[Phi(A*),Phi(AA*),Phi(A*^2A)],"
                                         "[Phi(A*A),Phi(A*A^2),Phi(A*^2A^2)]] >= 0 for normal A";
  }
  return "";
}

class Recorder {
 public:
  Recorder(std::uint64_t seed, double tol) : seed_(seed), tol_(tol) {}

  void psd(std::string check, std::string citation, const ComplexMatrix& m) {
    const auto v = is_psd(m, tol_);
    add(std::move(check), std::move(citation), v.passed, v.min_eigenvalue);
  }

  void add(std::string check, std::string citation, bool passed, double margin) {
    records_.push_back({std::move(check), std::move(citation), passed, margin, seed_, {}});
  }

  void skip(std::string check, std::string citation, std::string reason) {
    records_.push_back({std::move(check), std::move(citation), std::nullopt, kNaN, seed_, std::move(reason)});
  }

  /// Runs `body`; a DomainError from a violated hypothesis becomes a skip.
  template <typename Body>
  void guarded(const std::string& check, const std::string& citation, Body&& body) {
    try {
      body();
    } catch (const DomainError& e) {
      skip(check, citation, e.what());
    }
  }

  std::vector<CheckRecord> take() { return std::move(records_); }

 private:
  std::uint64_t seed_;
  double tol_;
  std::vector<CheckRecord> records_;
};

std::string with_r(BlockKind kind, int r) { return std::string(to_string(kind)) + "/r=" + std::to_string(r); }

void hermitian_checks(Recorder& rec, const PositiveUnitalMap& map, const ComplexMatrix& a,
                      const CampaignOptions& options) {
  const auto spectrum = hermitian_eig(a);
  const bool definite = spectrum.min() > 0;
  const int r_max = options.r_max;
  const int k_min = definite ? -1 : 0;
  const int k_max = 2 * r_max + 2;

  const MomentTable table = moment_table(map, a, k_min, k_max, MomentRoute::Spectral);
  const MomentTable direct = moment_table(map, a, k_min, k_max, MomentRoute::Direct);
  // Φ(A^k) can cancel to ~0 (odd moments of a symmetric spectrum), so errors
  // are measured against ρ(A)^k, the size of the terms being summed.
  const double radius = spectrum.eigenvalues.cwiseAbs().maxCoeff();
  double route_error = 0;
  for (int k = k_min; k <= k_max; ++k) {
    const double scale = std::max({1.0, std::pow(radius, k), direct.power(k).norm()});
    route_error = std::max(route_error, (table.power(k) - direct.power(k)).norm() / scale);
  }
  rec.add("route_equivalence", "sum_j l_j^k Phi(P_j) = Phi(A^k)", route_error <= kRouteTolerance, -route_error);

  const auto distinct = distinct_eigenvalues(spectrum.eigenvalues);
  for (int r = 0; r <= r_max; ++r) {
    for (BlockKind kind : kTableBlockKinds) {
      const auto citation = citation_for(kind);
      if (kind == BlockKind::SpectralGap) {
        if (distinct.size() < 2) {
          rec.skip(with_r(kind, r), citation, "requires at least two distinct eigenvalues");
          continue;
        }
        for (int g = 2; g <= static_cast<int>(distinct.size()); ++g) {
          const auto id = std::string("spectral_gap/g=") + std::to_string(g) + "/r=" + std::to_string(r);
          rec.guarded(id, citation, [&] {
            rec.psd(id, citation, build_block(kind, table, r, {g, distinct}).assembled);
          });
        }
        continue;
      }
      const bool needs_definite = kind == BlockKind::InverseLowerEndpoint ||
                                  kind == BlockKind::InverseUpperEndpoint ||
                                  kind == BlockKind::InverseIntervalProduct;
      if (needs_definite && !definite) {
        rec.skip(with_r(kind, r), citation, "requires positive definite A");
        continue;
      }
      if (kind == BlockKind::ShiftedHankel && spectrum.min() < 0) {
        rec.skip(with_r(kind, r), citation, "requires positive semidefinite A");
        continue;
      }
      rec.guarded(with_r(kind, r), citation,
                  [&] { rec.psd(with_r(kind, r), citation, build_block(kind, table, r).assembled); });
    }

    const ComplexMatrix lower = build_block(BlockKind::LowerEndpoint, table, r).assembled;
    const ComplexMatrix upper = build_block(BlockKind::UpperEndpoint, table, r).assembled;
    const ComplexMatrix hankel = (table.M - table.m) * build_block(BlockKind::Hankel, table, r).assembled;
    const double err = (lower + upper - hankel).cwiseAbs().maxCoeff() / std::max(1.0, hankel.cwiseAbs().maxCoeff());
    rec.add("endpoint_sum/r=" + std::to_string(r), "lower + upper endpoint blocks = (M - m) [Phi(A^{i+j-2})]",
            err <= kIdentityTolerance, -err);
  }

  for (auto& check : scalar_checks(map, a, SpectralInterval{table.m, table.M}, options.tolerance)) {
    if (check.status == CheckStatus::NotApplicable)
      rec.skip(check.id, check.statement, check.reason);
    else
      rec.add(check.id, check.statement, check.status == CheckStatus::Passed, check.margin);
  }

  const auto quartic = citation_for(BlockKind::QuarticRefinement);
  const auto log_linear = citation_for(BlockKind::LogLinear);
  const auto log_upper = citation_for(BlockKind::LogUpper);
  const auto log_lower = citation_for(BlockKind::LogLower);
  if (definite) {
    const auto chain = build_quartic_chain(table, table.m);
    rec.psd("quartic_refinement/difference", quartic, chain.upper - chain.middle);
    rec.psd("quartic_refinement/middle", quartic, chain.middle);
    rec.psd("log_linear", log_linear, build_log_linear_matrix(map, a));
    const auto logs = build_log_matrices(map, a, table.m, table.M);
    rec.psd("log_upper", log_upper, logs.upper);
    rec.psd("log_lower", log_lower, logs.lower);
  } else {
    rec.skip("quartic_refinement/difference", quartic, "requires positive definite A");
    rec.skip("quartic_refinement/middle", quartic, "requires positive definite A");
    rec.skip("log_linear", log_linear, "requires positive definite A");
    rec.skip("log_upper", log_upper, "requires positive definite A");
    rec.skip("log_lower", log_lower, "requires positive definite A");
  }

  const char* validity = "lambda_min <= phi(A) + smallest root, lambda_max >= phi(A) + largest root";
  const char* signs = "cubic(mu_min) <= 0 <= cubic(mu_max)";
  const char* determinant = "det[b_{i+j+1} - a b_{i+j}] = gamma * cubic(a)";
  if (!map.is_functional()) {
    for (const char* id : {"eigen_bounds/validity", "eigen_bounds/signs", "eigen_bounds/determinant"})
      rec.skip(id, validity, "requires a functional");
    return;
  }
  const auto report = spectral_bounds(map, a);
  if (report.degenerate) {
    rec.skip("eigen_bounds/validity", validity, "degenerate: at most two spectral atoms");
    rec.skip("eigen_bounds/signs", signs, "degenerate: at most two spectral atoms");
    rec.skip("eigen_bounds/determinant", determinant, "degenerate: at most two spectral atoms");
    return;
  }
  const double margin =
      std::min(*report.lambda_min_upper - spectrum.min(), spectrum.max() - *report.lambda_max_lower);
  rec.add("eigen_bounds/validity", validity, margin >= -kBoundTolerance, margin);

  const auto& c = report.cubic;
  const double mu_min = spectrum.min() - report.moments.mean;
  const double mu_max = spectrum.max() - report.moments.mean;
  const double scale = std::max({1.0, std::abs(c.c2), std::abs(c.c1), std::abs(c.c0)}) *
                       std::pow(std::max({1.0, std::abs(mu_min), std::abs(mu_max)}), 3);
  const double sign_margin =
      std::min(-evaluate_cubic(c.c2, c.c1, c.c0, mu_min), evaluate_cubic(c.c2, c.c1, c.c0, mu_max)) / scale;
  rec.add("eigen_bounds/signs", signs, sign_margin >= -kBoundTolerance, sign_margin);

  double det_error = 0;
  for (double t : {-2.0, -0.5, 0.0, 0.75, 1.5}) {
    const double x = t * std::max(1.0, std::abs(mu_min) + std::abs(mu_max));
    const double lhs = determinant_oracle(report.moments, x);
    const double rhs = c.gamma * evaluate_cubic(c.c2, c.c1, c.c0, x);
    det_error = std::max(det_error, std::abs(lhs - rhs) / std::max(1.0, determinant_scale(report.moments, x)));
  }
  rec.add("eigen_bounds/determinant", determinant, det_error <= kBoundTolerance, -det_error);
}

}  // namespace

ComplexMatrix with_spectrum(const RealVector& eigenvalues, std::uint64_t seed) {
  const ComplexMatrix u = random_unitary(eigenvalues.size(), seed);
  const ComplexMatrix a = u * eigenvalues.cast<Complex>().asDiagonal() * u.adjoint();
  return (a + a.adjoint()) / 2.0;
}

ComplexMatrix random_hermitian(Eigen::Index n, std::uint64_t seed, double lo, double hi) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> dist(lo, hi);
  RealVector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) lambda(i) = dist(rng);
  return with_spectrum(lambda, seed);
}

ComplexMatrix random_normal(Eigen::Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_real_distribution<double> dist(-2.0, 2.0);
  ComplexVector lambda(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = dist(rng);
    const double im = dist(rng);
    lambda(i) = {re, im};
  }
  const ComplexMatrix u = random_unitary(n, seed);
  return u * lambda.asDiagonal() * u.adjoint();
}

ComplexMatrix shifted_positive_definite(const ComplexMatrix& a, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5bd1e995ULL);
  std::uniform_real_distribution<double> dist(0.1, 1.1);
  const double target = dist(rng);
  const double lmin = hermitian_eig(a).min();
  return a + (target - lmin) * ComplexMatrix::Identity(a.rows(), a.cols());
}

Instance random_instance(std::uint64_t seed, const InstanceSpec& spec) {
  if (spec.n_lo < 1 || spec.n_hi < spec.n_lo) throw DomainError("random_instance: invalid dimension range");
  std::mt19937_64 rng(seed);
  const auto span = static_cast<std::uint64_t>(spec.n_hi - spec.n_lo + 1);
  const Eigen::Index n = spec.n_lo + static_cast<Eigen::Index>(rng() % span);
  const MapKind kind = spec.map_kind.value_or(kAllMapKinds[seed % 6]);
  const Eigen::Index k = spec.codomain ? std::min(*spec.codomain, n) : 1 + static_cast<Eigen::Index>(rng() % n);

  ComplexMatrix a = random_hermitian(n, seed);
  if (spec.alternate_definite && seed % 2 == 1) a = shifted_positive_definite(a, seed);
  return {seed, std::move(a), random_map(kind, n, k, seed + 1)};
}

std::vector<CheckRecord> verify_instance(const PositiveUnitalMap& map, const ComplexMatrix& a, std::uint64_t seed,
                                         const CampaignOptions& options) {
  Recorder rec(seed, options.tolerance);
  if (is_hermitian(a)) {
    hermitian_checks(rec, map, hermitize(a), options);
  } else {
    for (BlockKind kind : kTableBlockKinds)
      rec.skip(std::string(to_string(kind)), citation_for(kind), "requires Hermitian A");
    for (const char* id : {"quartic_refinement", "log_linear", "log_upper", "log_lower", "eigen_bounds"})
      rec.skip(id, "", "requires Hermitian A");
    for (auto& check : scalar_checks(map, a, std::nullopt, options.tolerance)) {
      if (check.status == CheckStatus::NotApplicable)
        rec.skip(check.id, check.statement, check.reason);
      else
        rec.add(check.id, check.statement, check.status == CheckStatus::Passed, check.margin);
    }
  }

  const auto citation = citation_for(BlockKind::NormalMoment);
  if (is_normal(a)) {
    rec.psd("normal_moment", citation, build_normal_block(map, a));
  } else {
    rec.skip("normal_moment", citation, "requires normal A");
  }
  return rec.take();
}

ReportSummary summarize(const std::vector<CheckRecord>& records) {
  ReportSummary s;
  s.total = records.size();
  s.worst_margin = kNaN;
  for (const auto& r : records) {
    if (r.skipped()) {
      ++s.skipped;
      continue;
    }
    if (*r.passed) ++s.passed;
    else ++s.failed;
    if (std::isnan(s.worst_margin) || r.margin < s.worst_margin) s.worst_margin = r.margin;
  }
  return s;
}

void sort_records(std::vector<CheckRecord>& records) {
  std::stable_sort(records.begin(), records.end(), [](const CheckRecord& x, const CheckRecord& y) {
    return x.check != y.check ? x.check < y.check : x.seed < y.seed;
  });
}

nlohmann::ordered_json report_json(const nlohmann::ordered_json& config, const std::vector<CheckRecord>& records) {
  using nlohmann::ordered_json;
  ordered_json out;
  out["config"] = config;
  ordered_json list = ordered_json::array();
  for (const auto& r : records) {
    ordered_json item;
    item["check"] = r.check;
    item["citation"] = r.citation;
    item["passed"] = r.passed ? ordered_json(*r.passed) : ordered_json(nullptr);
    item["margin"] = std::isnan(r.margin) ? ordered_json(nullptr) : ordered_json(r.margin);
    item["seed"] = r.seed;
    if (!r.reason.empty()) item["reason"] = r.reason;
    list.push_back(std::move(item));
  }
  out["records"] = std::move(list);
  const auto s = summarize(records);
  out["summary"] = {{"total", s.total},
                    {"passed", s.passed},
                    {"skipped", s.skipped},
                    {"worst_margin", std::isnan(s.worst_margin) ? ordered_json(nullptr) : ordered_json(s.worst_margin)}};
  return out;
}

}  // namespace momenta
