#pragma once

// Verification campaigns: seeded random instances, the full battery of block
// and inequality checks per instance, and the JSON report.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "momenta/linalg.hpp"
#include "momenta/maps.hpp"

namespace momenta {

/// U diag(λ) U* with λ uniform in [lo, hi] and U = random_unitary(n, seed).
ComplexMatrix random_hermitian(Eigen::Index n, std::uint64_t seed, double lo = -3.0, double hi = 3.0);

/// U diag(λ) U* with complex λ in the square [-2, 2]².
ComplexMatrix random_normal(Eigen::Index n, std::uint64_t seed);

/// U diag(λ) U* with the given spectrum.
ComplexMatrix with_spectrum(const RealVector& eigenvalues, std::uint64_t seed);

/// Shifts A by a multiple of I so that λ_min lands in [0.1, 1.1).
ComplexMatrix shifted_positive_definite(const ComplexMatrix& a, std::uint64_t seed);

struct Instance {
  std::uint64_t seed = 0;
  ComplexMatrix a;
  PositiveUnitalMap map;
};

struct InstanceSpec {
  Eigen::Index n_lo = 2;
  Eigen::Index n_hi = 6;
  /// Fixed map kind; when empty the kind cycles through all six with the seed.
  std::optional<MapKind> map_kind;
  /// Fixed codomain size for compressions/mixtures; random in [1, n] otherwise.
  std::optional<Eigen::Index> codomain;
  /// Odd seeds give positive definite instances.
  bool alternate_definite = true;
};

/// Everything about the instance is a function of `seed` alone.
Instance random_instance(std::uint64_t seed, const InstanceSpec& spec);

struct CheckRecord {
  std::string check;
  std::string citation;
  std::optional<bool> passed;  // empty when skipped
  double margin = 0;           // NaN when skipped
  std::uint64_t seed = 0;
  std::string reason;

  bool skipped() const { return !passed.has_value(); }
  bool failed() const { return passed.has_value() && !*passed; }
};

struct CampaignOptions {
  double tolerance = kDefaultPsdTolerance;
  int r_max = 3;
};

/// Every block construction and inequality that applies to (map, A); checks
/// whose hypotheses fail are returned as skipped records.
std::vector<CheckRecord> verify_instance(const PositiveUnitalMap& map, const ComplexMatrix& a, std::uint64_t seed,
                                         const CampaignOptions& options);

struct ReportSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t skipped = 0;
  std::size_t failed = 0;
  double worst_margin = 0;  // NaN when nothing was applicable
};

ReportSummary summarize(const std::vector<CheckRecord>& records);

/// Sorts by (check, seed), stable.
void sort_records(std::vector<CheckRecord>& records);

nlohmann::ordered_json report_json(const nlohmann::ordered_json& config, const std::vector<CheckRecord>& records);

}  // namespace momenta
