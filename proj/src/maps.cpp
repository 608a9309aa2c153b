#include "momenta/maps.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace momenta {

namespace {

constexpr double kUnitalityTolerance = 1e-10;
constexpr double kUnitVectorTolerance = 1e-12;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double isometry_defect(const ComplexMatrix& v) {
  return (v.adjoint() * v - ComplexMatrix::Identity(v.cols(), v.cols())).norm();
}

// Structural problems of the descriptor, independent of unitality.
std::vector<std::string> structural_failures(const PositiveUnitalMap::Variant& rep) {
  std::vector<std::string> out;
  std::visit(
      Overloaded{
          [&](const map_kinds::Identity& m) {
            if (m.n < 1) out.emplace_back("identity: dimension must be positive");
          },
          [&](const map_kinds::Compression& m) {
            if (m.v.size() == 0) out.emplace_back("compression: empty V");
            else if (m.v.cols() > m.v.rows()) out.emplace_back("compression: V has more columns than rows");
            else if (isometry_defect(m.v) > kUnitalityTolerance)
              out.emplace_back("compression: V is not an isometry (||V*V - I||_F = " +
                               std::to_string(isometry_defect(m.v)) + ")");
          },
          [&](const map_kinds::Mixture& m) {
            if (m.components.empty()) {
              out.emplace_back("mixture: no components");
              return;
            }
            const auto rows = m.components.front().v.rows();
            const auto cols = m.components.front().v.cols();
            for (std::size_t i = 0; i < m.components.size(); ++i) {
              const auto& c = m.components[i];
              if (!(c.weight > 0)) out.emplace_back("mixture: weight " + std::to_string(i) + " is not positive");
              if (c.v.rows() != rows || c.v.cols() != cols)
                out.emplace_back("mixture: component " + std::to_string(i) + " has mismatched shape");
              else if (isometry_defect(c.v) > kUnitalityTolerance)
                out.emplace_back("mixture: component " + std::to_string(i) + " is not an isometry");
            }
          },
          [&](const map_kinds::Pinching& m) {
            if (m.n < 1) {
              out.emplace_back("pinching: dimension must be positive");
              return;
            }
            std::vector<int> seen(static_cast<std::size_t>(m.n), 0);
            for (const auto& block : m.blocks) {
              if (block.empty()) out.emplace_back("pinching: empty block");
              for (auto idx : block) {
                if (idx < 0 || idx >= m.n) out.emplace_back("pinching: index out of range");
                else ++seen[static_cast<std::size_t>(idx)];
              }
            }
            if (std::any_of(seen.begin(), seen.end(), [](int c) { return c != 1; }))
              out.emplace_back("pinching: blocks do not partition {0..n-1}");
          },
          [&](const map_kinds::VectorState& m) {
            if (m.x.size() == 0) out.emplace_back("vector state: empty vector");
            else if (std::abs(m.x.norm() - 1.0) > kUnitVectorTolerance)
              out.emplace_back("vector state: ||x|| = " + std::to_string(m.x.norm()) + " is not 1");
          },
          [&](const map_kinds::NormalizedTrace& m) {
            if (m.n < 1) out.emplace_back("normalized trace: dimension must be positive");
          },
      },
      rep);
  return out;
}

PositiveUnitalMap checked(PositiveUnitalMap::Variant rep) {
  PositiveUnitalMap map(std::move(rep));
  auto failures = structural_failures(map.variant());
  if (failures.empty()) {
    const auto n = map.domain_dim();
    const double err = (map.apply(ComplexMatrix::Identity(n, n)) -
                        ComplexMatrix::Identity(map.codomain_dim(), map.codomain_dim()))
                           .norm();
    if (err > kUnitalityTolerance) failures.push_back("map is not unital: ||Φ(I) - I||_F = " + std::to_string(err));
  }
  if (!failures.empty()) throw DomainError(failures.front());
  return map;
}

}  // namespace

std::string_view to_string(MapKind kind) {
  switch (kind) {
    case MapKind::Identity: return "identity";
    case MapKind::Compression: return "compression";
    case MapKind::Mixture: return "mixture";
    case MapKind::Pinching: return "pinching";
    case MapKind::VectorState: return "vector-state";
    case MapKind::NormalizedTrace: return "trace";
  }
  return "unknown";
}

PositiveUnitalMap PositiveUnitalMap::identity(Eigen::Index n) { return checked(map_kinds::Identity{n}); }

PositiveUnitalMap PositiveUnitalMap::compression(ComplexMatrix v) {
  return checked(map_kinds::Compression{std::move(v)});
}

PositiveUnitalMap PositiveUnitalMap::mixture(std::vector<map_kinds::Mixture::Component> components) {
  return checked(map_kinds::Mixture{std::move(components)});
}

PositiveUnitalMap PositiveUnitalMap::pinching(Eigen::Index n, std::vector<std::vector<Eigen::Index>> blocks) {
  return checked(map_kinds::Pinching{n, std::move(blocks)});
}

PositiveUnitalMap PositiveUnitalMap::vector_state(ComplexVector x) {
  return checked(map_kinds::VectorState{std::move(x)});
}

PositiveUnitalMap PositiveUnitalMap::normalized_trace(Eigen::Index n) {
  return checked(map_kinds::NormalizedTrace{n});
}

MapKind PositiveUnitalMap::kind() const { return static_cast<MapKind>(rep_.index()); }

Eigen::Index PositiveUnitalMap::domain_dim() const {
  return std::visit(Overloaded{
                        [](const map_kinds::Identity& m) { return m.n; },
                        [](const map_kinds::Compression& m) { return m.v.rows(); },
                        [](const map_kinds::Mixture& m) {
                          return m.components.empty() ? Eigen::Index(0) : m.components.front().v.rows();
                        },
                        [](const map_kinds::Pinching& m) { return m.n; },
                        [](const map_kinds::VectorState& m) { return m.x.size(); },
                        [](const map_kinds::NormalizedTrace& m) { return m.n; },
                    },
                    rep_);
}

Eigen::Index PositiveUnitalMap::codomain_dim() const {
  return std::visit(Overloaded{
                        [](const map_kinds::Identity& m) { return m.n; },
                        [](const map_kinds::Compression& m) { return m.v.cols(); },
                        [](const map_kinds::Mixture& m) {
                          return m.components.empty() ? Eigen::Index(0) : m.components.front().v.cols();
                        },
                        [](const map_kinds::Pinching& m) { return m.n; },
                        [](const map_kinds::VectorState&) { return Eigen::Index(1); },
                        [](const map_kinds::NormalizedTrace&) { return Eigen::Index(1); },
                    },
                    rep_);
}

ComplexMatrix PositiveUnitalMap::apply(const ComplexMatrix& a) const {
  const auto n = domain_dim();
  if (a.rows() != n || a.cols() != n) {
    throw DimensionError("map " + std::string(to_string(kind())) + " expects a " + std::to_string(n) + "x" +
                         std::to_string(n) + " argument, got " + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  }
  return std::visit(Overloaded{
                        [&](const map_kinds::Identity&) -> ComplexMatrix { return a; },
                        [&](const map_kinds::Compression& m) -> ComplexMatrix { return m.v.adjoint() * a * m.v; },
                        [&](const map_kinds::Mixture& m) -> ComplexMatrix {
                          ComplexMatrix out = ComplexMatrix::Zero(codomain_dim(), codomain_dim());
                          for (const auto& c : m.components) out += c.weight * (c.v.adjoint() * a * c.v);
                          return out;
                        },
                        [&](const map_kinds::Pinching& m) -> ComplexMatrix {
                          ComplexMatrix out = ComplexMatrix::Zero(n, n);
                          for (const auto& block : m.blocks)
                            for (auto i : block)
                              for (auto j : block) out(i, j) = a(i, j);
                          return out;
                        },
                        [&](const map_kinds::VectorState& m) -> ComplexMatrix {
                          ComplexMatrix out(1, 1);
                          out(0, 0) = m.x.dot(a * m.x);
                          return out;
                        },
                        [&](const map_kinds::NormalizedTrace&) -> ComplexMatrix {
                          ComplexMatrix out(1, 1);
                          out(0, 0) = a.trace() / static_cast<double>(n);
                          return out;
                        },
                    },
                    rep_);
}

Complex PositiveUnitalMap::functional(const ComplexMatrix& a) const {
  if (!is_functional()) throw DimensionError("map " + std::string(to_string(kind())) + " is not a functional");
  return apply(a)(0, 0);
}

MapValidation validate(const PositiveUnitalMap& map, std::uint64_t seed) {
  MapValidation report;
  report.failures = structural_failures(map.variant());

  const auto n = map.domain_dim();
  const auto k = map.codomain_dim();
  try {
    report.unitality_error = (map.apply(ComplexMatrix::Identity(n, n)) - ComplexMatrix::Identity(k, k)).norm();
  } catch (const std::exception& e) {
    report.failures.emplace_back(std::string("unitality check raised: ") + e.what());
    return report;
  }
  report.unital = report.unitality_error <= kUnitalityTolerance;
  if (!report.unital)
    report.failures.push_back("map is not unital: ||Φ(I) - I||_F = " + std::to_string(report.unitality_error));

  if (n < 1 || k < 1) return report;
  report.positive = true;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix c(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
      for (Eigen::Index i = 0; i < n; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        c(i, j) = {re, im};
      }
    Verdict verdict;
    try {
      verdict = is_psd(map.apply(c.adjoint() * c));
    } catch (const std::exception& e) {
      report.positive = false;
      report.failures.emplace_back(std::string("positivity spot-check raised: ") + e.what());
      break;
    }
    if (!verdict.passed) {
      report.positive = false;
      report.failures.push_back("positivity spot-check " + std::to_string(trial) +
                                " failed: λ_min = " + std::to_string(verdict.min_eigenvalue));
    }
  }
  return report;
}

PositiveUnitalMap random_map(MapKind kind, Eigen::Index n, Eigen::Index k, std::uint64_t seed) {
  // Decorrelate from random_unitary(n, seed), which test matrices also draw from.
  seed = std::mt19937_64(seed ^ 0x5851f42d4c957f2dULL)();
  if (n < 1) throw DimensionError("random_map: n must be at least 1");
  const bool needs_k = kind == MapKind::Compression || kind == MapKind::Mixture;
  if (needs_k && (k < 1 || k > n)) {
    throw DimensionError("random_map: codomain size k = " + std::to_string(k) + " must lie in [1, n = " +
                         std::to_string(n) + "]");
  }
  switch (kind) {
    case MapKind::Identity: return PositiveUnitalMap::identity(n);
    case MapKind::Compression: return PositiveUnitalMap::compression(random_unitary(n, seed).leftCols(k));
    case MapKind::Mixture: {
      std::mt19937_64 rng(seed);
      std::uniform_real_distribution<double> unit(0.2, 1.0);
      const int count = 2 + static_cast<int>(rng() % 2);
      std::vector<double> weights(static_cast<std::size_t>(count));
      for (auto& w : weights) w = unit(rng);
      double total = 0;
      for (auto w : weights) total += w;
      std::vector<map_kinds::Mixture::Component> parts;
      for (int i = 0; i < count; ++i) {
        parts.push_back({weights[static_cast<std::size_t>(i)] / total,
                         random_unitary(n, seed * 7919u + static_cast<std::uint64_t>(i) + 1).leftCols(k)});
      }
      return PositiveUnitalMap::mixture(std::move(parts));
    }
    case MapKind::Pinching: {
      std::mt19937_64 rng(seed);
      const auto block_count = 1 + static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(n));
      std::vector<std::vector<Eigen::Index>> blocks(static_cast<std::size_t>(block_count));
      std::vector<Eigen::Index> perm(static_cast<std::size_t>(n));
      std::iota(perm.begin(), perm.end(), Eigen::Index(0));
      std::shuffle(perm.begin(), perm.end(), rng);
      // Deal the first block_count indices one per block so none is empty.
      for (Eigen::Index i = 0; i < n; ++i) {
        const auto b = i < block_count ? i : static_cast<Eigen::Index>(rng() % static_cast<std::uint64_t>(block_count));
        blocks[static_cast<std::size_t>(b)].push_back(perm[static_cast<std::size_t>(i)]);
      }
      for (auto& block : blocks) std::sort(block.begin(), block.end());
      return PositiveUnitalMap::pinching(n, std::move(blocks));
    }
    case MapKind::VectorState: {
      ComplexVector x = random_unitary(n, seed).col(0);
      x /= x.norm();
      return PositiveUnitalMap::vector_state(std::move(x));
    }
    case MapKind::NormalizedTrace: return PositiveUnitalMap::normalized_trace(n);
  }
  throw DomainError("random_map: unknown kind");
}

}  // namespace momenta
