#pragma once

// Concrete positive unital linear maps Φ: M(n) → M(k). Functionals are the
// variants with a 1×1 codomain (vector states and the normalized trace).

#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "momenta/linalg.hpp"

namespace momenta {

namespace map_kinds {

struct Identity {
  Eigen::Index n = 0;
};

/// Φ(A) = V*AV for an n×k isometry V.
struct Compression {
  ComplexMatrix v;
};

/// Φ(A) = Σ w_i V_i* A V_i with Σ w_i V_i*V_i = I.
struct Mixture {
  struct Component {
    double weight = 0;
    ComplexMatrix v;
  };
  std::vector<Component> components;
};

/// Keeps the entries (i,j) whose indices share a block of the partition.
struct Pinching {
  Eigen::Index n = 0;
  std::vector<std::vector<Eigen::Index>> blocks;
};

/// φ(A) = x*Ax for a unit vector x.
struct VectorState {
  ComplexVector x;
};

/// φ(A) = tr(A)/n.
struct NormalizedTrace {
  Eigen::Index n = 0;
};

}  // namespace map_kinds

enum class MapKind { Identity, Compression, Mixture, Pinching, VectorState, NormalizedTrace };

inline constexpr MapKind kAllMapKinds[] = {MapKind::Identity,    MapKind::Compression,
                                           MapKind::Mixture,     MapKind::Pinching,
                                           MapKind::VectorState, MapKind::NormalizedTrace};

std::string_view to_string(MapKind kind);

class PositiveUnitalMap {
 public:
  using Variant = std::variant<map_kinds::Identity, map_kinds::Compression, map_kinds::Mixture,
                               map_kinds::Pinching, map_kinds::VectorState, map_kinds::NormalizedTrace>;

  /// Wraps a raw descriptor without checking it; see validate().
  explicit PositiveUnitalMap(Variant v) : rep_(std::move(v)) {}

  // Checked factories. Each throws DomainError when the invariants of the
  // variant do not hold.
  static PositiveUnitalMap identity(Eigen::Index n);
  static PositiveUnitalMap compression(ComplexMatrix v);
  static PositiveUnitalMap mixture(std::vector<map_kinds::Mixture::Component> components);
  static PositiveUnitalMap pinching(Eigen::Index n, std::vector<std::vector<Eigen::Index>> blocks);
  static PositiveUnitalMap vector_state(ComplexVector x);
  static PositiveUnitalMap normalized_trace(Eigen::Index n);

  MapKind kind() const;
  Eigen::Index domain_dim() const;
  Eigen::Index codomain_dim() const;
  bool is_functional() const { return codomain_dim() == 1; }
  const Variant& variant() const { return rep_; }

  ComplexMatrix apply(const ComplexMatrix& a) const;
  ComplexMatrix operator()(const ComplexMatrix& a) const { return apply(a); }

  /// Scalar value of a functional; throws DimensionError for matrix-valued maps.
  Complex functional(const ComplexMatrix& a) const;

 private:
  Variant rep_;
};

struct MapValidation {
  bool unital = false;
  bool positive = false;
  double unitality_error = 0;
  std::vector<std::string> failures;

  bool ok() const { return failures.empty(); }
};

/// Checks unitality and the structural invariants of the variant, then
/// spot-checks positivity on 20 seeded random PSD matrices C*C. Never throws.
MapValidation validate(const PositiveUnitalMap& map, std::uint64_t seed = 0);

/// A valid map of the requested kind, deterministic in `seed`. `k` is the
/// codomain size for compressions and mixtures and ignored otherwise.
PositiveUnitalMap random_map(MapKind kind, Eigen::Index n, Eigen::Index k, std::uint64_t seed);

}  // namespace momenta
