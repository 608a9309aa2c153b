#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "momenta/maps.hpp"

namespace momenta::cli {

/// A --map argument: trace | vector-state | compression[:k] | mixture[:k] |
/// pinching | identity | all.
struct MapSpec {
  std::string text = "trace";
  std::optional<MapKind> kind = MapKind::NormalizedTrace;  // empty for "all"
  std::optional<Eigen::Index> codomain;
};

MapSpec parse_map_spec(const std::string& text);

/// Instantiates the map for an n×n input; random parts are drawn from `seed`.
PositiveUnitalMap make_map(const MapSpec& spec, Eigen::Index n, std::uint64_t seed);

/// Default for --seed: MOMENTA_SEED when set and numeric, else 0.
std::uint64_t default_seed();

/// Runs the command line `args` (args[0] is the program name). Exit codes:
/// 0 success, 1 an applicable check failed, 2 usage, input or I/O error.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace momenta::cli
