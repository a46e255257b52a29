#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "xyz/stabilizer.hpp"

namespace xyz {

struct DistanceResult {
  /// Weight found; nullopt when exact search exceeded w_max.
  std::optional<std::size_t> weight;
  std::optional<PauliError> witness;
};

/// Minimum weight of a logical operator, searched exhaustively up to w_max.
///
/// A minimum-weight logical has a connected support (two qubits are linked
/// when some check acts on both), otherwise one of its components would be a
/// lighter logical. The search grows supports from an anchor qubit: while some
/// check is violated it branches on the qubits of that check above the anchor
/// with the Paulis that flip it. Zero-syndrome stabilizers are not extended.
/// Anchors are searched in parallel.
DistanceResult exact_distance(const StabilizerCode& code, std::size_t w_max);
/// Single-threaded reference with the same result.
DistanceResult exact_distance_serial(const StabilizerCode& code, std::size_t w_max);

struct McDistanceConfig {
  std::size_t restarts = 100000;
  std::uint64_t seed = 1;
  /// Sweeps of greedy reduction per restart.
  std::size_t max_sweeps = 64;
};

/// Randomized upper bound on the distance. Every candidate is a logical
/// operator: restart r draws a random nonzero combination of logicals (the
/// basis plus `extra` operators that pass is_logical), multiplies in a few
/// random stabilizer rows and then greedily applies any check row that lowers
/// the weight, taking weight-neutral moves at random to cross plateaus.
/// Restart r uses its own generator derived from (seed, r), so the result
/// does not depend on the thread count and is nonincreasing in `restarts`.
DistanceResult mc_distance(const StabilizerCode& code, const LogicalBasis& basis, const McDistanceConfig& config,
                           const std::vector<PauliError>& extra = {});
DistanceResult mc_distance_serial(const StabilizerCode& code, const LogicalBasis& basis,
                                  const McDistanceConfig& config, const std::vector<PauliError>& extra = {});

}  // namespace xyz
