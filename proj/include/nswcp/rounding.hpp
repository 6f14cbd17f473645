#pragma once

// Rounding of a fractional assignment: partition each player's mass into
// unit groups ordered by non-increasing value, decompose the group/object
// fractional matching into a convex combination of integral matchings, then
// sample one or take the best induced allocation.

#include <cstdint>
#include <vector>

#include "nswcp/model.hpp"

namespace nswcp {

struct Group {
  int player = -1;
  int rank = 0;                               // position within the player's groups
  std::vector<std::pair<int, double>> mass;   // (object, fraction), fill order
  double total = 0.0;
};

struct GroupSystem {
  std::vector<Group> groups;                  // player-major, rank order
  std::vector<std::vector<int>> by_player;    // player -> group indices
  int num_players = 0;
  int num_objects = 0;
};

// The unique group system with sum_t z^t = x_i, unit mass in every group but
// the last, and prefix-consistent ordering by non-increasing value (NSW) or
// size (scheduling); value ties break by ascending object id. Throws for an
// NSW agent with mass below 1.
GroupSystem partition_groups(const FractionalAssignment& x, const NswInstance& instance);
GroupSystem partition_groups(const FractionalAssignment& x, const SchedInstance& instance);

struct DecompositionTerm {
  double lambda = 0.0;
  std::vector<int> object_to_group;  // every object matched in every term
  Allocation allocation;             // induced object -> player map
};

struct MatchingDecomposition {
  std::vector<DecompositionTerm> terms;
};

// Convex combination of integral matchings covering every object and every
// saturated group, preserving every edge marginal. At most
// |support| + #groups terms.
MatchingDecomposition decompose(const GroupSystem& system);

// Picks term k with probability lambda_k; deterministic given the seed.
Allocation sample(const MatchingDecomposition& decomposition, std::uint64_t seed);

struct RoundedPick {
  int term_index = -1;
  Allocation allocation;
  double value = 0.0;           // objective of the chosen allocation
  double expected_value = 0.0;  // exact lambda-weighted analysis form
};

// Best term under the instance objective. For NSW the expectation is the
// lambda-weighted sum of sum_i w_i ln v_i(bundle_i); every term must give
// each agent a nonempty bundle. For scheduling the expectation is the
// lambda-weighted cost and the best term minimizes it.
RoundedPick best_allocation(const MatchingDecomposition& decomposition,
                            const NswInstance& instance);
RoundedPick best_allocation(const MatchingDecomposition& decomposition,
                            const SchedInstance& instance);

}  // namespace nswcp
