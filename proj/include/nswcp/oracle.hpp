#pragma once

// Brute-force exact solvers used as ground truth at desk scale. All
// enumerations are lexicographic and ties resolve to the first (smallest)
// optimal allocation.

#include <vector>

#include "nswcp/ef1.hpp"
#include "nswcp/model.hpp"

namespace nswcp {

struct BruteResult {
  double value = 0.0;
  Allocation allocation;
};

// Exhaustive over all edge-respecting allocations; requires n^m <= 10^7.
BruteResult brute_nsw_opt(const NswInstance& instance);

// Exhaustive over all machine assignments; requires m^n <= 10^7 (machines
// to the power of jobs).
BruteResult brute_sched_opt(const SchedInstance& instance);

// All total allocations of an identical-agent instance passing is_ef1;
// requires n^m <= 10^6.
std::vector<Allocation> enumerate_ef1(const IdenticalInstance& instance);

// Complete unweighted NswInstance with the identical values, for reusing
// the NSW oracle on identical-agent instances.
NswInstance identical_to_nsw(const IdenticalInstance& instance);

}  // namespace nswcp
