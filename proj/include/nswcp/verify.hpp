#pragma once

// Property suites behind the `verify` CLI command. Each suite exercises one
// module chain on generated instances and reports pass/fail per property.

#include <ostream>
#include <random>
#include <string>

#include "nswcp/model.hpp"

namespace nswcp {

// suite is one of: nsw, fsr, ef1, sched, alpha. Returns true iff every
// property holds; one line per property batch is written to the log.
bool run_verify_suite(const std::string& suite, std::ostream& log);

// Random feasible point of the NSW relaxation: a Dirichlet mixture of
// random edge-respecting integral allocations that give every agent an
// item. Requires a complete-enough instance (every generated instance
// qualifies).
FractionalAssignment mixed_feasible_assignment(const NswInstance& instance,
                                               std::mt19937_64& rng);

}  // namespace nswcp
