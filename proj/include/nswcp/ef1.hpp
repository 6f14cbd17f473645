#pragma once

// EF1 checking for identical agents, a greedy EF1 allocator, and the
// water-fill certificate bounding the optimum NSW of the instance from the
// bundle values of an EF1 allocation.

#include <vector>

#include "nswcp/model.hpp"

namespace nswcp {

struct IdenticalInstance {
  int n = 0;                   // number of identical agents
  std::vector<double> values;  // item values, all positive
};

struct Ef1Result {
  bool ef1 = true;
  int envious = -1;  // witness pair when ef1 is false
  int envied = -1;
};

// True iff for every pair (i, i'): v(bundle_i) >= v(bundle_i') - max item of
// bundle_i'; an empty envied bundle satisfies the condition vacuously.
Ef1Result is_ef1(const IdenticalInstance& instance, const Allocation& allocation);

// Items in descending value, each to the currently minimum-value bundle.
// The output is re-checked with is_ef1 and failure raises.
Allocation greedy_ef1(const IdenticalInstance& instance);

struct GapCertificate {
  double psi = 0.0;          // minimum bundle value
  std::vector<double> phi;   // per-agent surplus V_i - psi
  double h = 0.0;            // water level of (1/n) sum min{phi_i, h} + psi = h
  double bound = 0.0;        // (prod max{phi_i, h})^{1/n}, upper bound on opt
  int n1 = 0;                // diagnostics: #{phi_i > h}
  int n2 = 0;
};

// Water-fill upper bound on the instance's optimum NSW derived from an EF1
// allocation: bound >= opt, and the allocation's NSW is at least
// e^{-1/e} * bound. psi = 0 degenerates to an explicit zero certificate.
GapCertificate gap_bound(const IdenticalInstance& instance, const Allocation& allocation);

}  // namespace nswcp
