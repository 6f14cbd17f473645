#pragma once

// Spending-restricted Fisher-market program for the unweighted case: the
// objective evaluator, the constructive map from a feasible fractional
// assignment to a feasible spending solution, and the equivalence check
// against the NSW relaxation value.

#include <vector>

#include "nswcp/model.hpp"
#include "nswcp/relax.hpp"

namespace nswcp {

struct FsrSolution {
  std::vector<double> b;  // spending per instance edge index
  std::vector<double> q;  // per item, in (0, 1]
};

// (1/n) (sum_e b_e ln v_e - sum_j q_j ln q_j), with 0 ln 0 := 0. Requires an
// unweighted instance and a feasible solution (spending columns match q,
// every agent spends exactly 1, q <= 1); throws naming the violated
// constraint otherwise.
double fsr_objective(const NswInstance& instance, const FsrSolution& fsr);

// b_ij := x_ij min{v_ij, h_i} / h_i with h_i the agent's water level, and
// q_j := sum_i b_ij. Feasible for every feasible x, with objective at least
// (1/n) sum_i f_nsw(x_i).
FsrSolution construct_from_x(const NswInstance& instance, const FractionalAssignment& x);

struct EquivalenceReport {
  double cp_value = 0.0;
  double fsr_value = 0.0;  // objective of the constructed solution
  double gap = 0.0;        // fsr_value - cp_value
  double band = 0.0;       // ln(1+eps) + 1e-6, the expected |gap| envelope
};

// Solves the NSW relaxation at precision eps, applies construct_from_x, and
// reports the gap. Throws for weighted instances.
EquivalenceReport equivalence_report(const NswInstance& instance, double eps = kDefaultEps);

}  // namespace nswcp
