#include "nswcp/fisher.hpp"

#include <cmath>
#include <stdexcept>

#include "nswcp/waterfill.hpp"

namespace nswcp {

namespace {

void require_unweighted(const NswInstance& inst) {
  if (!inst.is_unweighted()) {
    throw std::invalid_argument("f-SR applies only to the unweighted case");
  }
}

double xlogx(double q) { return q > 0.0 ? q * std::log(q) : 0.0; }

}  // namespace

double fsr_objective(const NswInstance& inst, const FsrSolution& fsr) {
  require_unweighted(inst);
  const int n = inst.num_agents(), m = inst.num_items();
  if (static_cast<int>(fsr.b.size()) != static_cast<int>(inst.edges().size()) ||
      static_cast<int>(fsr.q.size()) != m) {
    throw std::invalid_argument("f-SR solution dimensions do not match instance");
  }
  for (size_t e = 0; e < fsr.b.size(); ++e) {
    if (fsr.b[e] < -kFeasTol) {
      throw std::invalid_argument("infeasible f-SR solution: b < 0 on edge " +
                                  std::to_string(e));
    }
  }
  for (int j = 0; j < m; ++j) {
    if (fsr.q[j] > 1.0 + kFeasTol) {
      throw std::invalid_argument("infeasible f-SR solution: q > 1 on item " + inst.items()[j]);
    }
    double spent = 0.0;
    for (int e : inst.item_edges(j)) spent += fsr.b[e];
    if (std::abs(spent - fsr.q[j]) > kFeasTol) {
      throw std::invalid_argument("infeasible f-SR solution: spending on item " +
                                  inst.items()[j] + " does not match q");
    }
  }
  for (int i = 0; i < n; ++i) {
    double spent = 0.0;
    for (int e : inst.agent_edges(i)) spent += fsr.b[e];
    if (std::abs(spent - 1.0) > kFeasTol) {
      throw std::invalid_argument("infeasible f-SR solution: agent " + inst.agents()[i].id +
                                  " spends " + std::to_string(spent));
    }
  }

  double out = 0.0;
  for (size_t e = 0; e < fsr.b.size(); ++e) {
    if (fsr.b[e] > 0.0) out += fsr.b[e] * std::log(inst.edges()[e].value);
  }
  for (int j = 0; j < m; ++j) out -= xlogx(fsr.q[j]);
  return out / n;
}

FsrSolution construct_from_x(const NswInstance& inst, const FractionalAssignment& x) {
  require_unweighted(inst);
  const auto violations = check_fractional(inst, x);
  if (!violations.empty()) {
    throw std::invalid_argument("x is not feasible for the NSW relaxation: " +
                                violations.front());
  }
  FsrSolution fsr;
  fsr.b.assign(inst.edges().size(), 0.0);
  fsr.q.assign(inst.num_items(), 0.0);
  for (int i = 0; i < inst.num_agents(); ++i) {
    const double h = water_level(nsw_profile(inst, x, i), OneMassConvention::MinSupportValue);
    for (int e : inst.agent_edges(i)) {
      const NswEdge& edge = inst.edges()[e];
      const double mass = x.at(i, edge.item);
      if (mass > 0.0) fsr.b[e] = mass * std::min(edge.value, h) / h;
    }
  }
  for (int j = 0; j < inst.num_items(); ++j) {
    for (int e : inst.item_edges(j)) fsr.q[j] += fsr.b[e];
  }
  return fsr;
}

EquivalenceReport equivalence_report(const NswInstance& inst, double eps) {
  require_unweighted(inst);
  const FractionalSolution sol = solve_cp_nsw(inst, eps);
  EquivalenceReport report;
  report.cp_value = sol.value;
  report.fsr_value = fsr_objective(inst, construct_from_x(inst, sol.x));
  report.gap = report.fsr_value - report.cp_value;
  report.band = std::log1p(eps) + 1e-6;
  return report;
}

}  // namespace nswcp
