#include "nswcp/verify.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nswcp/alpha.hpp"
#include "nswcp/ef1.hpp"
#include "nswcp/fisher.hpp"
#include "nswcp/io.hpp"
#include "nswcp/oracle.hpp"
#include "nswcp/relax.hpp"
#include "nswcp/rounding.hpp"
#include "nswcp/waterfill.hpp"

namespace nswcp {

namespace {

const double kEInv = std::exp(-1.0 / std::exp(1.0));  // e^{-1/e}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

struct Check {
  bool ok = true;
  void expect(bool cond, std::ostream& log, const std::string& what) {
    if (!cond) {
      log << "FAIL " << what << "\n";
      ok = false;
    }
  }
};

double marginal_error(const FractionalAssignment& x, const MatchingDecomposition& decomp) {
  double worst = 0.0;
  for (int i = 0; i < x.num_players(); ++i) {
    for (int j = 0; j < x.num_objects(); ++j) {
      double p = 0.0;
      for (const auto& term : decomp.terms) {
        if (term.allocation.owner[j] == i) p += term.lambda;
      }
      worst = std::max(worst, std::abs(p - x.at(i, j)));
    }
  }
  return worst;
}

bool verify_nsw(std::ostream& log) {
  Check check;
  for (std::uint64_t seed = 1; seed <= 40 && check.ok; ++seed) {
    std::mt19937_64 pick(seed * 977);
    const int n = 1 + static_cast<int>(pick() % 4);
    const int m = n + static_cast<int>(pick() % (8 - n));
    const NswInstance inst = gen_nsw_instance(n, m, seed, WeightMode::Dirichlet);
    const double eps = 1e-3;
    const FractionalSolution sol = solve_cp_nsw(inst, eps);

    double fsum = 0.0, fbar_sum = 0.0;
    for (int i = 0; i < n; ++i) {
      const ValueMassProfile profile = nsw_profile(inst, sol.x, i);
      fsum += inst.weight(i) * f_nsw(profile);
      fbar_sum += inst.weight(i) * f_bar_nsw(profile, Grid::nsw(inst.agent_values(i), eps));
    }
    check.expect(std::abs(fbar_sum - sol.value) <= 1e-6, log,
                 "nsw: recomputed objective drifts from LP value");
    check.expect(sol.value >= fsum - 1e-6 && sol.value <= fsum + std::log1p(eps) + 1e-6, log,
                 "nsw: discretization sandwich on the solution");

    const BruteResult brute = brute_nsw_opt(inst);
    check.expect(std::exp(sol.value) >= brute.value - 1e-6, log,
                 "nsw: relaxation does not dominate the optimum");

    const GroupSystem groups = partition_groups(sol.x, inst);
    const MatchingDecomposition decomp = decompose(groups);
    check.expect(marginal_error(sol.x, decomp) <= 1e-6, log, "nsw: marginals drift from x");
    const RoundedPick best = best_allocation(decomp, inst);
    check.expect(best.value >= kEInv * std::exp(sol.value) / (1.0 + eps) - 1e-9, log,
                 "nsw: rounding guarantee");
    check.expect(best.expected_value >= fsum - 1.0 / std::exp(1.0) - 1e-9, log,
                 "nsw: expected log welfare bound");
  }
  if (check.ok) log << "ok nsw: relaxation, rounding and expectation bounds on 40 instances\n";
  return check.ok;
}

bool verify_fsr(std::ostream& log) {
  Check check;
  for (std::uint64_t seed = 1; seed <= 20 && check.ok; ++seed) {
    std::mt19937_64 pick(seed * 1193);
    const int n = 1 + static_cast<int>(pick() % 3);
    const int m = n + static_cast<int>(pick() % 4);
    const NswInstance inst = gen_nsw_instance(n, m, seed, WeightMode::Uniform);
    const EquivalenceReport eq = equivalence_report(inst, 1e-3);
    check.expect(std::abs(eq.gap) <= eq.band, log, "fsr: optimum gap outside band");

    std::mt19937_64 rng(seed * 31 + 7);
    for (int trial = 0; trial < 5; ++trial) {
      const FractionalAssignment x = mixed_feasible_assignment(inst, rng);
      const FsrSolution fsr = construct_from_x(inst, x);
      double fsum = 0.0;
      for (int i = 0; i < n; ++i) fsum += f_nsw(nsw_profile(inst, x, i));
      check.expect(fsr_objective(inst, fsr) >= fsum / n - 1e-6, log,
                   "fsr: construction below the water-fill value");
    }
  }
  if (check.ok) log << "ok fsr: constructive direction and optimum gap band on 20 instances\n";
  return check.ok;
}

bool verify_ef1(std::ostream& log) {
  Check check;
  // Exhaustive scan over small identical-agent instances.
  for (int n = 1; n <= 3 && check.ok; ++n) {
    for (int m = 1; m <= 5 && check.ok; ++m) {
      std::vector<int> tuple(m, 1);
      while (true) {
        IdenticalInstance inst;
        inst.n = n;
        for (int v : tuple) inst.values.push_back(v);
        const double opt = brute_nsw_opt(identical_to_nsw(inst)).value;
        for (const Allocation& alloc : enumerate_ef1(inst)) {
          const GapCertificate cert = gap_bound(inst, alloc);
          const double nsw = nsw_value(identical_to_nsw(inst), alloc);
          check.expect(cert.bound >= opt - 1e-9, log, "ef1: bound below the optimum");
          check.expect(nsw >= kEInv * cert.bound - 1e-9, log, "ef1: allocation below e^{-1/e}");
          if (!check.ok) break;
        }
        // next nondecreasing tuple over {1..4}
        int pos = m - 1;
        while (pos >= 0 && tuple[pos] == 4) --pos;
        if (pos < 0 || !check.ok) break;
        ++tuple[pos];
        for (int t = pos + 1; t < m; ++t) tuple[t] = tuple[pos];
      }
    }
  }
  // Greedy allocations on random instances.
  for (std::uint64_t seed = 1; seed <= 60 && check.ok; ++seed) {
    std::mt19937_64 rng(seed * 131);
    IdenticalInstance inst;
    inst.n = 2 + static_cast<int>(rng() % 2);
    const int m = inst.n + static_cast<int>(rng() % 4);
    for (int j = 0; j < m; ++j) inst.values.push_back(1.0 + 9.0 * uniform01(rng));
    const Allocation alloc = greedy_ef1(inst);
    const GapCertificate cert = gap_bound(inst, alloc);
    const double nsw = nsw_value(identical_to_nsw(inst), alloc);
    check.expect(nsw >= kEInv * cert.bound - 1e-9, log, "ef1: greedy below e^{-1/e}");
    check.expect(cert.bound >= brute_nsw_opt(identical_to_nsw(inst)).value - 1e-9, log,
                 "ef1: greedy bound below the optimum");
  }
  if (check.ok) log << "ok ef1: gap certificate dominates opt; every EF1 allocation in ratio\n";
  return check.ok;
}

bool verify_sched(std::ostream& log) {
  Check check;
  const double eps = 1e-3;
  const double alpha2 = 4.0 / 3.0;
  for (std::uint64_t seed = 1; seed <= 40 && check.ok; ++seed) {
    std::mt19937_64 pick(seed * 613);
    const int machines = 1 + static_cast<int>(pick() % 3);
    const int jobs = 1 + static_cast<int>(pick() % 6);

    const SchedInstance power =
        gen_sched_instance(machines, jobs, seed, SchedObjective::power(2.0));
    const FractionalSolution psol = solve_cp_theta(power, eps);
    const RoundedPick ppick = best_allocation(decompose(partition_groups(psol.x, power)), power);
    check.expect(psol.value <= brute_sched_opt(power).value + 1e-6, log,
                 "sched: relaxation above the optimum (power)");
    check.expect(ppick.expected_value <=
                     alpha2 * (1.0 + eps) * (1.0 + eps) * psol.value + 1e-6,
                 log, "sched: expected power cost above the alpha bound");

    const SchedInstance compl_inst =
        gen_sched_instance(machines, jobs, seed, SchedObjective::completion());
    const FractionalSolution csol = solve_cp_completion(compl_inst, eps);
    const RoundedPick cpick =
        best_allocation(decompose(partition_groups(csol.x, compl_inst)), compl_inst);
    check.expect(csol.value <= brute_sched_opt(compl_inst).value + 1e-6, log,
                 "sched: relaxation above the optimum (completion)");
    check.expect(cpick.expected_value <=
                     completion_alpha() * (1.0 + eps) * (1.0 + eps) * csol.value + 1e-6,
                 log, "sched: expected completion cost above the alpha bound");
  }
  if (check.ok) log << "ok sched: relaxation and rounding bounds on 40 instances per objective\n";
  return check.ok;
}

bool verify_alpha(std::ostream& log) {
  Check check;
  check.expect(std::abs(compute_alpha_power(1.0).alpha - 1.0) <= 1e-6, log,
               "alpha: alpha(1) != 1");
  check.expect(std::abs(compute_alpha_power(2.0).alpha - 4.0 / 3.0) <= 1e-4, log,
               "alpha: alpha(2) != 4/3");
  check.expect(std::abs(completion_alpha() - 1.2071068) <= 1e-7, log,
               "alpha: completion constant");
  const CompletionCertificate cert = completion_certificate();
  check.expect(cert.max_at_b_zero <= 1e-9 && cert.max_at_b_one_minus_a <= 1e-9, log,
               "alpha: completion certificate expressions exceed 0");
  check.expect(std::abs(cert.b_zero_peak - (19.0 - 14.0 * std::sqrt(2.0)) / 16.0) <= 1e-12, log,
               "alpha: b=0 peak value");
  if (check.ok) log << "ok alpha: alpha(1), alpha(2), completion constant and certificates\n";
  return check.ok;
}

}  // namespace

FractionalAssignment mixed_feasible_assignment(const NswInstance& inst, std::mt19937_64& rng) {
  const int n = inst.num_agents(), m = inst.num_items();
  const int blends = 4;
  std::vector<double> weight(blends);
  double total = 0.0;
  for (int b = 0; b < blends; ++b) {
    weight[b] = -std::log(std::max(uniform01(rng), 1e-300));
    total += weight[b];
  }
  FractionalAssignment x(n, m);
  for (int b = 0; b < blends; ++b) {
    // Random integral allocation giving every agent one item first.
    std::vector<int> owner(m, -1);
    std::vector<int> items(m);
    std::iota(items.begin(), items.end(), 0);
    for (int pos = m - 1; pos > 0; --pos) {
      std::swap(items[pos], items[rng() % (pos + 1)]);
    }
    int at = 0;
    for (int i = 0; i < n; ++i) {
      while (at < m && !inst.has_edge(i, items[at])) ++at;
      if (at >= m) throw std::invalid_argument("instance too sparse for a random mixture");
      owner[items[at++]] = i;
    }
    for (int j = 0; j < m; ++j) {
      if (owner[j] >= 0) continue;
      const auto& incident = inst.item_edges(j);
      owner[j] = inst.edges()[incident[rng() % incident.size()]].agent;
    }
    for (int j = 0; j < m; ++j) {
      x.set(owner[j], j, x.at(owner[j], j) + weight[b] / total);
    }
  }
  return x;
}

bool run_verify_suite(const std::string& suite, std::ostream& log) {
  if (suite == "nsw") return verify_nsw(log);
  if (suite == "fsr") return verify_fsr(log);
  if (suite == "ef1") return verify_ef1(log);
  if (suite == "sched") return verify_sched(log);
  if (suite == "alpha") return verify_alpha(log);
  throw std::invalid_argument("unknown suite: " + suite +
                              " (expected nsw|fsr|ef1|sched|alpha)");
}

}  // namespace nswcp
