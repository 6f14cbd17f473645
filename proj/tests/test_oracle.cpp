#include "nswcp/oracle.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "nswcp/io.hpp"
#include "nswcp/relax.hpp"

using namespace nswcp;

TEST_CASE("brute_nsw_opt") {
  {
    const NswInstance inst({{"a1", 0.5}, {"a2", 0.5}}, {"j1", "j2"},
                           {{0, 0, 3.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0}});
    const BruteResult best = brute_nsw_opt(inst);
    CHECK(best.value == doctest::Approx(3.0));
    CHECK(best.allocation.owner == std::vector<int>{0, 1});
  }
  {
    const NswInstance single({{"a1", 1.0}}, {"j1", "j2"}, {{0, 0, 3.0}, {0, 1, 4.0}});
    CHECK(brute_nsw_opt(single).value == doctest::Approx(7.0));
  }
  {
    const NswInstance ones({{"a1", 0.5}, {"a2", 0.5}}, {"j1", "j2"},
                           {{0, 0, 1.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 1.0}});
    CHECK(brute_nsw_opt(ones).value == doctest::Approx(1.0));
  }
  {
    // size guard: 10^8 allocations
    std::vector<NswAgent> agents(10);
    std::vector<std::string> items(8);
    std::vector<NswEdge> edges;
    for (int i = 0; i < 10; ++i) agents[i] = {"a" + std::to_string(i), 0.1};
    for (int j = 0; j < 8; ++j) {
      items[j] = "j" + std::to_string(j);
      for (int i = 0; i < 10; ++i) edges.push_back({i, j, 1.0});
    }
    CHECK_THROWS_AS(brute_nsw_opt(NswInstance(agents, items, edges)), std::invalid_argument);
  }
}

TEST_CASE("brute_sched_opt") {
  const SchedInstance split({"m1", "m2"}, {"j1", "j2"}, {{1.0, 1.0}, {1.0, 1.0}},
                            SchedObjective::power(2.0));
  CHECK(brute_sched_opt(split).value == doctest::Approx(2.0));

  const SchedInstance forced({"m1"}, {"j1", "j2", "j3"}, {{4.0, 2.0, 1.0}},
                             SchedObjective::power(2.0));
  CHECK(brute_sched_opt(forced).value == doctest::Approx(49.0));

  const SchedInstance completion({"m1", "m2"}, {"j1", "j2"}, {{1.0, 1.0}, {1.0, 1.0}},
                                 SchedObjective::completion());
  CHECK(brute_sched_opt(completion).value == doctest::Approx(2.0));
}

TEST_CASE("enumerate_ef1") {
  {
    IdenticalInstance inst{2, {1, 1}};
    const auto allocations = enumerate_ef1(inst);
    CHECK(allocations.size() == 2);  // only the one-each splits
  }
  {
    IdenticalInstance solo{1, {2, 3}};
    CHECK(enumerate_ef1(solo).size() == 1);
  }
  {
    IdenticalInstance inst{2, {5, 3, 3}};
    bool found = false;
    for (const Allocation& alloc : enumerate_ef1(inst)) {
      double first = 0.0;
      for (int j = 0; j < 3; ++j) {
        if (alloc.owner[j] == alloc.owner[0]) first += inst.values[j];
      }
      if (first == 5.0 && alloc.owner[1] == alloc.owner[2] && alloc.owner[1] != alloc.owner[0]) {
        found = true;
      }
    }
    CHECK(found);
  }
}

TEST_CASE("relaxation dominance against the oracles") {
  for (std::uint64_t seed = 100; seed <= 112; ++seed) {
    const NswInstance nsw = gen_nsw_instance(2, 4, seed, WeightMode::Dirichlet);
    CHECK(brute_nsw_opt(nsw).value <= std::exp(solve_cp_nsw(nsw, 1e-3).value) + 1e-6);

    const SchedInstance sched = gen_sched_instance(2, 4, seed, SchedObjective::power(2.0));
    CHECK(brute_sched_opt(sched).value >= solve_cp_theta(sched, 1e-3).value - 1e-6);

    const SchedInstance compl_inst =
        gen_sched_instance(2, 4, seed, SchedObjective::completion());
    CHECK(brute_sched_opt(compl_inst).value >= solve_cp_completion(compl_inst, 1e-3).value - 1e-6);
  }
}
