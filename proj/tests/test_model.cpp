#include "nswcp/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <numeric>
#include <random>

#include "doctest.h"

using namespace nswcp;

namespace {

NswInstance two_by_two() {
  return NswInstance({{"a1", 0.5}, {"a2", 0.5}}, {"j1", "j2"},
                     {{0, 0, 3.0}, {0, 1, 1.0}, {1, 0, 1.0}, {1, 1, 3.0}});
}

bool mentions(const std::vector<std::string>& violations, const std::string& needle) {
  return std::any_of(violations.begin(), violations.end(), [&](const std::string& v) {
    return v.find(needle) != std::string::npos;
  });
}

}  // namespace

TEST_CASE("validate nsw instances") {
  CHECK(validate(two_by_two()).empty());

  const NswInstance bad_weights({{"a1", 0.5}, {"a2", 0.6}}, {"j1", "j2"},
                                {{0, 0, 1.0}, {1, 1, 1.0}});
  CHECK(mentions(validate(bad_weights), "weights sum to 1.1"));

  const NswInstance orphan_item({{"a1", 1.0}}, {"j1", "j2"}, {{0, 0, 2.0}});
  CHECK(mentions(validate(orphan_item), "item j2"));

  const NswInstance dup({{"a1", 1.0}}, {"j1"}, {{0, 0, 2.0}, {0, 0, 3.0}});
  CHECK(mentions(validate(dup), "duplicate edge"));

  const NswInstance zero_value({{"a1", 1.0}}, {"j1"}, {{0, 0, 0.0}});
  CHECK(mentions(validate(zero_value), "not strictly positive"));
}

TEST_CASE("validate sched instances") {
  CHECK(validate(SchedInstance({"m1"}, {"j1"}, {{2.0}}, SchedObjective::power(2.0))).empty());
  CHECK(mentions(validate(SchedInstance({"m1"}, {"j1"}, {{0.0}}, SchedObjective::power(2.0))),
                 "not strictly positive"));
  CHECK(mentions(validate(SchedInstance({"m1"}, {"j1"}, {{1.0}}, SchedObjective::power(0.5))),
                 "below 1"));
}

TEST_CASE("nsw_value") {
  const NswInstance single({{"a1", 1.0}}, {"j1", "j2"}, {{0, 0, 3.0}, {0, 1, 4.0}});
  CHECK(nsw_value(single, {{0, 0}}) == doctest::Approx(7.0));

  const NswInstance inst = two_by_two();
  CHECK(nsw_value(inst, {{0, 1}}) == doctest::Approx(3.0));           // bundles 3 and 3
  CHECK(nsw_value(inst, {{1, 0}}) == doctest::Approx(1.0));           // bundles 1 and 1
  const NswInstance skewed({{"a1", 0.5}, {"a2", 0.5}}, {"j1", "j2"},
                           {{0, 0, 4.0}, {1, 0, 1.0}, {1, 1, 1.0}});
  CHECK(nsw_value(skewed, {{0, 1}}) == doctest::Approx(2.0));         // 4^.5 * 1^.5

  // empty bundle with positive weight
  CHECK(nsw_value(inst, {{0, 0}}) == 0.0);
  // non-adjacent pair
  CHECK_THROWS_AS(nsw_value(skewed, {{1, 0}}), std::invalid_argument);
  CHECK_THROWS_AS(nsw_value(inst, {{0, -1}}), std::invalid_argument);
}

TEST_CASE("sched_cost") {
  const SchedInstance power({"m1", "m2"}, {"j1", "j2"}, {{3.0, 4.0}, {3.0, 4.0}},
                            SchedObjective::power(2.0));
  CHECK(sched_cost(power, {{0, 1}}) == doctest::Approx(25.0));  // loads 3 and 4

  const SchedInstance compl1({"m1"}, {"j1", "j2"}, {{1.0, 1.0}}, SchedObjective::completion());
  CHECK(sched_cost(compl1, {{0, 0}}) == doctest::Approx(3.0));
  const SchedInstance compl2({"m1"}, {"j1"}, {{2.0}}, SchedObjective::completion());
  CHECK(sched_cost(compl2, {{0}}) == doctest::Approx(4.0));
}

TEST_CASE("objective properties on random instances") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 3);
    const int m = n + static_cast<int>(rng() % 4);
    std::vector<NswAgent> agents(n);
    for (int i = 0; i < n; ++i) agents[i] = {"a" + std::to_string(i), 1.0 / n};
    std::vector<std::string> items(m);
    std::vector<NswEdge> edges;
    for (int j = 0; j < m; ++j) {
      items[j] = "j" + std::to_string(j);
      for (int i = 0; i < n; ++i) edges.push_back({i, j, 1.0 + double(rng() % 9)});
    }
    const NswInstance inst(agents, items, edges);

    Allocation alloc;
    alloc.owner.resize(m);
    for (int j = 0; j < m; ++j) alloc.owner[j] = j < n ? j : static_cast<int>(rng() % n);

    // permutation invariance under item relabeling
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int pos = m - 1; pos > 0; --pos) std::swap(perm[pos], perm[rng() % (pos + 1)]);
    std::vector<std::string> ritems(m);
    std::vector<NswEdge> redges;
    for (const NswEdge& e : edges) redges.push_back({e.agent, perm[e.item], e.value});
    for (int j = 0; j < m; ++j) ritems[perm[j]] = items[j];
    Allocation ralloc;
    ralloc.owner.resize(m);
    for (int j = 0; j < m; ++j) ralloc.owner[perm[j]] = alloc.owner[j];
    const NswInstance rinst(agents, ritems, redges);
    CHECK(nsw_value(rinst, ralloc) == doctest::Approx(nsw_value(inst, alloc)).epsilon(1e-12));

    // every agent nonempty implies positive welfare
    CHECK(nsw_value(inst, alloc) > 0.0);

    // completion cost dominates half of the k=2 power cost
    std::vector<std::vector<double>> p(2, std::vector<double>(m));
    for (int j = 0; j < m; ++j) p[0][j] = p[1][j] = 1.0 + double(rng() % 9);
    const SchedInstance power({"m1", "m2"}, items, p, SchedObjective::power(2.0));
    const SchedInstance completion({"m1", "m2"}, items, p, SchedObjective::completion());
    Allocation salloc;
    salloc.owner.resize(m);
    for (int j = 0; j < m; ++j) salloc.owner[j] = static_cast<int>(rng() % 2);
    CHECK(sched_cost(completion, salloc) >= 0.5 * sched_cost(power, salloc) - 1e-12);
  }
}

TEST_CASE("fractional assignment bookkeeping") {
  FractionalAssignment x(2, 3);
  x.set(0, 0, 0.25);
  x.set(0, 1, 0.75);
  x.set(1, 0, 0.75);
  x.set(1, 2, 1.0);
  CHECK(x.at(0, 0) == 0.25);
  CHECK(x.at(1, 1) == 0.0);
  CHECK(x.player_mass(0) == doctest::Approx(1.0));
  CHECK(x.object_mass(0) == doctest::Approx(1.0));
  x.set(0, 0, 1e-15);  // below the mass floor: treated as zero
  CHECK(x.at(0, 0) == 0.0);

  const NswInstance inst = two_by_two();
  FractionalAssignment y(2, 2);
  y.set(0, 0, 0.5);
  y.set(0, 1, 0.5);
  y.set(1, 0, 0.5);
  y.set(1, 1, 0.5);
  CHECK(check_fractional(inst, y).empty());
  y.set(0, 1, 0.25);
  const auto violations = check_fractional(inst, y);
  CHECK(!violations.empty());
}
