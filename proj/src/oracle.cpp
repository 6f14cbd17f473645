#include "nswcp/oracle.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace nswcp {

namespace {

void require_size(double players, double objects, double cap) {
  if (objects * std::log(std::max(players, 1.0)) > std::log(cap) + 1e-9) {
    throw std::invalid_argument("instance too large for exhaustive enumeration");
  }
}

// Odometer over per-object candidate lists, most significant first.
template <typename Visit>
void enumerate_allocations(const std::vector<std::vector<int>>& candidates, Visit&& visit) {
  const int m = static_cast<int>(candidates.size());
  Allocation alloc;
  alloc.owner.assign(m, -1);
  std::vector<int> pos(m, 0);
  for (int j = 0; j < m; ++j) {
    if (candidates[j].empty()) return;
    alloc.owner[j] = candidates[j][0];
  }
  while (true) {
    visit(alloc);
    int j = m - 1;
    while (j >= 0 && pos[j] + 1 == static_cast<int>(candidates[j].size())) {
      pos[j] = 0;
      alloc.owner[j] = candidates[j][0];
      --j;
    }
    if (j < 0) return;
    ++pos[j];
    alloc.owner[j] = candidates[j][pos[j]];
  }
}

}  // namespace

BruteResult brute_nsw_opt(const NswInstance& inst) {
  require_size(inst.num_agents(), inst.num_items(), 1e7);
  std::vector<std::vector<int>> candidates(inst.num_items());
  for (int j = 0; j < inst.num_items(); ++j) {
    for (int e : inst.item_edges(j)) candidates[j].push_back(inst.edges()[e].agent);
    if (candidates[j].empty()) {
      throw std::invalid_argument("item " + inst.items()[j] + " has no incident edge");
    }
  }
  BruteResult best;
  best.value = -1.0;
  enumerate_allocations(candidates, [&](const Allocation& alloc) {
    const double value = nsw_value(inst, alloc);
    if (value > best.value) {
      best.value = value;
      best.allocation = alloc;
    }
  });
  return best;
}

BruteResult brute_sched_opt(const SchedInstance& inst) {
  require_size(inst.num_machines(), inst.num_jobs(), 1e7);
  std::vector<int> machines(inst.num_machines());
  for (int i = 0; i < inst.num_machines(); ++i) machines[i] = i;
  std::vector<std::vector<int>> candidates(inst.num_jobs(), machines);
  BruteResult best;
  bool first = true;
  enumerate_allocations(candidates, [&](const Allocation& alloc) {
    const double cost = sched_cost(inst, alloc);
    if (first || cost < best.value) {
      best.value = cost;
      best.allocation = alloc;
      first = false;
    }
  });
  if (first) throw std::invalid_argument("instance has no machines");
  return best;
}

std::vector<Allocation> enumerate_ef1(const IdenticalInstance& inst) {
  require_size(inst.n, static_cast<double>(inst.values.size()), 1e6);
  std::vector<int> agents(inst.n);
  for (int i = 0; i < inst.n; ++i) agents[i] = i;
  std::vector<std::vector<int>> candidates(inst.values.size(), agents);
  std::vector<Allocation> out;
  enumerate_allocations(candidates, [&](const Allocation& alloc) {
    if (is_ef1(inst, alloc).ef1) out.push_back(alloc);
  });
  return out;
}

NswInstance identical_to_nsw(const IdenticalInstance& inst) {
  std::vector<NswAgent> agents;
  for (int i = 0; i < inst.n; ++i) {
    agents.push_back({"a" + std::to_string(i + 1), 1.0 / inst.n});
  }
  std::vector<std::string> items;
  std::vector<NswEdge> edges;
  for (int j = 0; j < static_cast<int>(inst.values.size()); ++j) {
    items.push_back("j" + std::to_string(j + 1));
    for (int i = 0; i < inst.n; ++i) edges.push_back({i, j, inst.values[j]});
  }
  return NswInstance(std::move(agents), std::move(items), std::move(edges));
}

}  // namespace nswcp
