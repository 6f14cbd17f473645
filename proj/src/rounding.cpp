#include "nswcp/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace nswcp {

namespace {

constexpr double kSupportTol = 1e-12;
constexpr double kSaturationTol = 1e-9;

// Greedy prefix filling: walk the player's objects in the given order and
// pour mass into groups of hard capacity 1. Feasibility tolerances in x can
// leave a sliver beyond the nominal ceil(mass) groups; it spills into one
// more tiny group rather than overfilling, since the decomposition needs
// every group degree at most 1. Residues below kSupportTol are dropped.
void fill_player_groups(GroupSystem& system, int player,
                        const std::vector<std::pair<int, double>>& ordered) {
  std::vector<Group> groups;
  groups.push_back({player, 0, {}, 0.0});
  for (const auto& [object, mass] : ordered) {
    double left = mass;
    while (left > kSupportTol) {
      Group& g = groups.back();
      const double room = 1.0 - g.total;
      if (room <= kSupportTol) {
        groups.push_back({player, static_cast<int>(groups.size()), {}, 0.0});
        continue;
      }
      const double take = std::min(left, room);
      g.mass.push_back({object, take});
      g.total += take;
      left -= take;
    }
  }
  for (Group& g : groups) {
    if (g.mass.empty()) continue;
    system.by_player[player].push_back(static_cast<int>(system.groups.size()));
    g.rank = static_cast<int>(system.by_player[player].size()) - 1;
    system.groups.push_back(std::move(g));
  }
}

template <typename ValueOf>
GroupSystem partition_impl(const FractionalAssignment& x, int players, int objects,
                           ValueOf&& value_of, bool require_unit_mass) {
  GroupSystem system;
  system.num_players = players;
  system.num_objects = objects;
  system.by_player.resize(players);
  for (int i = 0; i < players; ++i) {
    const double total = x.player_mass(i);
    if (require_unit_mass && total < 1.0 - kFeasTol) {
      throw std::invalid_argument("player " + std::to_string(i) + " has fractional mass " +
                                  std::to_string(total) + " below 1");
    }
    if (total < kSupportTol) continue;
    std::vector<std::pair<int, double>> ordered(x.row(i).begin(), x.row(i).end());
    std::stable_sort(ordered.begin(), ordered.end(),
                     [&](const auto& a, const auto& b) {
                       const double va = value_of(i, a.first), vb = value_of(i, b.first);
                       if (va != vb) return va > vb;
                       return a.first < b.first;
                     });
    fill_player_groups(system, i, ordered);
  }
  return system;
}

// Kuhn augmenting search, object side: try to match object j.
bool augment_object(int j, const std::vector<std::vector<int>>& obj_adj,
                    std::vector<int>& match_of_object, std::vector<int>& match_of_group,
                    std::vector<char>& visited) {
  for (int g : obj_adj[j]) {
    if (visited[g]) continue;
    visited[g] = 1;
    if (match_of_group[g] < 0 ||
        augment_object(match_of_group[g], obj_adj, match_of_object, match_of_group, visited)) {
      match_of_group[g] = j;
      match_of_object[j] = g;
      return true;
    }
  }
  return false;
}

bool augment_group(int g, const std::vector<std::vector<int>>& grp_adj,
                   std::vector<int>& match_of_group, std::vector<int>& match_of_object,
                   std::vector<char>& visited) {
  for (int j : grp_adj[g]) {
    if (visited[j]) continue;
    visited[j] = 1;
    if (match_of_object[j] < 0 ||
        augment_group(match_of_object[j], grp_adj, match_of_group, match_of_object, visited)) {
      match_of_object[j] = g;
      match_of_group[g] = j;
      return true;
    }
  }
  return false;
}

}  // namespace

GroupSystem partition_groups(const FractionalAssignment& x, const NswInstance& instance) {
  return partition_impl(
      x, instance.num_agents(), instance.num_items(),
      [&](int i, int j) { return instance.value(i, j); }, /*require_unit_mass=*/true);
}

GroupSystem partition_groups(const FractionalAssignment& x, const SchedInstance& instance) {
  return partition_impl(
      x, instance.num_machines(), instance.num_jobs(),
      [&](int i, int j) { return instance.size(i, j); }, /*require_unit_mass=*/false);
}

MatchingDecomposition decompose(const GroupSystem& system) {
  const int ng = static_cast<int>(system.groups.size());
  const int no = system.num_objects;

  // Residual edge masses, group-major.
  std::vector<std::vector<std::pair<int, double>>> residual(ng);
  int support_edges = 0;
  for (int g = 0; g < ng; ++g) {
    for (const auto& [j, m] : system.groups[g].mass) {
      if (m > kSupportTol) {
        residual[g].push_back({j, m});
        ++support_edges;
      }
    }
    std::sort(residual[g].begin(), residual[g].end());
  }

  MatchingDecomposition out;
  double lambda_sum = 0.0;
  const int max_iter = support_edges + ng + 8;
  for (int iter = 0; iter <= max_iter; ++iter) {
    const double scale = 1.0 - lambda_sum;
    if (scale <= kSaturationTol) break;

    std::vector<std::vector<int>> grp_adj(ng), obj_adj(no);
    std::vector<double> degree(ng, 0.0);
    for (int g = 0; g < ng; ++g) {
      for (const auto& [j, m] : residual[g]) {
        if (m > kSupportTol) {
          grp_adj[g].push_back(j);
          obj_adj[j].push_back(g);
          degree[g] += m;
        }
      }
    }
    std::vector<char> saturated(ng, 0);
    for (int g = 0; g < ng; ++g) saturated[g] = degree[g] >= scale - kSaturationTol;

    // A matching covering all objects, then one covering all saturated
    // groups; merge by walking alternating paths so both stay covered.
    std::vector<int> match_of_object(no, -1), match_of_group(ng, -1);
    for (int j = 0; j < no; ++j) {
      std::vector<char> visited(ng, 0);
      if (!augment_object(j, obj_adj, match_of_object, match_of_group, visited)) {
        throw std::logic_error("decompose: no matching covers all objects");
      }
    }
    std::vector<int> m2_of_group(ng, -1), m2_of_object(no, -1);
    for (int g = 0; g < ng; ++g) {
      if (!saturated[g]) continue;
      std::vector<char> visited(no, 0);
      if (!augment_group(g, grp_adj, m2_of_group, m2_of_object, visited)) {
        throw std::logic_error("decompose: no matching covers all saturated groups");
      }
    }
    for (int g0 = 0; g0 < ng; ++g0) {
      if (!saturated[g0] || match_of_group[g0] >= 0) continue;
      // Reassign along g0's alternating path; objects stay matched, and any
      // saturated group displaced along the way re-covers via its own M2
      // edge. Terminates because each object is entered at most once.
      int cur = g0;
      while (cur >= 0) {
        const int j = m2_of_group[cur];
        if (j < 0) throw std::logic_error("decompose: saturated group missing cover edge");
        const int displaced = match_of_object[j];
        match_of_object[j] = cur;
        match_of_group[cur] = j;
        if (displaced >= 0) match_of_group[displaced] = -1;
        cur = (displaced >= 0 && saturated[displaced]) ? displaced : -1;
      }
    }

    // Largest step keeping residuals nonnegative and unmatched groups below
    // the saturation line.
    double lambda = scale;
    for (int j = 0; j < no; ++j) {
      const int g = match_of_object[j];
      for (const auto& [jj, m] : residual[g]) {
        if (jj == j) { lambda = std::min(lambda, m); break; }
      }
    }
    for (int g = 0; g < ng; ++g) {
      if (!saturated[g] && match_of_group[g] < 0) {
        lambda = std::min(lambda, scale - degree[g]);
      }
    }
    const bool final_term = lambda >= scale - kSaturationTol;
    if (final_term) lambda = scale;
    if (lambda <= 0.0) throw std::logic_error("decompose: stalled with zero step");

    DecompositionTerm term;
    term.lambda = lambda;
    term.object_to_group = match_of_object;
    term.allocation.owner.resize(no);
    for (int j = 0; j < no; ++j) {
      term.allocation.owner[j] = system.groups[match_of_object[j]].player;
    }
    out.terms.push_back(std::move(term));
    if (final_term) return out;

    for (int j = 0; j < no; ++j) {
      const int g = match_of_object[j];
      for (auto& [jj, m] : residual[g]) {
        if (jj == j) {
          m -= lambda;
          if (m < kSupportTol) m = 0.0;
          break;
        }
      }
    }
    lambda_sum += lambda;
  }
  throw std::logic_error("decompose: iteration cap exceeded");
}

Allocation sample(const MatchingDecomposition& decomposition, std::uint64_t seed) {
  if (decomposition.terms.empty()) throw std::invalid_argument("empty decomposition");
  double total = 0.0;
  for (const auto& t : decomposition.terms) total += t.lambda;
  std::mt19937_64 rng(seed);
  // Portable uniform draw in [0,1); distributions are implementation-defined.
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53 * total;
  double acc = 0.0;
  for (const auto& t : decomposition.terms) {
    acc += t.lambda;
    if (u < acc) return t.allocation;
  }
  return decomposition.terms.back().allocation;
}

RoundedPick best_allocation(const MatchingDecomposition& decomposition,
                            const NswInstance& instance) {
  if (decomposition.terms.empty()) throw std::invalid_argument("empty decomposition");
  RoundedPick pick;
  double expected = 0.0;
  for (int k = 0; k < static_cast<int>(decomposition.terms.size()); ++k) {
    const DecompositionTerm& term = decomposition.terms[k];
    double log_nsw = 0.0;
    std::vector<double> bundle(instance.num_agents(), 0.0);
    for (int j = 0; j < instance.num_items(); ++j) {
      bundle[term.allocation.owner[j]] += instance.value(term.allocation.owner[j], j);
    }
    for (int i = 0; i < instance.num_agents(); ++i) {
      if (!(bundle[i] > 0.0)) {
        throw std::logic_error("decomposition term leaves agent " + instance.agents()[i].id +
                               " empty");
      }
      log_nsw += instance.weight(i) * std::log(bundle[i]);
    }
    expected += term.lambda * log_nsw;
    const double value = nsw_value(instance, term.allocation);
    if (pick.term_index < 0 || value > pick.value) {
      pick.term_index = k;
      pick.allocation = term.allocation;
      pick.value = value;
    }
  }
  pick.expected_value = expected;
  return pick;
}

RoundedPick best_allocation(const MatchingDecomposition& decomposition,
                            const SchedInstance& instance) {
  if (decomposition.terms.empty()) throw std::invalid_argument("empty decomposition");
  RoundedPick pick;
  double expected = 0.0;
  for (int k = 0; k < static_cast<int>(decomposition.terms.size()); ++k) {
    const DecompositionTerm& term = decomposition.terms[k];
    const double cost = sched_cost(instance, term.allocation);
    expected += term.lambda * cost;
    if (pick.term_index < 0 || cost < pick.value) {
      pick.term_index = k;
      pick.allocation = term.allocation;
      pick.value = cost;
    }
  }
  pick.expected_value = expected;
  return pick;
}

}  // namespace nswcp
