#include "nswcp/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nswcp {

NswInstance::NswInstance(std::vector<NswAgent> agents, std::vector<std::string> items,
                         std::vector<NswEdge> edges)
    : agents_(std::move(agents)), items_(std::move(items)), edges_(std::move(edges)) {
  by_agent_.resize(agents_.size());
  by_item_.resize(items_.size());
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    const NswEdge& edge = edges_[e];
    if (edge.agent < 0 || edge.agent >= num_agents() || edge.item < 0 ||
        edge.item >= num_items()) {
      throw std::invalid_argument("edge references unknown agent or item");
    }
    by_agent_[edge.agent].push_back(e);
    by_item_[edge.item].push_back(e);
    edge_index_.emplace(std::make_pair(edge.agent, edge.item), e);
  }
  for (auto& v : by_agent_) {
    std::sort(v.begin(), v.end(), [&](int a, int b) { return edges_[a].item < edges_[b].item; });
  }
  for (auto& v : by_item_) {
    std::sort(v.begin(), v.end(), [&](int a, int b) { return edges_[a].agent < edges_[b].agent; });
  }
}

bool NswInstance::has_edge(int agent, int item) const {
  return edge_index_.count({agent, item}) > 0;
}

double NswInstance::value(int agent, int item) const {
  auto it = edge_index_.find({agent, item});
  if (it == edge_index_.end()) {
    throw std::invalid_argument("no edge between agent " + agents_[agent].id + " and item " +
                                items_[item]);
  }
  return edges_[it->second].value;
}

std::vector<double> NswInstance::agent_values(int agent) const {
  std::vector<double> out;
  out.reserve(by_agent_[agent].size());
  for (int e : by_agent_[agent]) out.push_back(edges_[e].value);
  return out;
}

bool NswInstance::is_unweighted(double tol) const {
  const double uniform = 1.0 / num_agents();
  for (const auto& a : agents_) {
    if (std::abs(a.weight - uniform) > tol) return false;
  }
  return true;
}

SchedInstance::SchedInstance(std::vector<std::string> machines, std::vector<std::string> jobs,
                             std::vector<std::vector<double>> p, SchedObjective objective)
    : machines_(std::move(machines)), jobs_(std::move(jobs)), p_(std::move(p)),
      objective_(objective) {
  if (p_.size() != machines_.size()) {
    throw std::invalid_argument("p must have one row per machine");
  }
  for (const auto& row : p_) {
    if (row.size() != jobs_.size()) {
      throw std::invalid_argument("p rows must have one entry per job");
    }
  }
}

FractionalAssignment::FractionalAssignment(int num_players, int num_objects)
    : rows_(num_players), num_objects_(num_objects) {}

void FractionalAssignment::set(int player, int object, double mass) {
  if (mass < kMassEps) {
    rows_[player].erase(object);
  } else {
    rows_[player][object] = mass;
  }
}

double FractionalAssignment::at(int player, int object) const {
  auto it = rows_[player].find(object);
  return it == rows_[player].end() ? 0.0 : it->second;
}

double FractionalAssignment::player_mass(int player) const {
  double s = 0.0;
  for (const auto& [_, m] : rows_[player]) s += m;
  return s;
}

double FractionalAssignment::object_mass(int object) const {
  double s = 0.0;
  for (const auto& row : rows_) {
    auto it = row.find(object);
    if (it != row.end()) s += it->second;
  }
  return s;
}

namespace {

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

}  // namespace

std::vector<std::string> validate(const NswInstance& inst) {
  std::vector<std::string> out;
  double weight_sum = 0.0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    const NswAgent& a = inst.agents()[i];
    if (!(a.weight > 0.0)) {
      out.push_back("agent " + a.id + ": weight " + fmt(a.weight) + " is not strictly positive");
    }
    weight_sum += a.weight;
    if (inst.agent_edges(i).empty()) {
      out.push_back("agent " + a.id + ": no incident edge");
    }
  }
  if (std::abs(weight_sum - 1.0) > kResidualTol) {
    out.push_back("weights sum to " + fmt(weight_sum));
  }
  for (int j = 0; j < inst.num_items(); ++j) {
    if (inst.item_edges(j).empty()) {
      out.push_back("item " + inst.items()[j] + ": no incident edge");
    }
  }
  std::map<std::pair<int, int>, int> seen;
  for (const NswEdge& e : inst.edges()) {
    if (!(e.value > 0.0)) {
      out.push_back("edge (" + inst.agents()[e.agent].id + "," + inst.items()[e.item] +
                    "): value " + fmt(e.value) + " is not strictly positive");
    }
    if (++seen[{e.agent, e.item}] == 2) {
      out.push_back("duplicate edge (" + inst.agents()[e.agent].id + "," +
                    inst.items()[e.item] + ")");
    }
  }
  return out;
}

std::vector<std::string> validate(const SchedInstance& inst) {
  std::vector<std::string> out;
  for (int i = 0; i < inst.num_machines(); ++i) {
    for (int j = 0; j < inst.num_jobs(); ++j) {
      if (!(inst.size(i, j) > 0.0)) {
        out.push_back("p(" + inst.machines()[i] + "," + inst.jobs()[j] + ") = " +
                      fmt(inst.size(i, j)) + " is not strictly positive");
      }
    }
  }
  if (inst.objective().kind == SchedObjectiveKind::PowerLoad && inst.objective().k < 1.0) {
    out.push_back("PowerLoad exponent k = " + fmt(inst.objective().k) + " is below 1");
  }
  return out;
}

std::vector<std::string> check_fractional(const NswInstance& inst,
                                          const FractionalAssignment& x) {
  std::vector<std::string> out;
  if (x.num_players() != inst.num_agents() || x.num_objects() != inst.num_items()) {
    out.push_back("dimension mismatch with instance");
    return out;
  }
  for (int i = 0; i < inst.num_agents(); ++i) {
    for (const auto& [j, m] : x.row(i)) {
      if (!inst.has_edge(i, j)) {
        out.push_back("mass on non-edge (" + inst.agents()[i].id + "," + inst.items()[j] + ")");
      }
      if (m < -kFeasTol || m > 1.0 + kFeasTol) {
        out.push_back("x(" + inst.agents()[i].id + "," + inst.items()[j] + ") = " + fmt(m) +
                      " outside [0,1]");
      }
    }
    if (x.player_mass(i) < 1.0 - kFeasTol) {
      out.push_back("agent " + inst.agents()[i].id + ": mass " + fmt(x.player_mass(i)) +
                    " below 1");
    }
  }
  for (int j = 0; j < inst.num_items(); ++j) {
    if (std::abs(x.object_mass(j) - 1.0) > kFeasTol) {
      out.push_back("item " + inst.items()[j] + ": column sums to " + fmt(x.object_mass(j)));
    }
  }
  return out;
}

std::vector<std::string> check_fractional(const SchedInstance& inst,
                                          const FractionalAssignment& x) {
  std::vector<std::string> out;
  if (x.num_players() != inst.num_machines() || x.num_objects() != inst.num_jobs()) {
    out.push_back("dimension mismatch with instance");
    return out;
  }
  for (int j = 0; j < inst.num_jobs(); ++j) {
    if (std::abs(x.object_mass(j) - 1.0) > kFeasTol) {
      out.push_back("job " + inst.jobs()[j] + ": column sums to " + fmt(x.object_mass(j)));
    }
  }
  return out;
}

double nsw_value(const NswInstance& inst, const Allocation& allocation) {
  if (static_cast<int>(allocation.owner.size()) != inst.num_items()) {
    throw std::invalid_argument("allocation must map every item");
  }
  std::vector<double> bundle(inst.num_agents(), 0.0);
  for (int j = 0; j < inst.num_items(); ++j) {
    const int i = allocation.owner[j];
    if (i < 0 || i >= inst.num_agents()) {
      throw std::invalid_argument("item " + inst.items()[j] + " is unallocated");
    }
    bundle[i] += inst.value(i, j);  // throws on non-edges
  }
  double out = 1.0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    if (bundle[i] <= 0.0 && inst.weight(i) > 0.0) return 0.0;
    out *= std::pow(bundle[i], inst.weight(i));
  }
  return out;
}

double sched_cost(const SchedInstance& inst, const Allocation& allocation) {
  if (static_cast<int>(allocation.owner.size()) != inst.num_jobs()) {
    throw std::invalid_argument("allocation must map every job");
  }
  std::vector<double> load(inst.num_machines(), 0.0);
  double sq = 0.0;
  for (int j = 0; j < inst.num_jobs(); ++j) {
    const int i = allocation.owner[j];
    if (i < 0 || i >= inst.num_machines()) {
      throw std::invalid_argument("job " + inst.jobs()[j] + " is unallocated");
    }
    load[i] += inst.size(i, j);
    sq += inst.size(i, j) * inst.size(i, j);
  }
  const SchedObjective& obj = inst.objective();
  double out = 0.0;
  if (obj.kind == SchedObjectiveKind::PowerLoad) {
    for (double l : load) out += std::pow(l, obj.k);
  } else {
    for (double l : load) out += l * l;
    out = 0.5 * (out + sq);
  }
  return out;
}

}  // namespace nswcp
