#pragma once

// Instance and allocation data model for Nash social welfare and unrelated
// machine scheduling, plus validation and objective evaluation.
//
// Conventions: "players" are agents (NSW) or machines (scheduling);
// "objects" are items or jobs. All types are immutable after construction
// and all operations are pure.

#include <map>
#include <string>
#include <vector>

namespace nswcp {

// Centralized tolerances. Feasibility checks on fractional assignments and
// LP solutions use kFeasTol; scalar residuals (weight sums, water-level
// equations) use kResidualTol; masses below kMassEps count as zero.
inline constexpr double kFeasTol = 1e-7;
inline constexpr double kResidualTol = 1e-9;
inline constexpr double kMassEps = 1e-12;

struct NswAgent {
  std::string id;
  double weight = 0.0;
};

struct NswEdge {
  int agent = -1;
  int item = -1;
  double value = 0.0;
};

class NswInstance {
 public:
  NswInstance(std::vector<NswAgent> agents, std::vector<std::string> items,
              std::vector<NswEdge> edges);

  int num_agents() const { return static_cast<int>(agents_.size()); }
  int num_items() const { return static_cast<int>(items_.size()); }
  const std::vector<NswAgent>& agents() const { return agents_; }
  const std::vector<std::string>& items() const { return items_; }
  const std::vector<NswEdge>& edges() const { return edges_; }
  double weight(int agent) const { return agents_[agent].weight; }

  // Edge indices incident to an agent (sorted by item) / to an item
  // (sorted by agent).
  const std::vector<int>& agent_edges(int agent) const { return by_agent_[agent]; }
  const std::vector<int>& item_edges(int item) const { return by_item_[item]; }

  bool has_edge(int agent, int item) const;
  // Value v_ij; throws if the edge is absent.
  double value(int agent, int item) const;

  // Values of all edges incident to one agent, in item order.
  std::vector<double> agent_values(int agent) const;

  bool is_unweighted(double tol = kResidualTol) const;

 private:
  std::vector<NswAgent> agents_;
  std::vector<std::string> items_;
  std::vector<NswEdge> edges_;
  std::vector<std::vector<int>> by_agent_;
  std::vector<std::vector<int>> by_item_;
  std::map<std::pair<int, int>, int> edge_index_;
};

enum class SchedObjectiveKind { PowerLoad, CompletionUniformSmith };

struct SchedObjective {
  SchedObjectiveKind kind = SchedObjectiveKind::PowerLoad;
  double k = 2.0;  // exponent for PowerLoad; ignored for completion time

  static SchedObjective power(double k) { return {SchedObjectiveKind::PowerLoad, k}; }
  static SchedObjective completion() { return {SchedObjectiveKind::CompletionUniformSmith, 2.0}; }
};

// Complete bipartite machine/job instance: p[i][j] > 0 for every machine i
// and job j.
class SchedInstance {
 public:
  SchedInstance(std::vector<std::string> machines, std::vector<std::string> jobs,
                std::vector<std::vector<double>> p, SchedObjective objective);

  int num_machines() const { return static_cast<int>(machines_.size()); }
  int num_jobs() const { return static_cast<int>(jobs_.size()); }
  const std::vector<std::string>& machines() const { return machines_; }
  const std::vector<std::string>& jobs() const { return jobs_; }
  const std::vector<std::vector<double>>& p() const { return p_; }
  double size(int machine, int job) const { return p_[machine][job]; }
  const SchedObjective& objective() const { return objective_; }

  std::vector<double> machine_sizes(int machine) const { return p_[machine]; }

 private:
  std::vector<std::string> machines_;
  std::vector<std::string> jobs_;
  std::vector<std::vector<double>> p_;
  SchedObjective objective_;
};

// Total map object -> player. owner[j] is the receiving player of object j.
struct Allocation {
  std::vector<int> owner;
};

// Sparse fractional assignment x over player/object pairs. Entries with
// mass below kMassEps are dropped on insertion.
class FractionalAssignment {
 public:
  FractionalAssignment() = default;
  FractionalAssignment(int num_players, int num_objects);

  void set(int player, int object, double mass);
  double at(int player, int object) const;
  double player_mass(int player) const;
  double object_mass(int object) const;

  int num_players() const { return static_cast<int>(rows_.size()); }
  int num_objects() const { return num_objects_; }
  // Per-player sparse row, keyed by object id.
  const std::map<int, double>& row(int player) const { return rows_[player]; }

 private:
  std::vector<std::map<int, double>> rows_;
  int num_objects_ = 0;
};

// Returns all invariant violations with locations; empty means ok.
std::vector<std::string> validate(const NswInstance& instance);
std::vector<std::string> validate(const SchedInstance& instance);

// Constraint residual checks for fractional assignments: object columns sum
// to 1 within kFeasTol; for NSW every agent mass is >= 1 - kFeasTol and the
// support respects the edge set.
std::vector<std::string> check_fractional(const NswInstance& instance,
                                          const FractionalAssignment& x);
std::vector<std::string> check_fractional(const SchedInstance& instance,
                                          const FractionalAssignment& x);

// Weighted Nash social welfare prod_i v_i(bundle_i)^{w_i}. Returns 0 when
// some agent with positive weight receives nothing. Throws when the
// allocation uses a non-edge or is not total.
double nsw_value(const NswInstance& instance, const Allocation& allocation);

// Scheduling cost: sum_i load_i^k for PowerLoad, or
// (1/2) sum_i (load_i^2 + sum_{j->i} p_ij^2) for uniform-Smith completion.
double sched_cost(const SchedInstance& instance, const Allocation& allocation);

}  // namespace nswcp
