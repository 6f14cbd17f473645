#include "nswcp/relax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace nswcp {

namespace {

constexpr double kPruneTol = 1e-9;
constexpr double kRowGenTol = 1e-10;
constexpr int kInitialRows = 8;

// Epigraph coefficients of g as a linear function of the masses at fixed h.
double nsw_coeff(double v, double h) {
  double c = std::min(v, h) / h;
  if (v > h) c += std::log(v / h);
  return c;
}

double theta_coeff(double p, double h, const ThetaSpec& theta) {
  double c = theta.derivative(h) * std::min(p, h);
  if (p > h) c += theta.value(p) - theta.value(h);
  return c;
}

std::vector<int> initial_levels(const Grid& grid) {
  const int n = static_cast<int>(grid.levels.size());
  std::vector<int> out;
  for (int k = 0; k < kInitialRows; ++k) {
    out.push_back(static_cast<int>(static_cast<long long>(k) * (n - 1) / std::max(1, kInitialRows - 1)));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> all_levels(const Grid& grid) {
  std::vector<int> out(grid.levels.size());
  for (size_t k = 0; k < out.size(); ++k) out[k] = static_cast<int>(k);
  return out;
}

LpModel build_nsw_model(const NswInstance& inst, const std::vector<Grid>& grids,
                        const std::vector<std::vector<int>>& active, NswLpLayout* layout) {
  LpModel model;
  const int n = inst.num_agents(), m = inst.num_items();
  std::vector<std::vector<std::pair<int, int>>> x_vars(n);
  std::vector<int> fbar_vars(n);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    for (int e : inst.agent_edges(i)) {
      const NswEdge& edge = inst.edges()[e];
      const int var = model.add_variable(
          "x(" + inst.agents()[i].id + "," + inst.items()[edge.item] + ")", 0.0, 1.0);
      x_vars[i].push_back({edge.item, var});
    }
  }
  for (int i = 0; i < n; ++i) {
    fbar_vars[i] = model.add_variable("f(" + inst.agents()[i].id + ")", -inf, inf);
  }

  std::vector<std::pair<int, double>> obj;
  for (int i = 0; i < n; ++i) obj.push_back({fbar_vars[i], inst.weight(i)});
  model.set_objective(LpSense::Maximize, obj);

  std::vector<std::vector<std::pair<int, double>>> columns(m);
  for (int i = 0; i < n; ++i) {
    for (const auto& [item, var] : x_vars[i]) columns[item].push_back({var, 1.0});
  }
  for (int j = 0; j < m; ++j) {
    model.add_constraint("item(" + inst.items()[j] + ")", columns[j], LpRelation::Equal, 1.0);
  }
  for (int i = 0; i < n; ++i) {
    std::vector<std::pair<int, double>> row;
    for (const auto& [item, var] : x_vars[i]) row.push_back({var, 1.0});
    model.add_constraint("mass(" + inst.agents()[i].id + ")", row, LpRelation::GreaterEqual, 1.0);
  }
  // fbar_i <= g_i(x_i, h) for each active level h.
  for (int i = 0; i < n; ++i) {
    for (int t : active[i]) {
      const double h = grids[i].levels[t];
      std::vector<std::pair<int, double>> row{{fbar_vars[i], 1.0}};
      for (const auto& [item, var] : x_vars[i]) {
        row.push_back({var, -nsw_coeff(inst.value(i, item), h)});
      }
      model.add_constraint("epi(" + inst.agents()[i].id + "," + std::to_string(t) + ")", row,
                           LpRelation::LessEqual, std::log(h) - 1.0);
    }
  }
  if (layout != nullptr) {
    layout->x_vars = x_vars;
    layout->fbar_vars = fbar_vars;
    layout->grids = grids;
  }
  return model;
}

// Shares structure between the theta-load and completion-time programs: the
// completion objective carries the extra (1/2) sum x p^2 linear term and
// halves the fbar coefficients.
LpModel build_sched_model(const SchedInstance& inst, const std::vector<Grid>& grids,
                          const std::vector<std::vector<int>>& active, const ThetaSpec& theta,
                          bool completion, SchedLpLayout* layout) {
  LpModel model;
  const int m = inst.num_machines(), n = inst.num_jobs();
  std::vector<std::vector<int>> x_vars(m, std::vector<int>(n, -1));
  std::vector<int> fbar_vars(m);
  const double inf = std::numeric_limits<double>::infinity();
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) {
      x_vars[i][j] = model.add_variable(
          "x(" + inst.machines()[i] + "," + inst.jobs()[j] + ")", 0.0, 1.0);
    }
  }
  for (int i = 0; i < m; ++i) {
    fbar_vars[i] = model.add_variable("f(" + inst.machines()[i] + ")", -inf, inf);
  }

  std::vector<std::pair<int, double>> obj;
  const double scale = completion ? 0.5 : 1.0;
  for (int i = 0; i < m; ++i) obj.push_back({fbar_vars[i], scale});
  if (completion) {
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < n; ++j) {
        obj.push_back({x_vars[i][j], 0.5 * inst.size(i, j) * inst.size(i, j)});
      }
    }
  }
  model.set_objective(LpSense::Minimize, obj);

  for (int j = 0; j < n; ++j) {
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < m; ++i) row.push_back({x_vars[i][j], 1.0});
    model.add_constraint("job(" + inst.jobs()[j] + ")", row, LpRelation::Equal, 1.0);
  }
  // fbar_i >= g_i(x_i, h) for each active level h (minimization sense).
  for (int i = 0; i < m; ++i) {
    for (int t : active[i]) {
      const double h = grids[i].levels[t];
      std::vector<std::pair<int, double>> row{{fbar_vars[i], 1.0}};
      for (int j = 0; j < n; ++j) {
        row.push_back({x_vars[i][j], -theta_coeff(inst.size(i, j), h, theta)});
      }
      model.add_constraint("epi(" + inst.machines()[i] + "," + std::to_string(t) + ")", row,
                           LpRelation::GreaterEqual,
                           theta.value(h) - theta.derivative(h) * h);
    }
  }
  if (layout != nullptr) {
    layout->x_vars = x_vars;
    layout->fbar_vars = fbar_vars;
    layout->grids = grids;
  }
  return model;
}

void require_valid(const std::vector<std::string>& violations) {
  if (!violations.empty()) {
    throw std::invalid_argument("invalid instance: " + violations.front());
  }
}

// Drop entries below the prune threshold, then renormalize each object
// column so it sums to 1 again; rounding needs clean support.
void prune_and_renormalize(FractionalAssignment& x) {
  const int players = x.num_players();
  for (int i = 0; i < players; ++i) {
    std::vector<int> drop;
    for (const auto& [j, mass] : x.row(i)) {
      if (mass < kPruneTol) drop.push_back(j);
    }
    for (int j : drop) x.set(i, j, 0.0);
  }
  for (int j = 0; j < x.num_objects(); ++j) {
    const double s = x.object_mass(j);
    if (s <= 0.0) throw std::logic_error("object column vanished during pruning");
    if (s == 1.0) continue;
    for (int i = 0; i < players; ++i) {
      const double m = x.at(i, j);
      if (m > 0.0) x.set(i, j, m / s);
    }
  }
}

}  // namespace

ValueMassProfile nsw_profile(const NswInstance& inst, const FractionalAssignment& x, int agent) {
  std::vector<double> values, masses;
  double total = 0.0;
  for (const auto& [j, m] : x.row(agent)) {
    values.push_back(inst.value(agent, j));
    masses.push_back(m);
    total += m;
  }
  // Assignments are feasible within kFeasTol; profiles require unit mass to
  // kResidualTol, so lift a marginally deficient agent back onto the simplex.
  if (total >= 1.0 - kFeasTol && total < 1.0) {
    for (double& m : masses) m /= total;
  }
  return ValueMassProfile(std::move(values), std::move(masses), ProfileRole::Nsw);
}

ValueMassProfile sched_profile(const SchedInstance& inst, const FractionalAssignment& x,
                               int machine) {
  std::vector<double> values, masses;
  for (const auto& [j, m] : x.row(machine)) {
    values.push_back(inst.size(machine, j));
    masses.push_back(m);
  }
  return ValueMassProfile(std::move(values), std::move(masses), ProfileRole::Sched);
}

LpModel build_nsw_lp(const NswInstance& inst, double eps, NswLpLayout* layout) {
  require_valid(validate(inst));
  std::vector<Grid> grids;
  std::vector<std::vector<int>> active;
  for (int i = 0; i < inst.num_agents(); ++i) {
    grids.push_back(Grid::nsw(inst.agent_values(i), eps));
    active.push_back(all_levels(grids.back()));
  }
  return build_nsw_model(inst, grids, active, layout);
}

LpModel build_theta_lp(const SchedInstance& inst, double eps, const ThetaSpec& theta,
                       SchedLpLayout* layout) {
  require_valid(validate(inst));
  std::vector<Grid> grids;
  std::vector<std::vector<int>> active;
  for (int i = 0; i < inst.num_machines(); ++i) {
    grids.push_back(Grid::sched(inst.machine_sizes(i), eps));
    active.push_back(all_levels(grids.back()));
  }
  return build_sched_model(inst, grids, active, theta, false, layout);
}

LpModel build_completion_lp(const SchedInstance& inst, double eps, SchedLpLayout* layout) {
  require_valid(validate(inst));
  std::vector<Grid> grids;
  std::vector<std::vector<int>> active;
  for (int i = 0; i < inst.num_machines(); ++i) {
    grids.push_back(Grid::sched(inst.machine_sizes(i), eps));
    active.push_back(all_levels(grids.back()));
  }
  return build_sched_model(inst, grids, active, ThetaSpec::power(2.0), true, layout);
}

FractionalSolution solve_cp_nsw(const NswInstance& inst, double eps) {
  require_valid(validate(inst));
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const int n = inst.num_agents();
  std::vector<Grid> grids;
  std::vector<std::vector<int>> active;
  for (int i = 0; i < n; ++i) {
    grids.push_back(Grid::nsw(inst.agent_values(i), eps));
    active.push_back(initial_levels(grids.back()));
  }

  FractionalAssignment x(n, inst.num_items());
  double objective = 0.0;
  long long remaining = 0;
  for (const auto& g : grids) remaining += static_cast<long long>(g.levels.size());
  for (long long round = 0; round <= remaining; ++round) {
    NswLpLayout layout;
    LpModel model = build_nsw_model(inst, grids, active, &layout);
    LpResult res = solve_lp(model);
    if (res.status == LpStatus::Infeasible) {
      throw InfeasibleInstance(
          "no fractional assignment gives every agent mass 1 (Hall condition violated)");
    }
    if (res.status != LpStatus::Optimal) {
      throw std::logic_error("NSW relaxation cannot be unbounded");
    }
    x = FractionalAssignment(n, inst.num_items());
    for (int i = 0; i < n; ++i) {
      for (const auto& [item, var] : layout.x_vars[i]) x.set(i, item, res.values[var]);
    }
    objective = res.objective;

    bool clean = true;
    for (int i = 0; i < n; ++i) {
      const ValueMassProfile profile = nsw_profile(inst, x, i);
      double best = std::numeric_limits<double>::infinity();
      int best_t = -1;
      for (int t = 0; t < static_cast<int>(grids[i].levels.size()); ++t) {
        const double g = g_nsw(profile, grids[i].levels[t]);
        if (g < best) { best = g; best_t = t; }
      }
      if (res.values[layout.fbar_vars[i]] > best + kRowGenTol &&
          !std::binary_search(active[i].begin(), active[i].end(), best_t)) {
        active[i].insert(std::lower_bound(active[i].begin(), active[i].end(), best_t), best_t);
        clean = false;
      }
    }
    if (clean) break;
  }

  prune_and_renormalize(x);
  FractionalSolution sol;
  sol.x = x;
  sol.value = objective;
  sol.epsilon = eps;
  for (int i = 0; i < n; ++i) {
    sol.levels.push_back(water_level(nsw_profile(inst, x, i), OneMassConvention::MinSupportValue));
    sol.grid_sizes.push_back(static_cast<int>(grids[i].levels.size()));
  }
  return sol;
}

namespace {

FractionalSolution solve_sched(const SchedInstance& inst, double eps, const ThetaSpec& theta,
                               bool completion) {
  require_valid(validate(inst));
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  const int m = inst.num_machines();
  std::vector<Grid> grids;
  std::vector<std::vector<int>> active;
  for (int i = 0; i < m; ++i) {
    grids.push_back(Grid::sched(inst.machine_sizes(i), eps));
    active.push_back(initial_levels(grids.back()));
  }

  FractionalAssignment x(m, inst.num_jobs());
  double objective = 0.0;
  long long remaining = 0;
  for (const auto& g : grids) remaining += static_cast<long long>(g.levels.size());
  for (long long round = 0; round <= remaining; ++round) {
    SchedLpLayout layout;
    LpModel model = build_sched_model(inst, grids, active, theta, completion, &layout);
    LpResult res = solve_lp(model);
    if (res.status != LpStatus::Optimal) {
      throw std::logic_error("scheduling relaxation is always feasible and bounded");
    }
    x = FractionalAssignment(m, inst.num_jobs());
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < inst.num_jobs(); ++j) x.set(i, j, res.values[layout.x_vars[i][j]]);
    }
    objective = res.objective;

    bool clean = true;
    for (int i = 0; i < m; ++i) {
      const ValueMassProfile profile = sched_profile(inst, x, i);
      double best = -std::numeric_limits<double>::infinity();
      int best_t = -1;
      for (int t = 0; t < static_cast<int>(grids[i].levels.size()); ++t) {
        const double g = g_theta(profile, grids[i].levels[t], theta);
        if (g > best) { best = g; best_t = t; }
      }
      if (res.values[layout.fbar_vars[i]] < best - kRowGenTol &&
          !std::binary_search(active[i].begin(), active[i].end(), best_t)) {
        active[i].insert(std::lower_bound(active[i].begin(), active[i].end(), best_t), best_t);
        clean = false;
      }
    }
    if (clean) break;
  }

  prune_and_renormalize(x);
  FractionalSolution sol;
  sol.x = x;
  sol.value = objective;
  sol.epsilon = eps;
  for (int i = 0; i < m; ++i) {
    sol.levels.push_back(water_level(sched_profile(inst, x, i), OneMassConvention::Zero));
    sol.grid_sizes.push_back(static_cast<int>(grids[i].levels.size()));
  }
  return sol;
}

}  // namespace

FractionalSolution solve_cp_theta(const SchedInstance& inst, double eps) {
  if (inst.objective().kind != SchedObjectiveKind::PowerLoad) {
    throw std::invalid_argument("solve_cp_theta requires a PowerLoad objective");
  }
  return solve_sched(inst, eps, ThetaSpec::power(inst.objective().k), false);
}

FractionalSolution solve_cp_completion(const SchedInstance& inst, double eps) {
  if (inst.objective().kind != SchedObjectiveKind::CompletionUniformSmith) {
    throw std::invalid_argument("solve_cp_completion requires a completion-time objective");
  }
  return solve_sched(inst, eps, ThetaSpec::power(2.0), true);
}

}  // namespace nswcp
