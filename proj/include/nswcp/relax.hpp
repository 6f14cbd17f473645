#pragma once

// The three compact LP relaxations: weighted NSW (maximize sum w_i fbar_i),
// theta-load scheduling (minimize sum fbar_i), and uniform-Smith completion
// time. Each discretizes the per-player water-fill objective over a
// geometric level grid and encodes it with epigraph rows.

#include <stdexcept>
#include <vector>

#include "nswcp/lp.hpp"
#include "nswcp/model.hpp"
#include "nswcp/waterfill.hpp"

namespace nswcp {

inline constexpr double kDefaultEps = 1e-3;

struct InfeasibleInstance : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FractionalSolution {
  FractionalAssignment x;
  double value = 0.0;            // LP objective at the optimum
  std::vector<double> levels;    // per-player water levels recomputed from x
  double epsilon = kDefaultEps;
  std::vector<int> grid_sizes;   // |H_i| per player
};

struct NswLpLayout {
  // Per agent: (item, x-variable index) in item order, plus the fbar index.
  std::vector<std::vector<std::pair<int, int>>> x_vars;
  std::vector<int> fbar_vars;
  std::vector<Grid> grids;
};

struct SchedLpLayout {
  std::vector<std::vector<int>> x_vars;  // machine x job
  std::vector<int> fbar_vars;
  std::vector<Grid> grids;
};

// Full models with every epigraph row, mainly for inspection and MPS dumps.
LpModel build_nsw_lp(const NswInstance& instance, double eps, NswLpLayout* layout = nullptr);
LpModel build_theta_lp(const SchedInstance& instance, double eps, const ThetaSpec& theta,
                       SchedLpLayout* layout = nullptr);
LpModel build_completion_lp(const SchedInstance& instance, double eps,
                            SchedLpLayout* layout = nullptr);

// Solvers. Epigraph rows are generated lazily against the full grid, so the
// returned solution is optimal for the corresponding full model; the final
// x is certified against every grid level before returning. x entries below
// 1e-9 are pruned and object columns renormalized.
FractionalSolution solve_cp_nsw(const NswInstance& instance, double eps = kDefaultEps);
FractionalSolution solve_cp_theta(const SchedInstance& instance, double eps = kDefaultEps);
FractionalSolution solve_cp_completion(const SchedInstance& instance, double eps = kDefaultEps);

// One player's restriction of x as a value/mass profile.
ValueMassProfile nsw_profile(const NswInstance& instance, const FractionalAssignment& x,
                             int agent);
ValueMassProfile sched_profile(const SchedInstance& instance, const FractionalAssignment& x,
                               int machine);

}  // namespace nswcp
