#pragma once

// Generic linear-program representation and a desk-scale deterministic
// solver: two-phase primal simplex with Bland's anti-cycling rule on a
// dense tableau. Any object satisfying the solve contract may replace the
// built-in solver behind this interface.

#include <span>
#include <string>
#include <vector>

#include "nswcp/model.hpp"

namespace nswcp {

enum class LpSense { Minimize, Maximize };
enum class LpRelation { LessEqual, GreaterEqual, Equal };

struct LpVariable {
  std::string name;
  double lower = 0.0;   // -inf allowed
  double upper = 0.0;   // +inf allowed
};

struct LpConstraint {
  std::string name;
  std::vector<std::pair<int, double>> coeffs;  // (variable index, coefficient)
  LpRelation relation = LpRelation::LessEqual;
  double rhs = 0.0;
};

class LpModel {
 public:
  // Throws on duplicate variable names, non-finite data, or lower > upper.
  int add_variable(const std::string& name, double lower, double upper);
  void add_constraint(const std::string& name, std::vector<std::pair<int, double>> coeffs,
                      LpRelation relation, double rhs);
  void set_objective(LpSense sense, std::vector<std::pair<int, double>> coeffs);

  int num_variables() const { return static_cast<int>(vars_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  const std::vector<LpVariable>& variables() const { return vars_; }
  const std::vector<LpConstraint>& constraints() const { return rows_; }
  LpSense sense() const { return sense_; }
  const std::vector<std::pair<int, double>>& objective() const { return objective_; }

  double objective_at(std::span<const double> point) const;

  // Fixed-format MPS text of the model (OBJSENSE section emitted for
  // maximization). Variable and row names are shortened to fixed-width
  // generated labels; originals appear in comment lines.
  std::string to_mps() const;

 private:
  std::vector<LpVariable> vars_;
  std::vector<LpConstraint> rows_;
  std::vector<std::pair<int, double>> objective_;
  LpSense sense_ = LpSense::Minimize;
  std::vector<std::string> var_names_;  // duplicate detection
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> values;  // per variable, clamped to bounds; empty unless Optimal
  double objective = 0.0;
  int iterations = 0;
};

LpResult solve_lp(const LpModel& model);

struct FeasibilityReport {
  bool ok = true;
  double worst_violation = 0.0;
  std::string worst_row;
};

// Max constraint/bound violation of a point; ok iff within kFeasTol.
FeasibilityReport check_feasible(const LpModel& model, std::span<const double> point);

}  // namespace nswcp
