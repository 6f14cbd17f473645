#include "nswcp/lp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace nswcp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kPhase1Tol = 1e-7;

}  // namespace

int LpModel::add_variable(const std::string& name, double lower, double upper) {
  for (const auto& existing : var_names_) {
    if (existing == name) throw std::invalid_argument("duplicate variable name: " + name);
  }
  if (std::isnan(lower) || std::isnan(upper) || lower > upper) {
    throw std::invalid_argument("inconsistent bounds for variable " + name);
  }
  var_names_.push_back(name);
  vars_.push_back({name, lower, upper});
  return static_cast<int>(vars_.size()) - 1;
}

void LpModel::add_constraint(const std::string& name,
                             std::vector<std::pair<int, double>> coeffs, LpRelation relation,
                             double rhs) {
  if (!std::isfinite(rhs)) throw std::invalid_argument("non-finite rhs in row " + name);
  for (const auto& [idx, c] : coeffs) {
    if (idx < 0 || idx >= num_variables()) {
      throw std::invalid_argument("row " + name + " references unknown variable");
    }
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coefficient in row " + name);
  }
  rows_.push_back({name, std::move(coeffs), relation, rhs});
}

void LpModel::set_objective(LpSense sense, std::vector<std::pair<int, double>> coeffs) {
  for (const auto& [idx, c] : coeffs) {
    if (idx < 0 || idx >= num_variables() || !std::isfinite(c)) {
      throw std::invalid_argument("bad objective coefficient");
    }
  }
  sense_ = sense;
  objective_ = std::move(coeffs);
}

double LpModel::objective_at(std::span<const double> point) const {
  double out = 0.0;
  for (const auto& [idx, c] : objective_) out += c * point[idx];
  return out;
}

namespace {

// Dense two-phase primal simplex with Bland's rule. Model variables are
// mapped to nonnegative columns: finite lower bounds are shifted out,
// upper-only variables are reflected, free variables are split.
//
// The tableau keeps a pristine copy of the initial system and rebuilds
// itself from the current basis (Gaussian elimination with partial
// pivoting) whenever entries grow large or a column offers only
// noise-level pivots; this plays the role of refactorization and keeps
// accumulated roundoff out of the basis decisions.
struct Tableau {
  int rows = 0, cols = 0;          // constraint rows, total columns incl. rhs
  std::vector<std::vector<double>> a;
  std::vector<std::vector<double>> initial;  // pristine standard-form copy
  std::vector<double> cost;        // reduced-cost row, cost[cols-1] = -objective
  std::vector<double> phase_cost;  // objective of the current phase, per column
  std::vector<int> basis;
  int iterations = 0;
  double max_entry = 1.0;

  void note_scale(double v) { max_entry = std::max(max_entry, std::abs(v)); }

  double noise_floor() const { return std::max(kPivotTol, 1e-12 * max_entry); }

  void pivot(int pr, int pc) {
    const double p = a[pr][pc];
    for (int c = 0; c < cols; ++c) a[pr][c] /= p;
    a[pr][pc] = 1.0;
    for (int r = 0; r < rows; ++r) {
      if (r == pr) continue;
      const double f = a[r][pc];
      if (f == 0.0) continue;
      for (int c = 0; c < cols; ++c) {
        a[r][c] -= f * a[pr][c];
        note_scale(a[r][c]);
      }
      a[r][pc] = 0.0;
    }
    const double f = cost[pc];
    if (f != 0.0) {
      for (int c = 0; c < cols; ++c) cost[c] -= f * a[pr][c];
      cost[pc] = 0.0;
    }
    basis[pr] = pc;
    ++iterations;
  }

  // Recomputes the tableau for the current basis from the pristine copy:
  // solve B X = A0 by Gaussian elimination with partial pivoting, then
  // restore the reduced-cost row for the current phase objective.
  void rebuild() {
    std::vector<std::vector<double>> work(rows, std::vector<double>(rows, 0.0));
    std::vector<std::vector<double>> rhs = initial;
    for (int r = 0; r < rows; ++r) {
      for (int rr = 0; rr < rows; ++rr) work[rr][r] = initial[rr][basis[r]];
    }
    for (int col = 0; col < rows; ++col) {
      int piv = col;
      for (int r = col + 1; r < rows; ++r) {
        if (std::abs(work[r][col]) > std::abs(work[piv][col])) piv = r;
      }
      if (std::abs(work[piv][col]) < 1e-300) {
        throw std::logic_error("simplex basis became singular");
      }
      std::swap(work[col], work[piv]);
      std::swap(rhs[col], rhs[piv]);
      const double d = work[col][col];
      for (int c = col; c < rows; ++c) work[col][c] /= d;
      for (int c = 0; c < cols; ++c) rhs[col][c] /= d;
      for (int r = 0; r < rows; ++r) {
        if (r == col) continue;
        const double f = work[r][col];
        if (f == 0.0) continue;
        for (int c = col; c < rows; ++c) work[r][c] -= f * work[col][c];
        for (int c = 0; c < cols; ++c) rhs[r][c] -= f * rhs[col][c];
      }
    }
    a = std::move(rhs);
    cost = phase_cost;
    for (int r = 0; r < rows; ++r) {
      const double cb = phase_cost[basis[r]];
      if (cb != 0.0) {
        for (int c = 0; c < cols; ++c) cost[c] -= cb * a[r][c];
      }
    }
    max_entry = 1.0;
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) note_scale(a[r][c]);
    }
  }

  void set_phase_cost(std::vector<double> c) {
    phase_cost = std::move(c);
    cost = phase_cost;
    for (int r = 0; r < rows; ++r) {
      const double cb = phase_cost[basis[r]];
      if (cb != 0.0) {
        for (int col = 0; col < cols; ++col) cost[col] -= cb * a[r][col];
      }
    }
  }

  // Minimizes over columns [0, limit). Returns false when unbounded.
  // Entering is by most negative reduced cost and leaving prefers the
  // largest pivot element among (near-)ties of the min ratio. A run of
  // degenerate pivots switches to Bland's rule (lowest index entering,
  // exact min ratio, lowest basic index) until progress resumes, which
  // precludes cycling.
  bool run(int limit) {
    const int rhs = cols - 1;
    int degenerate_streak = 0;
    int rebuilt_at = -1;
    while (true) {
      const bool bland = degenerate_streak >= 50;
      int enter = -1;
      double most_negative = -kPivotTol;
      for (int c = 0; c < limit; ++c) {
        if (cost[c] < most_negative) {
          enter = c;
          if (bland) break;
          most_negative = cost[c];
        }
      }
      if (enter < 0) return true;

      const double floor = noise_floor();
      int leave = -1;
      double best_ratio = kInf;
      for (int r = 0; r < rows; ++r) {
        if (a[r][enter] > floor) {
          const double ratio = std::max(0.0, a[r][rhs]) / a[r][enter];
          if (ratio < best_ratio ||
              (ratio == best_ratio && (leave < 0 || basis[r] < basis[leave]))) {
            best_ratio = ratio;
            leave = r;
          }
        }
      }
      if (leave < 0) {
        // No usable pivot in the column: either everything nonpositive
        // (unbounded) or only noise-level entries. Rebuild once to decide
        // with clean numbers.
        if (rebuilt_at == iterations) return false;
        rebuild();
        rebuilt_at = iterations;
        continue;
      }
      if (!bland) {
        const double band = best_ratio * (1.0 + 1e-9) + 1e-12;
        for (int r = 0; r < rows; ++r) {
          if (a[r][enter] > a[leave][enter] &&
              std::max(0.0, a[r][rhs]) / a[r][enter] <= band) {
            leave = r;
          }
        }
      }
      degenerate_streak = a[leave][rhs] <= kPivotTol ? degenerate_streak + 1 : 0;
      pivot(leave, enter);
      if (max_entry > 1e8) {
        rebuild();
        rebuilt_at = iterations;
      }
      if (iterations > 500000) throw std::logic_error("simplex iteration cap exceeded");
    }
  }
};

}  // namespace

LpResult solve_lp(const LpModel& model) {
  const int nv = model.num_variables();
  const auto& vars = model.variables();

  // Column mapping per model variable: shift, reflect, or split.
  enum class Map { Shift, Reflect, Split };
  struct ColInfo { Map map; int col; int col_neg; double offset; };
  std::vector<ColInfo> info(nv);
  int ncols = 0;
  for (int k = 0; k < nv; ++k) {
    if (vars[k].lower > -kInf) {
      info[k] = {Map::Shift, ncols++, -1, vars[k].lower};
    } else if (vars[k].upper < kInf) {
      info[k] = {Map::Reflect, ncols++, -1, vars[k].upper};
    } else {
      info[k] = {Map::Split, ncols, ncols + 1, 0.0};
      ncols += 2;
    }
  }

  struct RawRow { std::vector<double> a; LpRelation rel; double rhs; };
  std::vector<RawRow> raw;
  auto transformed = [&](const std::vector<std::pair<int, double>>& coeffs, double rhs) {
    RawRow row{std::vector<double>(ncols, 0.0), LpRelation::LessEqual, rhs};
    for (const auto& [k, c] : coeffs) {
      switch (info[k].map) {
        case Map::Shift:
          row.a[info[k].col] += c;
          row.rhs -= c * info[k].offset;
          break;
        case Map::Reflect:
          row.a[info[k].col] -= c;
          row.rhs -= c * info[k].offset;
          break;
        case Map::Split:
          row.a[info[k].col] += c;
          row.a[info[k].col_neg] -= c;
          break;
      }
    }
    return row;
  };
  for (const auto& r : model.constraints()) {
    RawRow row = transformed(r.coeffs, r.rhs);
    row.rel = r.relation;
    raw.push_back(std::move(row));
  }
  // Residual upper bounds of doubly-bounded variables.
  for (int k = 0; k < nv; ++k) {
    if (info[k].map == Map::Shift && vars[k].upper < kInf) {
      RawRow row{std::vector<double>(ncols, 0.0), LpRelation::LessEqual,
                 vars[k].upper - vars[k].lower};
      row.a[info[k].col] = 1.0;
      raw.push_back(std::move(row));
    }
  }

  // Normalize to rhs >= 0, then append slack/artificial columns.
  const int m = static_cast<int>(raw.size());
  int nslack = 0, nart = 0;
  for (auto& row : raw) {
    if (row.rhs < 0.0) {
      for (double& c : row.a) c = -c;
      row.rhs = -row.rhs;
      if (row.rel == LpRelation::LessEqual) row.rel = LpRelation::GreaterEqual;
      else if (row.rel == LpRelation::GreaterEqual) row.rel = LpRelation::LessEqual;
    }
    if (row.rel == LpRelation::LessEqual) ++nslack;
    else if (row.rel == LpRelation::GreaterEqual) { ++nslack; ++nart; }
    else ++nart;
  }

  const int art_start = ncols + nslack;
  const int total = ncols + nslack + nart + 1;
  Tableau t;
  t.rows = m;
  t.cols = total;
  t.a.assign(m, std::vector<double>(total, 0.0));
  t.basis.assign(m, -1);

  int slack_at = ncols, art_at = art_start;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < ncols; ++c) t.a[r][c] = raw[r].a[c];
    t.a[r][total - 1] = raw[r].rhs;
    if (raw[r].rel == LpRelation::LessEqual) {
      t.a[r][slack_at] = 1.0;
      t.basis[r] = slack_at++;
    } else if (raw[r].rel == LpRelation::GreaterEqual) {
      t.a[r][slack_at++] = -1.0;
      t.a[r][art_at] = 1.0;
      t.basis[r] = art_at++;
    } else {
      t.a[r][art_at] = 1.0;
      t.basis[r] = art_at++;
    }
  }
  t.initial = t.a;
  for (int r = 0; r < m; ++r) {
    for (int c = 0; c < total; ++c) t.note_scale(t.a[r][c]);
  }

  LpResult result;

  // Phase 1: minimize the sum of artificials.
  if (nart > 0) {
    std::vector<double> phase1(total, 0.0);
    for (int c = art_start; c < total - 1; ++c) phase1[c] = 1.0;
    t.set_phase_cost(std::move(phase1));
    if (!t.run(total - 1)) throw std::logic_error("phase 1 cannot be unbounded");
    if (-t.cost[total - 1] > kPhase1Tol) {
      result.status = LpStatus::Infeasible;
      result.iterations = t.iterations;
      return result;
    }
    // Pivot basic artificials out on the largest available element; rows
    // that offer none are redundant and keep their artificial at zero.
    for (int r = 0; r < m; ++r) {
      if (t.basis[r] < art_start) continue;
      int best_col = -1;
      for (int c = 0; c < art_start; ++c) {
        if (best_col < 0 || std::abs(t.a[r][c]) > std::abs(t.a[r][best_col])) best_col = c;
      }
      if (best_col >= 0 && std::abs(t.a[r][best_col]) > t.noise_floor()) {
        t.pivot(r, best_col);
      }
    }
  }

  // Phase 2 on the real objective (internally minimized).
  const double flip = model.sense() == LpSense::Maximize ? -1.0 : 1.0;
  std::vector<double> phase2(total, 0.0);
  for (const auto& [k, c] : model.objective()) {
    switch (info[k].map) {
      case Map::Shift: phase2[info[k].col] += flip * c; break;
      case Map::Reflect: phase2[info[k].col] -= flip * c; break;
      case Map::Split:
        phase2[info[k].col] += flip * c;
        phase2[info[k].col_neg] -= flip * c;
        break;
    }
  }
  t.set_phase_cost(std::move(phase2));
  if (!t.run(art_start)) {  // artificials never re-enter
    result.status = LpStatus::Unbounded;
    result.iterations = t.iterations;
    return result;
  }

  t.rebuild();  // final solution from a freshly factored basis
  std::vector<double> y(ncols + nslack + nart, 0.0);
  for (int r = 0; r < m; ++r) y[t.basis[r]] = t.a[r][total - 1];
  result.values.assign(nv, 0.0);
  for (int k = 0; k < nv; ++k) {
    double x = 0.0;
    switch (info[k].map) {
      case Map::Shift: x = info[k].offset + y[info[k].col]; break;
      case Map::Reflect: x = info[k].offset - y[info[k].col]; break;
      case Map::Split: x = y[info[k].col] - y[info[k].col_neg]; break;
    }
    result.values[k] = std::clamp(x, vars[k].lower, vars[k].upper);
  }
  result.status = LpStatus::Optimal;
  result.objective = model.objective_at(result.values);
  result.iterations = t.iterations;
  return result;
}

FeasibilityReport check_feasible(const LpModel& model, std::span<const double> point) {
  if (static_cast<int>(point.size()) != model.num_variables()) {
    throw std::invalid_argument("point dimension does not match model");
  }
  FeasibilityReport report;
  auto consider = [&](double violation, const std::string& name) {
    if (violation > report.worst_violation) {
      report.worst_violation = violation;
      report.worst_row = name;
    }
  };
  for (const auto& row : model.constraints()) {
    double lhs = 0.0;
    for (const auto& [k, c] : row.coeffs) lhs += c * point[k];
    double violation = 0.0;
    if (row.relation == LpRelation::LessEqual) violation = lhs - row.rhs;
    else if (row.relation == LpRelation::GreaterEqual) violation = row.rhs - lhs;
    else violation = std::abs(lhs - row.rhs);
    consider(std::max(0.0, violation), row.name);
  }
  const auto& vars = model.variables();
  for (int k = 0; k < model.num_variables(); ++k) {
    consider(std::max(0.0, vars[k].lower - point[k]), "bound:" + vars[k].name);
    consider(std::max(0.0, point[k] - vars[k].upper), "bound:" + vars[k].name);
  }
  report.ok = report.worst_violation <= kFeasTol;
  return report;
}

namespace {

std::string mps_field(const std::string& s) {
  std::string out = s.substr(0, 8);
  out.resize(8, ' ');
  return out;
}

std::string mps_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%-12.6g", v);
  return std::string(buf);
}

}  // namespace

std::string LpModel::to_mps() const {
  std::ostringstream os;
  os << "NAME          NSWCP\n";
  for (int k = 0; k < num_variables(); ++k) {
    os << "* C" << k + 1 << " = " << vars_[k].name << "\n";
  }
  for (int r = 0; r < num_constraints(); ++r) {
    os << "* R" << r + 1 << " = " << rows_[r].name << "\n";
  }
  if (sense_ == LpSense::Maximize) os << "OBJSENSE\n    MAX\n";
  os << "ROWS\n N  COST\n";
  auto row_label = [](int r) { return "R" + std::to_string(r + 1); };
  auto col_label = [](int c) { return "C" + std::to_string(c + 1); };
  for (int r = 0; r < num_constraints(); ++r) {
    char kind = rows_[r].relation == LpRelation::LessEqual ? 'L'
                : rows_[r].relation == LpRelation::GreaterEqual ? 'G' : 'E';
    os << " " << kind << "  " << row_label(r) << "\n";
  }
  // Column-major entries: objective first, then each row.
  std::vector<std::vector<std::pair<std::string, double>>> cols(num_variables());
  for (const auto& [k, c] : objective_) cols[k].push_back({"COST", c});
  for (int r = 0; r < num_constraints(); ++r) {
    for (const auto& [k, c] : rows_[r].coeffs) cols[k].push_back({row_label(r), c});
  }
  os << "COLUMNS\n";
  for (int k = 0; k < num_variables(); ++k) {
    for (size_t e = 0; e < cols[k].size(); e += 2) {
      os << "    " << mps_field(col_label(k)) << "  " << mps_field(cols[k][e].first) << "  "
         << mps_num(cols[k][e].second);
      if (e + 1 < cols[k].size()) {
        os << "   " << mps_field(cols[k][e + 1].first) << "  " << mps_num(cols[k][e + 1].second);
      }
      os << "\n";
    }
  }
  os << "RHS\n";
  for (int r = 0; r < num_constraints(); ++r) {
    if (rows_[r].rhs != 0.0) {
      os << "    RHS       " << mps_field(row_label(r)) << "  " << mps_num(rows_[r].rhs) << "\n";
    }
  }
  os << "BOUNDS\n";
  for (int k = 0; k < num_variables(); ++k) {
    const double lo = vars_[k].lower, hi = vars_[k].upper;
    if (lo == -kInf && hi == kInf) {
      os << " FR BND       " << mps_field(col_label(k)) << "\n";
      continue;
    }
    if (lo == -kInf) os << " MI BND       " << mps_field(col_label(k)) << "\n";
    else if (lo != 0.0) {
      os << " LO BND       " << mps_field(col_label(k)) << "  " << mps_num(lo) << "\n";
    }
    if (hi != kInf) {
      os << " UP BND       " << mps_field(col_label(k)) << "  " << mps_num(hi) << "\n";
    }
  }
  os << "ENDATA\n";
  return os.str();
}

}  // namespace nswcp
