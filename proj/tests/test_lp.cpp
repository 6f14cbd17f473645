#include "nswcp/lp.hpp"

#include <cmath>
#include <stdexcept>
#include <cstring>
#include <functional>
#include <limits>
#include <random>
#include <vector>

#include "doctest.h"

using namespace nswcp;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Vertex-enumeration oracle for small LPs with box-bounded variables: every
// vertex is the intersection of n tight faces drawn from constraint rows
// and bound faces.
struct OracleOutcome {
  bool feasible = false;
  double objective = 0.0;
};

bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                  std::vector<double>& out) {
  const int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int pivot = col;
    for (int r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-9) return false;
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = a[r][col] / a[col][col];
      for (int c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  out.resize(n);
  for (int r = 0; r < n; ++r) out[r] = b[r] / a[r][r];
  return true;
}

OracleOutcome vertex_oracle(const LpModel& model) {
  const int n = model.num_variables();
  struct Face {
    std::vector<double> a;
    double b;
  };
  std::vector<Face> faces;
  for (const auto& row : model.constraints()) {
    Face f{std::vector<double>(n, 0.0), row.rhs};
    for (const auto& [k, c] : row.coeffs) f.a[k] += c;
    faces.push_back(f);
  }
  for (int k = 0; k < n; ++k) {
    Face lo{std::vector<double>(n, 0.0), model.variables()[k].lower};
    lo.a[k] = 1.0;
    faces.push_back(lo);
    Face hi{std::vector<double>(n, 0.0), model.variables()[k].upper};
    hi.a[k] = 1.0;
    faces.push_back(hi);
  }

  OracleOutcome best;
  const bool maximize = model.sense() == LpSense::Maximize;
  std::vector<int> pick(n);
  auto consider = [&](const std::vector<double>& point) {
    const auto report = check_feasible(model, point);
    if (report.worst_violation > 1e-7) return;
    const double obj = model.objective_at(point);
    if (!best.feasible || (maximize ? obj > best.objective : obj < best.objective)) {
      best.feasible = true;
      best.objective = obj;
    }
  };
  // all n-subsets of faces
  std::vector<int> idx(n);
  const int total = static_cast<int>(faces.size());
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == n) {
      std::vector<std::vector<double>> a(n);
      std::vector<double> b(n);
      for (int r = 0; r < n; ++r) {
        a[r] = faces[idx[r]].a;
        b[r] = faces[idx[r]].b;
      }
      std::vector<double> point;
      if (solve_square(a, b, point)) consider(point);
      return;
    }
    for (int f = from; f < total; ++f) {
      idx[pos] = f;
      rec(pos + 1, f + 1);
    }
  };
  rec(0, 0);
  return best;
}

LpModel random_model(std::mt19937_64& rng) {
  LpModel model;
  const int n = 1 + static_cast<int>(rng() % 5);
  const int rows = 1 + static_cast<int>(rng() % 6);
  for (int k = 0; k < n; ++k) {
    model.add_variable("v" + std::to_string(k), 0.0, 1.0 + double(rng() % 3));
  }
  for (int r = 0; r < rows; ++r) {
    std::vector<std::pair<int, double>> coeffs;
    for (int k = 0; k < n; ++k) {
      const int c = static_cast<int>(rng() % 7) - 3;
      if (c != 0) coeffs.push_back({k, double(c)});
    }
    if (coeffs.empty()) coeffs.push_back({0, 1.0});
    const LpRelation rel = static_cast<LpRelation>(rng() % 3);
    model.add_constraint("r" + std::to_string(r), coeffs, rel,
                         double(static_cast<int>(rng() % 13) - 4));
  }
  std::vector<std::pair<int, double>> obj;
  for (int k = 0; k < n; ++k) obj.push_back({k, double(static_cast<int>(rng() % 11) - 5)});
  model.set_objective(rng() % 2 == 0 ? LpSense::Maximize : LpSense::Minimize, obj);
  return model;
}

}  // namespace

TEST_CASE("simplex on small hand models") {
  {
    LpModel m;
    const int x1 = m.add_variable("x1", 0.0, kInf);
    const int x2 = m.add_variable("x2", 0.0, kInf);
    m.add_constraint("cap", {{x1, 1.0}, {x2, 1.0}}, LpRelation::LessEqual, 1.0);
    m.set_objective(LpSense::Maximize, {{x1, 1.0}, {x2, 1.0}});
    const LpResult res = solve_lp(m);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(1.0));
  }
  {
    LpModel m;
    const int x1 = m.add_variable("x1", 0.0, kInf);
    m.add_constraint("neg", {{x1, 1.0}}, LpRelation::LessEqual, -1.0);
    m.set_objective(LpSense::Maximize, {{x1, 1.0}});
    CHECK(solve_lp(m).status == LpStatus::Infeasible);
  }
  {
    LpModel m;
    const int a = m.add_variable("a", 0.0, kInf);
    const int b = m.add_variable("b", 0.0, kInf);
    m.add_constraint("r1", {{a, 1.0}, {b, 1.0}}, LpRelation::LessEqual, 4.0);
    m.add_constraint("r2", {{a, 1.0}, {b, 3.0}}, LpRelation::LessEqual, 6.0);
    m.set_objective(LpSense::Maximize, {{a, 3.0}, {b, 2.0}});
    const LpResult res = solve_lp(m);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(12.0));
    CHECK(res.values[0] == doctest::Approx(4.0));
    CHECK(res.values[1] == doctest::Approx(0.0));
  }
  {
    // free variable pushed to its constraint floor
    LpModel m;
    const int x = m.add_variable("x", -kInf, kInf);
    m.add_constraint("floor", {{x, 1.0}}, LpRelation::GreaterEqual, -5.0);
    m.set_objective(LpSense::Minimize, {{x, 1.0}});
    const LpResult res = solve_lp(m);
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK(res.objective == doctest::Approx(-5.0));
  }
  {
    LpModel m;
    m.add_variable("x", 0.0, kInf);
    m.set_objective(LpSense::Maximize, {{0, 1.0}});
    CHECK(solve_lp(m).status == LpStatus::Unbounded);
  }
}

TEST_CASE("model validation") {
  LpModel m;
  m.add_variable("x", 0.0, 1.0);
  CHECK_THROWS_AS(m.add_variable("x", 0.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(m.add_variable("y", 2.0, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(m.add_constraint("r", {{5, 1.0}}, LpRelation::Equal, 0.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(m.add_constraint("r", {{0, 1.0 / 0.0}}, LpRelation::Equal, 0.0),
                  std::invalid_argument);
}

TEST_CASE("check_feasible reports the worst violation") {
  LpModel m;
  const int a = m.add_variable("a", 0.0, 10.0);
  const int b = m.add_variable("b", 0.0, 10.0);
  m.add_constraint("r1", {{a, 1.0}, {b, 1.0}}, LpRelation::LessEqual, 4.0);
  const double ok_point[] = {4.0, 0.0};
  CHECK(check_feasible(m, ok_point).ok);
  const double bad_point[] = {5.0, 0.0};
  const auto report = check_feasible(m, bad_point);
  CHECK(!report.ok);
  CHECK(report.worst_violation == doctest::Approx(1.0));
  CHECK(report.worst_row == "r1");
  const double one_short[] = {1.0};
  CHECK_THROWS_AS(check_feasible(m, one_short), std::invalid_argument);
}

TEST_CASE("simplex agrees with vertex enumeration on 500 random LPs") {
  std::mt19937_64 rng(99);
  int optimal_count = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const LpModel model = random_model(rng);
    const LpResult res = solve_lp(model);
    const OracleOutcome oracle = vertex_oracle(model);
    if (oracle.feasible) {
      REQUIRE_MESSAGE(res.status == LpStatus::Optimal, "trial ", trial);
      ++optimal_count;
      const double scale = std::max(1.0, std::abs(oracle.objective));
      CHECK_MESSAGE(std::abs(res.objective - oracle.objective) <= 1e-6 * scale, "trial ",
                    trial, ": lp ", res.objective, " oracle ", oracle.objective);
      CHECK(check_feasible(model, res.values).worst_violation <= 1e-7);
    } else {
      CHECK_MESSAGE(res.status == LpStatus::Infeasible, "trial ", trial);
    }
  }
  CHECK(optimal_count > 100);  // the generator should not be degenerate
}

TEST_CASE("determinism across repeated solves") {
  std::mt19937_64 rng(1234);
  for (int trial = 0; trial < 50; ++trial) {
    const LpModel model = random_model(rng);
    const LpResult a = solve_lp(model);
    const LpResult b = solve_lp(model);
    REQUIRE(a.status == b.status);
    if (a.status != LpStatus::Optimal) continue;
    CHECK(a.iterations == b.iterations);
    CHECK(std::memcmp(&a.objective, &b.objective, sizeof(double)) == 0);
    REQUIRE(a.values.size() == b.values.size());
    CHECK(std::memcmp(a.values.data(), b.values.data(),
                      a.values.size() * sizeof(double)) == 0);
  }
}

TEST_CASE("mps dump layout") {
  LpModel m;
  const int a = m.add_variable("alpha", 0.0, 1.0);
  const int b = m.add_variable("beta", -kInf, kInf);
  m.add_constraint("row-le", {{a, 2.0}}, LpRelation::LessEqual, 4.0);
  m.add_constraint("row-eq", {{a, 1.0}, {b, -1.0}}, LpRelation::Equal, 0.0);
  m.set_objective(LpSense::Maximize, {{a, 3.0}, {b, 2.0}});
  const std::string mps = m.to_mps();
  for (const char* section : {"NAME", "OBJSENSE", "ROWS", "COLUMNS", "RHS", "BOUNDS", "ENDATA"}) {
    CHECK_MESSAGE(mps.find(section) != std::string::npos, section);
  }
  CHECK(mps.find(" L  R1") != std::string::npos);
  CHECK(mps.find(" E  R2") != std::string::npos);
  CHECK(mps.find(" FR BND") != std::string::npos);
  CHECK(mps.find(" UP BND") != std::string::npos);
}
