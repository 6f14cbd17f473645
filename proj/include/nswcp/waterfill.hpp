#pragma once

// Water-filling machinery: the level h at which poured divisible mass
// equalizes with the top-unit histogram, the concave/convex per-player
// objectives f built from it, their linearizations g, and the discretized
// surrogates f_bar evaluated over geometric level grids.

#include <functional>
#include <vector>

#include "nswcp/model.hpp"

namespace nswcp {

enum class ProfileRole { Nsw, Sched };

// One player's restriction of a fractional assignment: parallel lists of
// item values (or job sizes) and masses in [0,1]. Masses below kMassEps are
// dropped at construction.
struct ValueMassProfile {
  std::vector<double> values;
  std::vector<double> masses;
  ProfileRole role = ProfileRole::Nsw;

  ValueMassProfile() = default;
  ValueMassProfile(std::vector<double> values_in, std::vector<double> masses_in,
                   ProfileRole role_in);

  double total_mass() const;
};

enum class OneMassConvention { MinSupportValue, Zero };

// Sorted candidate water levels H for one player.
struct Grid {
  std::vector<double> levels;  // strictly ascending
  double epsilon = 0.0;

  // NSW ladder {r(1+eps)^-t >= l} with l = min value, r = sum of values.
  static Grid nsw(const std::vector<double>& values, double eps);
  // Scheduling ladder {0} u {l(1+eps)^t <= r} u {r}.
  static Grid sched(const std::vector<double>& sizes, double eps);
};

// Increasing convex theta with theta(0) = 0, given as paired evaluators.
struct ThetaSpec {
  std::function<double(double)> value;
  std::function<double(double)> derivative;

  // theta(t) = t^k with closed-form derivative, k >= 1.
  static ThetaSpec power(double k);
};

// The level h >= 0 with sum_j min{v_j, h} x_j = h, found by an exact
// breakpoint scan over the sorted distinct values. Total mass 1 is resolved
// by the given convention (NSW: min support value, scheduling: 0); total
// mass below 1 is an error for NSW profiles and maps to 0 otherwise.
double water_level(const ValueMassProfile& profile, OneMassConvention convention);

// f(x) = sum_{v_j > h} x_j ln(v_j / h) + ln h at h = water_level(x).
double f_nsw(const ValueMassProfile& profile);

// g(x,h) = sum_{v_j > h} x_j ln(v_j/h) + ln h + (1/h) sum_j min{v_j,h} x_j - 1,
// linear in the masses for fixed h; min over h > 0 equals f_nsw.
double g_nsw(const ValueMassProfile& profile, double h);

// min over the grid of g_nsw; satisfies f <= f_bar < f + ln(1+eps).
double f_bar_nsw(const ValueMassProfile& profile, const Grid& grid);

// f(x) = sum_{p_j > h} x_j (theta(p_j) - theta(h)) + theta(h) at the
// scheduling water level (0 when total mass <= 1).
double f_theta(const ValueMassProfile& profile, const ThetaSpec& theta);

// g(x,h) = sum_{p_j > h} x_j (theta(p_j) - theta(h)) + theta(h)
//          + theta'(h) (sum_j min{p_j,h} x_j - h); max over h equals f_theta.
double g_theta(const ValueMassProfile& profile, double h, const ThetaSpec& theta);

// max over the grid of g_theta; satisfies f(x)/(1+eps)^k <= f_bar <= f for
// theta(t) = t^k.
double f_bar_theta(const ValueMassProfile& profile, const Grid& grid, const ThetaSpec& theta);

}  // namespace nswcp
