#include "nswcp/waterfill.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nswcp {

ValueMassProfile::ValueMassProfile(std::vector<double> values_in, std::vector<double> masses_in,
                                   ProfileRole role_in)
    : role(role_in) {
  if (values_in.size() != masses_in.size()) {
    throw std::invalid_argument("profile values and masses differ in length");
  }
  values.reserve(values_in.size());
  masses.reserve(masses_in.size());
  for (size_t k = 0; k < values_in.size(); ++k) {
    const double m = masses_in[k];
    if (m < -kMassEps || m > 1.0 + kFeasTol) {
      throw std::invalid_argument("profile mass outside [0,1]");
    }
    if (m < kMassEps) continue;
    if (!(values_in[k] > 0.0)) {
      throw std::invalid_argument("profile value is not strictly positive");
    }
    values.push_back(values_in[k]);
    masses.push_back(std::min(m, 1.0));
  }
}

double ValueMassProfile::total_mass() const {
  double s = 0.0;
  for (double m : masses) s += m;
  return s;
}

Grid Grid::nsw(const std::vector<double>& values, double eps) {
  if (values.empty()) throw std::invalid_argument("grid needs at least one value");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  double lo = values[0], r = 0.0;
  for (double v : values) {
    if (!(v > 0.0)) throw std::invalid_argument("grid value is not strictly positive");
    lo = std::min(lo, v);
    r += v;
  }
  Grid grid;
  grid.epsilon = eps;
  for (double h = r; h >= lo * (1.0 - 1e-12); h /= (1.0 + eps)) {
    grid.levels.push_back(h);
  }
  std::reverse(grid.levels.begin(), grid.levels.end());
  return grid;
}

Grid Grid::sched(const std::vector<double>& sizes, double eps) {
  if (sizes.empty()) throw std::invalid_argument("grid needs at least one size");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  double lo = sizes[0], r = 0.0;
  for (double v : sizes) {
    if (!(v > 0.0)) throw std::invalid_argument("grid size is not strictly positive");
    lo = std::min(lo, v);
    r += v;
  }
  Grid grid;
  grid.epsilon = eps;
  grid.levels.push_back(0.0);
  double h = lo;
  for (; h <= r * (1.0 + 1e-12); h *= (1.0 + eps)) {
    grid.levels.push_back(h);
  }
  // Keep the exact right endpoint even when it is off the ladder.
  if (grid.levels.back() < r * (1.0 - 1e-12)) grid.levels.push_back(r);
  return grid;
}

ThetaSpec ThetaSpec::power(double k) {
  if (k < 1.0) throw std::invalid_argument("power exponent must be at least 1");
  ThetaSpec spec;
  spec.value = [k](double t) { return std::pow(t, k); };
  spec.derivative = [k](double t) { return k * std::pow(t, k - 1.0); };
  return spec;
}

double water_level(const ValueMassProfile& profile, OneMassConvention convention) {
  const double total = profile.total_mass();
  if (profile.role == ProfileRole::Nsw && total < 1.0 - kResidualTol) {
    throw std::invalid_argument("NSW profile has total mass below 1");
  }
  if (total <= 1.0) {
    if (convention == OneMassConvention::Zero) return 0.0;
    if (profile.values.empty()) {
      throw std::invalid_argument("empty profile has no support value");
    }
    return *std::min_element(profile.values.begin(), profile.values.end());
  }

  // Sort entries by value; on each interval between consecutive distinct
  // values the defining equation is linear in h:
  //   A + B*h = h  with A = sum_{v_j <= v} v_j x_j, B = sum_{v_j > v} x_j.
  const size_t n = profile.values.size();
  std::vector<size_t> order(n);
  for (size_t k = 0; k < n; ++k) order[k] = k;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
    return profile.values[a] < profile.values[b];
  });

  double below_value = 0.0;  // sum of v*x over entries with value <= current breakpoint
  double above_mass = total; // mass of entries with value > current breakpoint
  size_t k = 0;
  while (k < n) {
    const double v = profile.values[order[k]];
    while (k < n && profile.values[order[k]] == v) {
      below_value += profile.values[order[k]] * profile.masses[order[k]];
      above_mass -= profile.masses[order[k]];
      ++k;
    }
    // Candidate root on [v, next breakpoint): h = A / (1 - B), valid when
    // the tail mass drops below 1.
    if (above_mass < 1.0) {
      const double h = below_value / (1.0 - above_mass);
      const double next = (k < n) ? profile.values[order[k]]
                                  : std::numeric_limits<double>::infinity();
      if (h >= v * (1.0 - 1e-12) && h <= next * (1.0 + 1e-12)) return h;
    }
  }
  throw std::logic_error("water level scan found no root");  // unreachable on valid input
}

double f_nsw(const ValueMassProfile& profile) {
  const double h = water_level(profile, OneMassConvention::MinSupportValue);
  double out = std::log(h);
  for (size_t k = 0; k < profile.values.size(); ++k) {
    if (profile.values[k] > h) out += profile.masses[k] * std::log(profile.values[k] / h);
  }
  return out;
}

double g_nsw(const ValueMassProfile& profile, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("g_nsw requires h > 0");
  double out = std::log(h) - 1.0;
  double capped = 0.0;
  for (size_t k = 0; k < profile.values.size(); ++k) {
    const double v = profile.values[k], x = profile.masses[k];
    if (v > h) out += x * std::log(v / h);
    capped += std::min(v, h) * x;
  }
  return out + capped / h;
}

double f_bar_nsw(const ValueMassProfile& profile, const Grid& grid) {
  if (grid.levels.empty()) throw std::invalid_argument("empty grid");
  double best = std::numeric_limits<double>::infinity();
  for (double h : grid.levels) best = std::min(best, g_nsw(profile, h));
  return best;
}

double f_theta(const ValueMassProfile& profile, const ThetaSpec& theta) {
  const double h = water_level(profile, OneMassConvention::Zero);
  const double th = theta.value(h);
  double out = th;
  for (size_t k = 0; k < profile.values.size(); ++k) {
    if (profile.values[k] > h) {
      out += profile.masses[k] * (theta.value(profile.values[k]) - th);
    }
  }
  return out;
}

double g_theta(const ValueMassProfile& profile, double h, const ThetaSpec& theta) {
  if (h < 0.0) throw std::invalid_argument("g_theta requires h >= 0");
  const double th = theta.value(h);
  double out = th;
  double capped = -h;
  for (size_t k = 0; k < profile.values.size(); ++k) {
    const double p = profile.values[k], x = profile.masses[k];
    if (p > h) out += x * (theta.value(p) - th);
    capped += std::min(p, h) * x;
  }
  return out + theta.derivative(h) * capped;
}

double f_bar_theta(const ValueMassProfile& profile, const Grid& grid, const ThetaSpec& theta) {
  if (grid.levels.empty()) throw std::invalid_argument("empty grid");
  double best = -std::numeric_limits<double>::infinity();
  for (double h : grid.levels) best = std::max(best, g_theta(profile, h, theta));
  return best;
}

}  // namespace nswcp
