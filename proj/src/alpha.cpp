#include "nswcp/alpha.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace nswcp {

namespace {

double ratio(double k, double t, double y) {
  const double d = y * (1.0 - t);
  const double num = t * std::pow(1.0 + d, k) + (1.0 - t) * std::pow(d, k);
  const double den = t + (1.0 - t) * std::pow(y, k);
  return num / den;
}

constexpr double kTMin = 1e-9, kTMax = 1.0 - 1e-9;
constexpr double kYMin = 1e-12, kYMax = 1.0;

struct Point {
  double t = 0.0, y = 0.0, f = 0.0;
};

Point eval(double k, double t, double y) {
  t = std::clamp(t, kTMin, kTMax);
  y = std::clamp(y, kYMin, kYMax);
  return {t, y, ratio(k, t, y)};
}

// Nelder-Mead maximization on the clamped box, started around the best grid
// cell. Deterministic; the objective is smooth inside the domain.
Point nelder_mead(double k, Point start, double step, int* steps) {
  std::array<Point, 3> s = {start, eval(k, start.t + step, start.y),
                            eval(k, start.t, start.y + step)};
  auto by_f = [](const Point& a, const Point& b) { return a.f > b.f; };
  for (int iter = 0; iter < 400; ++iter) {
    std::sort(s.begin(), s.end(), by_f);
    if (steps != nullptr) *steps = iter;
    const double spread = std::max(std::abs(s[0].t - s[2].t) + std::abs(s[0].y - s[2].y),
                                   std::abs(s[0].t - s[1].t) + std::abs(s[0].y - s[1].y));
    if (spread < 1e-12) break;
    const double ct = 0.5 * (s[0].t + s[1].t), cy = 0.5 * (s[0].y + s[1].y);
    const Point refl = eval(k, ct + (ct - s[2].t), cy + (cy - s[2].y));
    if (refl.f > s[0].f) {
      const Point expd = eval(k, ct + 2.0 * (ct - s[2].t), cy + 2.0 * (cy - s[2].y));
      s[2] = expd.f > refl.f ? expd : refl;
    } else if (refl.f > s[1].f) {
      s[2] = refl;
    } else {
      const Point contr = eval(k, ct + 0.5 * (s[2].t - ct), cy + 0.5 * (s[2].y - cy));
      if (contr.f > s[2].f) {
        s[2] = contr;
      } else {
        s[1] = eval(k, s[0].t + 0.5 * (s[1].t - s[0].t), s[0].y + 0.5 * (s[1].y - s[0].y));
        s[2] = eval(k, s[0].t + 0.5 * (s[2].t - s[0].t), s[0].y + 0.5 * (s[2].y - s[0].y));
      }
    }
  }
  std::sort(s.begin(), s.end(), by_f);
  return s[0];
}

}  // namespace

AlphaResult compute_alpha_power(double k, int grid_resolution) {
  if (k < 1.0) throw std::invalid_argument("alpha is defined for k >= 1");
  if (grid_resolution < 2) throw std::invalid_argument("grid resolution too small");

  Point best{0.5, 0.5, 0.0};
  best.f = ratio(k, best.t, best.y);
  for (int i = 0; i < grid_resolution; ++i) {
    const double t = (i + 0.5) / grid_resolution;
    for (int j = 0; j < grid_resolution; ++j) {
      const double y = static_cast<double>(j + 1) / grid_resolution;
      const double f = ratio(k, t, y);
      if (f > best.f) best = {t, y, f};
    }
  }
  AlphaResult result;
  result.grid_resolution = grid_resolution;
  const Point refined = nelder_mead(k, best, 0.5 / grid_resolution, &result.refine_steps);
  result.alpha = refined.f;
  result.t = refined.t;
  result.y = refined.y;
  return result;
}

double completion_alpha() { return 0.5 * (1.0 + std::sqrt(2.0)); }

CompletionCertificate completion_certificate(int grid_points) {
  const double a_star = completion_alpha();
  // Right side of the completion bound, linear in b, at its two extreme
  // values b = 0 and b = 1 - a.
  auto at_b_zero = [&](double a) { return -a * a + a_star * a - 2.0 * (a_star - 1.0); };
  auto at_b_one_minus_a = [&](double a) {
    return a / (2.0 * (a_star - 1.0)) *
           (-a * a + (2.0 * a_star - 1.0) * a - 2.0 * a_star * (a_star - 1.0));
  };
  CompletionCertificate cert;
  cert.max_at_b_zero = at_b_zero(0.0);
  cert.max_at_b_one_minus_a = at_b_one_minus_a(0.0);
  for (int i = 0; i <= grid_points; ++i) {
    const double a = static_cast<double>(i) / grid_points;
    cert.max_at_b_zero = std::max(cert.max_at_b_zero, at_b_zero(a));
    cert.max_at_b_one_minus_a = std::max(cert.max_at_b_one_minus_a, at_b_one_minus_a(a));
  }
  cert.b_zero_peak = at_b_zero(a_star / 2.0);
  return cert;
}

}  // namespace nswcp
