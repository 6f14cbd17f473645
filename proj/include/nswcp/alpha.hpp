#pragma once

// Numeric evaluation of the scheduling approximation constants: the
// two-variable supremum alpha(k) for power loads, and the completion-time
// constant (1+sqrt(2))/2 with its certificate expressions.

namespace nswcp {

struct AlphaResult {
  double alpha = 1.0;
  double t = 0.0;  // argmax, t in (0,1)
  double y = 0.0;  // argmax, y in (0,1]
  int grid_resolution = 0;
  int refine_steps = 0;
};

// sup over t in (0,1), y in (0,1] of
//   (t (1 + y(1-t))^k + (1-t) (y(1-t))^k) / (t + (1-t) y^k),
// by a coarse grid plus Nelder-Mead refinement from the best cell.
// Requires k >= 1; alpha(1) = 1, alpha(2) = 4/3.
AlphaResult compute_alpha_power(double k, int grid_resolution = 512);

// Exactly (1 + sqrt(2)) / 2.
double completion_alpha();

struct CompletionCertificate {
  // Max over a dense a-grid in [0,1] of the completion bound expression at
  // its two extreme b values; both must be <= 0 for the constant to hold.
  double max_at_b_zero = 0.0;
  double max_at_b_one_minus_a = 0.0;
  // Value at the b=0 maximizer a = alpha/2, equal to (19 - 14 sqrt(2))/16.
  double b_zero_peak = 0.0;
};

CompletionCertificate completion_certificate(int grid_points = 10000);

}  // namespace nswcp
