#include "nswcp/alpha.hpp"

#include <cmath>
#include <stdexcept>

#include "doctest.h"

using namespace nswcp;

TEST_CASE("alpha for power loads") {
  const AlphaResult one = compute_alpha_power(1.0);
  CHECK(std::abs(one.alpha - 1.0) <= 1e-6);  // numerator equals denominator identically

  const AlphaResult two = compute_alpha_power(2.0);
  CHECK(std::abs(two.alpha - 4.0 / 3.0) <= 1e-4);
  CHECK(two.t > 0.0);
  CHECK(two.t < 1.0);
  CHECK(two.y > 0.0);
  CHECK(two.y <= 1.0);

  CHECK_THROWS_AS(compute_alpha_power(0.9), std::invalid_argument);
}

TEST_CASE("grid-doubling stability") {
  for (double k : {2.0, 3.0}) {
    const double coarse = compute_alpha_power(k, 512).alpha;
    const double fine = compute_alpha_power(k, 1024).alpha;
    CHECK(std::abs(coarse - fine) <= 1e-4);
  }
}

TEST_CASE("alpha is nondecreasing in k") {
  double prev = 0.0;
  for (double k : {1.0, 1.5, 2.0, 3.0, 4.0}) {
    const double alpha = compute_alpha_power(k).alpha;
    CHECK(alpha >= prev - 1e-9);
    prev = alpha;
  }
}

TEST_CASE("completion-time constant and certificate") {
  CHECK(completion_alpha() == doctest::Approx(1.2071068).epsilon(1e-7));
  CHECK(completion_alpha() == doctest::Approx(0.5 * (1.0 + std::sqrt(2.0))));

  const CompletionCertificate cert = completion_certificate();
  CHECK(cert.max_at_b_zero <= 1e-9);
  CHECK(cert.max_at_b_one_minus_a <= 1e-9);
  // peak of the b=0 branch sits strictly below zero at a = alpha/2
  CHECK(cert.b_zero_peak ==
        doctest::Approx((19.0 - 14.0 * std::sqrt(2.0)) / 16.0).epsilon(1e-12));
  CHECK(cert.b_zero_peak < 0.0);
}
