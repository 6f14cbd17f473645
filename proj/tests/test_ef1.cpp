#include "nswcp/ef1.hpp"

#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "nswcp/oracle.hpp"

using namespace nswcp;

namespace {

// Oracle for the certificate water level: bisection on the residual
// (1/n) sum min{phi_i, h} + psi - h, strictly decreasing past the last
// breakpoint.
double gap_level_bisect(const std::vector<double>& phi, double psi, int n) {
  auto residual = [&](double h) {
    double s = psi - h;
    for (double p : phi) s += std::min(p, h) / n;
    return s;
  };
  double lo = 0.0, hi = psi;
  for (double p : phi) hi += p;
  for (int iter = 0; iter < 200; ++iter) {
    const double mid = 0.5 * (lo + hi);
    (residual(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

const double kEInvE = std::exp(-1.0 / std::exp(1.0));

}  // namespace

TEST_CASE("is_ef1") {
  IdenticalInstance inst;
  inst.n = 2;
  inst.values = {5, 3, 3};
  CHECK(is_ef1(inst, {{0, 1, 1}}).ef1);  // {5} vs {3,3}

  inst.values = {1, 3, 3};
  const Ef1Result bad = is_ef1(inst, {{0, 1, 1}});  // {1} vs {3,3}: 1 < 6-3
  CHECK(!bad.ef1);
  CHECK(bad.envious == 0);
  CHECK(bad.envied == 1);

  IdenticalInstance solo;
  solo.n = 1;
  solo.values = {2, 7};
  CHECK(is_ef1(solo, {{0, 0}}).ef1);

  // empty envied bundle is vacuous; empty envious bundle is not special
  inst.values = {4};
  CHECK(is_ef1(inst, {{0}}).ef1);
}

TEST_CASE("greedy_ef1") {
  {
    IdenticalInstance inst{2, {5, 3, 3}};
    const Allocation alloc = greedy_ef1(inst);
    std::vector<double> bundle(2, 0.0);
    for (int j = 0; j < 3; ++j) bundle[alloc.owner[j]] += inst.values[j];
    std::sort(bundle.begin(), bundle.end());
    CHECK(bundle[0] == doctest::Approx(5.0));
    CHECK(bundle[1] == doctest::Approx(6.0));
  }
  {
    IdenticalInstance inst{3, {1, 1, 1}};
    const Allocation alloc = greedy_ef1(inst);
    std::vector<int> count(3, 0);
    for (int owner : alloc.owner) ++count[owner];
    CHECK(count == std::vector<int>{1, 1, 1});
  }
  {
    IdenticalInstance inst{2, {4}};
    const Allocation alloc = greedy_ef1(inst);
    CHECK(is_ef1(inst, alloc).ef1);  // one bundle stays empty, still EF1
  }
}

TEST_CASE("gap_bound on pinned allocations") {
  {
    // bundle values 5 and 6
    IdenticalInstance inst{2, {5, 6}};
    const Allocation alloc{{0, 1}};
    const GapCertificate cert = gap_bound(inst, alloc);
    CHECK(cert.psi == doctest::Approx(5.0));
    CHECK(cert.phi[0] == doctest::Approx(0.0));
    CHECK(cert.phi[1] == doctest::Approx(1.0));
    CHECK(cert.h == doctest::Approx(5.5).epsilon(1e-12));
    CHECK(cert.bound == doctest::Approx(5.5).epsilon(1e-12));
    const double nsw = std::sqrt(30.0);
    CHECK(cert.bound / nsw <= std::exp(1.0 / std::exp(1.0)));
    CHECK(cert.bound / nsw == doctest::Approx(1.004158).epsilon(1e-5));
  }
  {
    // equal bundles: phi = 0, h = c, ratio 1
    IdenticalInstance inst{3, {4, 4, 4}};
    const GapCertificate cert = gap_bound(inst, {{0, 1, 2}});
    CHECK(cert.h == doctest::Approx(4.0));
    CHECK(cert.bound == doctest::Approx(4.0));
    CHECK(cert.n1 == 0);
  }
  {
    // psi = 0 degenerates to the zero certificate
    IdenticalInstance inst{2, {4}};
    const GapCertificate cert = gap_bound(inst, {{0}});
    CHECK(cert.psi == 0.0);
    CHECK(cert.bound == 0.0);
  }
}

TEST_CASE("certificate level matches the bisection oracle") {
  std::mt19937_64 rng(303);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 4);
    IdenticalInstance inst;
    inst.n = n;
    const int m = n + static_cast<int>(rng() % 5);
    for (int j = 0; j < m; ++j) inst.values.push_back(0.5 + 9.5 * uniform01(rng));
    const Allocation alloc = greedy_ef1(inst);
    const GapCertificate cert = gap_bound(inst, alloc);
    const double oracle = gap_level_bisect(cert.phi, cert.psi, n);
    CHECK(std::abs(cert.h - oracle) <= 1e-8 * std::max(1.0, cert.h));
    // residual of the defining equation
    double residual = cert.psi - cert.h;
    for (double p : cert.phi) residual += std::min(p, cert.h) / n;
    CHECK(std::abs(residual) <= 1e-9 * std::max(1.0, cert.h));
  }
}

TEST_CASE("bound dominates the optimum and the EF1 ratio holds") {
  // exhaustive over all small instances with values in {1..4}
  for (int n = 2; n <= 3; ++n) {
    for (int m = n; m <= 5; ++m) {
      std::vector<int> tuple(m, 1);
      while (true) {
        IdenticalInstance inst;
        inst.n = n;
        for (int v : tuple) inst.values.push_back(v);
        const NswInstance as_nsw = identical_to_nsw(inst);
        const double opt = brute_nsw_opt(as_nsw).value;
        for (const Allocation& alloc : enumerate_ef1(inst)) {
          const GapCertificate cert = gap_bound(inst, alloc);
          CHECK(cert.bound >= opt - 1e-9);
          CHECK(nsw_value(as_nsw, alloc) >= kEInvE * cert.bound - 1e-9);
        }
        int pos = m - 1;
        while (pos >= 0 && tuple[pos] == 4) --pos;
        if (pos < 0) break;
        ++tuple[pos];
        for (int t = pos + 1; t < m; ++t) tuple[t] = tuple[pos];
      }
    }
  }
}
