#include "nswcp/ef1.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace nswcp {

namespace {

std::vector<double> bundle_values(const IdenticalInstance& inst, const Allocation& alloc) {
  if (alloc.owner.size() != inst.values.size()) {
    throw std::invalid_argument("allocation must map every item");
  }
  std::vector<double> out(inst.n, 0.0);
  for (size_t j = 0; j < inst.values.size(); ++j) {
    const int i = alloc.owner[j];
    if (i < 0 || i >= inst.n) throw std::invalid_argument("item allocated to unknown agent");
    out[i] += inst.values[j];
  }
  return out;
}

}  // namespace

Ef1Result is_ef1(const IdenticalInstance& inst, const Allocation& alloc) {
  const std::vector<double> bundle = bundle_values(inst, alloc);
  std::vector<double> largest(inst.n, 0.0);
  for (size_t j = 0; j < inst.values.size(); ++j) {
    largest[alloc.owner[j]] = std::max(largest[alloc.owner[j]], inst.values[j]);
  }
  for (int envied = 0; envied < inst.n; ++envied) {
    if (largest[envied] == 0.0) continue;  // empty bundle: vacuous
    const double reduced = bundle[envied] - largest[envied];
    for (int i = 0; i < inst.n; ++i) {
      if (i != envied && bundle[i] < reduced - kResidualTol) {
        return {false, i, envied};
      }
    }
  }
  return {true, -1, -1};
}

Allocation greedy_ef1(const IdenticalInstance& inst) {
  if (inst.n < 1) throw std::invalid_argument("need at least one agent");
  std::vector<int> order(inst.values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (inst.values[a] != inst.values[b]) return inst.values[a] > inst.values[b];
    return a < b;
  });
  Allocation alloc;
  alloc.owner.assign(inst.values.size(), -1);
  std::vector<double> bundle(inst.n, 0.0);
  for (int j : order) {
    const int target = static_cast<int>(
        std::min_element(bundle.begin(), bundle.end()) - bundle.begin());
    alloc.owner[j] = target;
    bundle[target] += inst.values[j];
  }
  const Ef1Result check = is_ef1(inst, alloc);
  if (!check.ef1) throw std::logic_error("greedy allocation failed the EF1 check");
  return alloc;
}

GapCertificate gap_bound(const IdenticalInstance& inst, const Allocation& alloc) {
  const std::vector<double> bundle = bundle_values(inst, alloc);
  GapCertificate cert;
  cert.psi = *std::min_element(bundle.begin(), bundle.end());
  cert.phi.resize(inst.n);
  for (int i = 0; i < inst.n; ++i) cert.phi[i] = bundle[i] - cert.psi;
  if (cert.psi <= 0.0) {
    cert.psi = 0.0;
    cert.h = 0.0;
    cert.bound = 0.0;
    cert.n2 = inst.n;
    return cert;
  }

  // Breakpoint scan for the unique h with (1/n) sum min{phi_i, h} + psi = h:
  // between consecutive distinct phi values the equation is linear in h.
  std::vector<double> sorted = cert.phi;
  std::sort(sorted.begin(), sorted.end());
  const int n = inst.n;
  double below_sum = 0.0;
  int k = 0;
  cert.h = -1.0;
  while (k < n) {
    const double v = sorted[k];
    while (k < n && sorted[k] == v) below_sum += sorted[k++];
    const int above = n - k;
    if (above < n) {
      const double h = (below_sum / n + cert.psi) / (1.0 - static_cast<double>(above) / n);
      const double next = (k < n) ? sorted[k] : std::numeric_limits<double>::infinity();
      if (h >= v * (1.0 - 1e-12) && h <= next * (1.0 + 1e-12)) {
        cert.h = h;
        break;
      }
    }
  }
  if (cert.h < 0.0) throw std::logic_error("gap_bound scan found no water level");

  double log_bound = 0.0;
  for (int i = 0; i < n; ++i) {
    log_bound += std::log(std::max(cert.phi[i], cert.h));
    if (cert.phi[i] > cert.h) ++cert.n1;
  }
  cert.n2 = n - cert.n1;
  cert.bound = std::exp(log_bound / n);
  return cert;
}

}  // namespace nswcp
