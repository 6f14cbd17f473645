#pragma once

// JSON instance schemas, reproducible instance generation, and the
// machine-readable run report.

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nswcp/model.hpp"

namespace nswcp {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"agents":[{"id":"a1","weight":0.5},...], "items":["j1",...],
//  "values":[["a1","j1",3.0],...]}; omitted pairs mean no edge.
NswInstance parse_nsw_json(const std::string& text);
std::string nsw_to_json(const NswInstance& instance);

// {"machines":[...], "jobs":[...], "p":[[...]],
//  "objective":{"kind":"lk","k":2} or {"kind":"completion"}}.
SchedInstance parse_sched_json(const std::string& text);
std::string sched_to_json(const SchedInstance& instance);

enum class WeightMode { Uniform, Dirichlet };

// Reproducible instances: values/sizes uniform on {1..10}, Dirichlet(1)
// weights renormalized; the same seed yields a byte-identical file.
NswInstance gen_nsw_instance(int n, int m, std::uint64_t seed, WeightMode mode);
SchedInstance gen_sched_instance(int machines, int jobs, std::uint64_t seed,
                                 SchedObjective objective);

// FNV-1a 64 of the canonical serialized instance, as 16 hex digits.
std::string instance_digest(const std::string& canonical_json);

struct RatioCertificate {
  std::string name;
  double ratio = 0.0;
  double bound = 0.0;
  bool pass = false;
};

struct FsrGapSection {
  double cp_value = 0.0;
  double construction_value = 0.0;
  double gap = 0.0;
  double band = 0.0;
  bool pass = false;
};

struct Report {
  std::string kind;  // "nsw" | "sched"
  std::string digest;
  double eps = 0.0;
  std::uint64_t seed = 0;
  double cp_value = 0.0;
  std::vector<int> grid_sizes;
  std::string round_mode;  // "best" | "sample"
  double rounded_value = 0.0;
  double expected_value = 0.0;
  int decomposition_terms = 0;
  std::map<std::string, std::string> allocation;  // object id -> player id
  std::vector<RatioCertificate> certificates;
  std::optional<FsrGapSection> fsr;
  std::map<std::string, double> timings_ms;
};

std::string report_to_json(const Report& report);
Report report_from_json(const std::string& text);

}  // namespace nswcp
