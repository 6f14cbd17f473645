#include "nswcp/io.hpp"

#include <cmath>
#include <random>

#include "json.hpp"

namespace nswcp {

namespace {

using nlohmann::json;

json parse_or_throw(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& err) {
    throw ParseError(err.what());  // message carries line/column
  }
}

double require_number(const json& node, const std::string& where) {
  if (!node.is_number()) throw ParseError(where + ": expected a number");
  return node.get<double>();
}

std::string require_string(const json& node, const std::string& where) {
  if (!node.is_string()) throw ParseError(where + ": expected a string");
  return node.get<std::string>();
}

const json& require_array(const json& parent, const std::string& key) {
  if (!parent.contains(key) || !parent[key].is_array()) {
    throw ParseError("missing array field \"" + key + "\"");
  }
  return parent[key];
}

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

NswInstance parse_nsw_json(const std::string& text) {
  const json root = parse_or_throw(text);
  if (!root.is_object()) throw ParseError("instance must be a JSON object");
  std::vector<NswAgent> agents;
  std::map<std::string, int> agent_index;
  for (const json& node : require_array(root, "agents")) {
    if (!node.is_object()) throw ParseError("agents: expected objects with id and weight");
    NswAgent agent;
    agent.id = require_string(node.value("id", json()), "agent id");
    agent.weight = require_number(node.value("weight", json()), "agent " + agent.id + " weight");
    if (agent_index.count(agent.id) > 0) throw ParseError("duplicate agent id " + agent.id);
    agent_index[agent.id] = static_cast<int>(agents.size());
    agents.push_back(agent);
  }
  std::vector<std::string> items;
  std::map<std::string, int> item_index;
  for (const json& node : require_array(root, "items")) {
    const std::string id = require_string(node, "item id");
    if (item_index.count(id) > 0) throw ParseError("duplicate item id " + id);
    item_index[id] = static_cast<int>(items.size());
    items.push_back(id);
  }
  std::vector<NswEdge> edges;
  for (const json& node : require_array(root, "values")) {
    if (!node.is_array() || node.size() != 3) {
      throw ParseError("values: expected triples [agent, item, value]");
    }
    const std::string agent_id = require_string(node[0], "value triple agent");
    const std::string item_id = require_string(node[1], "value triple item");
    if (agent_index.count(agent_id) == 0) throw ParseError("unknown agent id " + agent_id);
    if (item_index.count(item_id) == 0) throw ParseError("unknown item id " + item_id);
    edges.push_back({agent_index[agent_id], item_index[item_id],
                     require_number(node[2], "value of (" + agent_id + "," + item_id + ")")});
  }
  return NswInstance(std::move(agents), std::move(items), std::move(edges));
}

std::string nsw_to_json(const NswInstance& inst) {
  json root;
  root["agents"] = json::array();
  for (const NswAgent& a : inst.agents()) {
    root["agents"].push_back({{"id", a.id}, {"weight", a.weight}});
  }
  root["items"] = inst.items();
  root["values"] = json::array();
  for (const NswEdge& e : inst.edges()) {
    root["values"].push_back(
        json::array({inst.agents()[e.agent].id, inst.items()[e.item], e.value}));
  }
  return root.dump(2) + "\n";
}

SchedInstance parse_sched_json(const std::string& text) {
  const json root = parse_or_throw(text);
  if (!root.is_object()) throw ParseError("instance must be a JSON object");
  std::vector<std::string> machines, jobs;
  for (const json& node : require_array(root, "machines")) {
    machines.push_back(require_string(node, "machine id"));
  }
  for (const json& node : require_array(root, "jobs")) {
    jobs.push_back(require_string(node, "job id"));
  }
  std::vector<std::vector<double>> p;
  for (const json& row : require_array(root, "p")) {
    if (!row.is_array()) throw ParseError("p: expected a matrix");
    std::vector<double> r;
    for (const json& cell : row) r.push_back(require_number(cell, "p entry"));
    p.push_back(std::move(r));
  }
  SchedObjective objective;
  if (!root.contains("objective") || !root["objective"].is_object()) {
    throw ParseError("missing object field \"objective\"");
  }
  const std::string kind = require_string(root["objective"].value("kind", json()),
                                          "objective kind");
  if (kind == "lk") {
    objective = SchedObjective::power(
        require_number(root["objective"].value("k", json()), "objective k"));
  } else if (kind == "completion") {
    objective = SchedObjective::completion();
  } else {
    throw ParseError("objective kind must be \"lk\" or \"completion\"");
  }
  try {
    return SchedInstance(std::move(machines), std::move(jobs), std::move(p), objective);
  } catch (const std::invalid_argument& err) {
    throw ParseError(err.what());
  }
}

std::string sched_to_json(const SchedInstance& inst) {
  json root;
  root["machines"] = inst.machines();
  root["jobs"] = inst.jobs();
  root["p"] = inst.p();
  if (inst.objective().kind == SchedObjectiveKind::PowerLoad) {
    root["objective"] = {{"kind", "lk"}, {"k", inst.objective().k}};
  } else {
    root["objective"] = {{"kind", "completion"}};
  }
  return root.dump(2) + "\n";
}

NswInstance gen_nsw_instance(int n, int m, std::uint64_t seed, WeightMode mode) {
  if (n < 1 || m < 1) throw std::invalid_argument("need at least one agent and one item");
  std::mt19937_64 rng(seed);
  std::vector<NswAgent> agents(n);
  if (mode == WeightMode::Uniform) {
    for (int i = 0; i < n; ++i) agents[i].weight = 1.0 / n;
  } else {
    // Dirichlet(1): normalized exponentials.
    std::vector<double> draw(n);
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
      draw[i] = -std::log(std::max(uniform01(rng), 1e-300));
      total += draw[i];
    }
    for (int i = 0; i < n; ++i) agents[i].weight = draw[i] / total;
  }
  for (int i = 0; i < n; ++i) agents[i].id = "a" + std::to_string(i + 1);
  std::vector<std::string> items(m);
  for (int j = 0; j < m; ++j) items[j] = "j" + std::to_string(j + 1);
  std::vector<NswEdge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < m; ++j) {
      edges.push_back({i, j, static_cast<double>(1 + rng() % 10)});
    }
  }
  return NswInstance(std::move(agents), std::move(items), std::move(edges));
}

SchedInstance gen_sched_instance(int machines, int jobs, std::uint64_t seed,
                                 SchedObjective objective) {
  if (machines < 1 || jobs < 1) throw std::invalid_argument("need machines and jobs");
  std::mt19937_64 rng(seed);
  std::vector<std::string> machine_ids(machines), job_ids(jobs);
  for (int i = 0; i < machines; ++i) machine_ids[i] = "m" + std::to_string(i + 1);
  for (int j = 0; j < jobs; ++j) job_ids[j] = "j" + std::to_string(j + 1);
  std::vector<std::vector<double>> p(machines, std::vector<double>(jobs, 0.0));
  for (int i = 0; i < machines; ++i) {
    for (int j = 0; j < jobs; ++j) p[i][j] = static_cast<double>(1 + rng() % 10);
  }
  return SchedInstance(std::move(machine_ids), std::move(job_ids), std::move(p), objective);
}

std::string instance_digest(const std::string& canonical_json) {
  std::uint64_t hash = 1469598103934665603ull;
  for (unsigned char c : canonical_json) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[hash & 0xf];
    hash >>= 4;
  }
  return out;
}

std::string report_to_json(const Report& report) {
  json root;
  root["kind"] = report.kind;
  root["instance_digest"] = report.digest;
  root["eps"] = report.eps;
  root["seed"] = report.seed;
  root["cp_value"] = report.cp_value;
  root["grid_sizes"] = report.grid_sizes;
  root["round_mode"] = report.round_mode;
  root["rounded_value"] = report.rounded_value;
  root["expected_value"] = report.expected_value;
  root["decomposition_terms"] = report.decomposition_terms;
  root["allocation"] = report.allocation;
  root["certificates"] = json::array();
  for (const RatioCertificate& c : report.certificates) {
    root["certificates"].push_back(
        {{"name", c.name}, {"ratio", c.ratio}, {"bound", c.bound}, {"pass", c.pass}});
  }
  if (report.fsr.has_value()) {
    root["fsr"] = {{"cp_value", report.fsr->cp_value},
                   {"construction_value", report.fsr->construction_value},
                   {"gap", report.fsr->gap},
                   {"band", report.fsr->band},
                   {"pass", report.fsr->pass}};
  }
  root["timings_ms"] = report.timings_ms;
  return root.dump(2) + "\n";
}

Report report_from_json(const std::string& text) {
  const json root = parse_or_throw(text);
  Report report;
  report.kind = root.at("kind").get<std::string>();
  report.digest = root.at("instance_digest").get<std::string>();
  report.eps = root.at("eps").get<double>();
  report.seed = root.at("seed").get<std::uint64_t>();
  report.cp_value = root.at("cp_value").get<double>();
  report.grid_sizes = root.at("grid_sizes").get<std::vector<int>>();
  report.round_mode = root.at("round_mode").get<std::string>();
  report.rounded_value = root.at("rounded_value").get<double>();
  report.expected_value = root.at("expected_value").get<double>();
  report.decomposition_terms = root.at("decomposition_terms").get<int>();
  report.allocation = root.at("allocation").get<std::map<std::string, std::string>>();
  for (const json& node : root.at("certificates")) {
    report.certificates.push_back({node.at("name").get<std::string>(),
                                   node.at("ratio").get<double>(),
                                   node.at("bound").get<double>(), node.at("pass").get<bool>()});
  }
  if (root.contains("fsr")) {
    FsrGapSection fsr;
    fsr.cp_value = root["fsr"].at("cp_value").get<double>();
    fsr.construction_value = root["fsr"].at("construction_value").get<double>();
    fsr.gap = root["fsr"].at("gap").get<double>();
    fsr.band = root["fsr"].at("band").get<double>();
    fsr.pass = root["fsr"].at("pass").get<bool>();
    report.fsr = fsr;
  }
  report.timings_ms = root.at("timings_ms").get<std::map<std::string, double>>();
  return report;
}

}  // namespace nswcp
