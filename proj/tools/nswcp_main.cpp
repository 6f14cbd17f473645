// Command-line front end: solve-nsw, solve-sched, verify, gen.
// Reports are JSON on stdout with a human summary on stderr.
// Exit codes: 0 success, 1 input error, 2 infeasible, 3 property failure.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nswcp/alpha.hpp"
#include "nswcp/fisher.hpp"
#include "nswcp/io.hpp"
#include "nswcp/oracle.hpp"
#include "nswcp/relax.hpp"
#include "nswcp/rounding.hpp"
#include "nswcp/verify.hpp"
#include "nswcp/waterfill.hpp"

namespace {

using namespace nswcp;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitProperty = 3;

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

struct SolveOptions {
  std::string input;
  std::string dump_lp;
  std::string round_mode = "best";
  std::string objective;  // solve-sched only
  double eps = kDefaultEps;
  std::uint64_t seed = 0;
};

int emit_report(Report& report, double t_start) {
  report.timings_ms["total"] = now_ms() - t_start;
  std::cout << report_to_json(report);
  std::cerr << "cp value " << report.cp_value << ", rounded " << report.rounded_value
            << ", expected " << report.expected_value << " (" << report.decomposition_terms
            << " terms)\n";
  bool all_pass = true;
  for (const RatioCertificate& cert : report.certificates) {
    std::cerr << "  " << cert.name << ": " << cert.ratio << " vs bound " << cert.bound << " -> "
              << (cert.pass ? "pass" : "FAIL") << "\n";
    all_pass = all_pass && cert.pass;
  }
  if (report.fsr.has_value()) {
    std::cerr << "  f-SR gap " << report.fsr->gap << " within band " << report.fsr->band
              << " -> " << (report.fsr->pass ? "pass" : "FAIL") << "\n";
    all_pass = all_pass && report.fsr->pass;
  }
  return all_pass ? kExitOk : kExitProperty;
}

int run_solve_nsw(const SolveOptions& opt) {
  const double t_start = now_ms();
  const NswInstance inst = parse_nsw_json(read_file(opt.input));
  const auto violations = validate(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid instance: " << v << "\n";
    return kExitInput;
  }
  if (!opt.dump_lp.empty()) {
    write_file(opt.dump_lp, build_nsw_lp(inst, opt.eps).to_mps());
  }

  Report report;
  report.kind = "nsw";
  report.digest = instance_digest(nsw_to_json(inst));
  report.eps = opt.eps;
  report.seed = opt.seed;
  report.round_mode = opt.round_mode;

  const double t_solve = now_ms();
  FractionalSolution sol;
  try {
    sol = solve_cp_nsw(inst, opt.eps);
  } catch (const InfeasibleInstance& err) {
    std::cerr << "infeasible: " << err.what() << "\n";
    return kExitInfeasible;
  }
  report.cp_value = sol.value;
  report.grid_sizes = sol.grid_sizes;
  report.timings_ms["solve"] = now_ms() - t_solve;

  const double t_round = now_ms();
  const MatchingDecomposition decomp = decompose(partition_groups(sol.x, inst));
  const RoundedPick best = best_allocation(decomp, inst);
  const Allocation chosen =
      opt.round_mode == "sample" ? sample(decomp, opt.seed) : best.allocation;
  report.timings_ms["round"] = now_ms() - t_round;
  report.decomposition_terms = static_cast<int>(decomp.terms.size());
  report.rounded_value =
      opt.round_mode == "sample" ? nsw_value(inst, chosen) : best.value;
  report.expected_value = best.expected_value;
  for (int j = 0; j < inst.num_items(); ++j) {
    report.allocation[inst.items()[j]] = inst.agents()[chosen.owner[j]].id;
  }

  const double e_inv = std::exp(-1.0 / std::exp(1.0));
  report.certificates.push_back(
      {"rounding_e_inv_e", best.value / std::exp(sol.value), e_inv / (1.0 + opt.eps),
       best.value >= e_inv / (1.0 + opt.eps) * std::exp(sol.value) - 1e-9});
  double fsum = 0.0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    fsum += inst.weight(i) * f_nsw(nsw_profile(inst, sol.x, i));
  }
  report.certificates.push_back(
      {"expectation_margin", best.expected_value - fsum, -1.0 / std::exp(1.0),
       best.expected_value - fsum >= -1.0 / std::exp(1.0) - 1e-9});
  double marginal = 0.0;
  for (int i = 0; i < inst.num_agents(); ++i) {
    for (int j = 0; j < inst.num_items(); ++j) {
      double p = 0.0;
      for (const auto& term : decomp.terms) {
        if (term.allocation.owner[j] == i) p += term.lambda;
      }
      marginal = std::max(marginal, std::abs(p - sol.x.at(i, j)));
    }
  }
  report.certificates.push_back({"marginal_error", marginal, 1e-6, marginal <= 1e-6});

  if (inst.is_unweighted()) {
    FsrGapSection fsr;
    fsr.cp_value = sol.value;
    fsr.construction_value = fsr_objective(inst, construct_from_x(inst, sol.x));
    fsr.gap = fsr.construction_value - fsr.cp_value;
    fsr.band = std::log1p(opt.eps) + 1e-6;
    fsr.pass = fsr.gap >= -fsr.band && fsr.gap <= fsr.band;
    report.fsr = fsr;
  }
  return emit_report(report, t_start);
}

SchedObjective parse_objective_flag(const std::string& text) {
  if (text == "l2") return SchedObjective::power(2.0);
  if (text == "completion") return SchedObjective::completion();
  if (text.size() > 3 && text.substr(0, 3) == "lk:") {
    return SchedObjective::power(std::stod(text.substr(3)));
  }
  throw ParseError("objective must be l2, lk:K or completion");
}

int run_solve_sched(const SolveOptions& opt) {
  const double t_start = now_ms();
  SchedInstance parsed = parse_sched_json(read_file(opt.input));
  SchedObjective objective = parsed.objective();
  if (!opt.objective.empty()) objective = parse_objective_flag(opt.objective);
  const SchedInstance inst(parsed.machines(), parsed.jobs(), parsed.p(), objective);
  const auto violations = validate(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invalid instance: " << v << "\n";
    return kExitInput;
  }
  const bool completion = objective.kind == SchedObjectiveKind::CompletionUniformSmith;
  if (!opt.dump_lp.empty()) {
    write_file(opt.dump_lp,
               completion
                   ? build_completion_lp(inst, opt.eps).to_mps()
                   : build_theta_lp(inst, opt.eps, ThetaSpec::power(objective.k)).to_mps());
  }

  Report report;
  report.kind = "sched";
  report.digest = instance_digest(sched_to_json(inst));
  report.eps = opt.eps;
  report.seed = opt.seed;
  report.round_mode = opt.round_mode;

  const double t_solve = now_ms();
  const FractionalSolution sol =
      completion ? solve_cp_completion(inst, opt.eps) : solve_cp_theta(inst, opt.eps);
  report.cp_value = sol.value;
  report.grid_sizes = sol.grid_sizes;
  report.timings_ms["solve"] = now_ms() - t_solve;

  const double t_round = now_ms();
  const MatchingDecomposition decomp = decompose(partition_groups(sol.x, inst));
  const RoundedPick best = best_allocation(decomp, inst);
  const Allocation chosen =
      opt.round_mode == "sample" ? sample(decomp, opt.seed) : best.allocation;
  report.timings_ms["round"] = now_ms() - t_round;
  report.decomposition_terms = static_cast<int>(decomp.terms.size());
  report.rounded_value =
      opt.round_mode == "sample" ? sched_cost(inst, chosen) : best.value;
  report.expected_value = best.expected_value;
  for (int j = 0; j < inst.num_jobs(); ++j) {
    report.allocation[inst.jobs()[j]] = inst.machines()[chosen.owner[j]];
  }

  const double stretch = completion ? (1.0 + opt.eps) * (1.0 + opt.eps)
                                    : std::pow(1.0 + opt.eps, objective.k);
  const double alpha =
      completion ? completion_alpha() : compute_alpha_power(objective.k).alpha;
  report.certificates.push_back(
      {completion ? "rounding_completion_alpha" : "rounding_alpha_k",
       best.expected_value / sol.value, alpha * stretch,
       best.expected_value <= alpha * stretch * sol.value + 1e-6});
  double marginal = 0.0;
  for (int i = 0; i < inst.num_machines(); ++i) {
    for (int j = 0; j < inst.num_jobs(); ++j) {
      double p = 0.0;
      for (const auto& term : decomp.terms) {
        if (term.allocation.owner[j] == i) p += term.lambda;
      }
      marginal = std::max(marginal, std::abs(p - sol.x.at(i, j)));
    }
  }
  report.certificates.push_back({"marginal_error", marginal, 1e-6, marginal <= 1e-6});
  return emit_report(report, t_start);
}

int run_verify(const std::string& suite, const std::string& input) {
  if (!input.empty() && suite == "fsr") {
    const NswInstance inst = parse_nsw_json(read_file(input));
    const EquivalenceReport eq = equivalence_report(inst);
    std::cerr << "input instance: gap " << eq.gap << " band " << eq.band << "\n";
    if (std::abs(eq.gap) > eq.band) {
      std::cerr << "FAIL fsr: gap outside band on input instance\n";
      return kExitProperty;
    }
  }
  return run_verify_suite(suite, std::cerr) ? kExitOk : kExitProperty;
}

struct GenOptions {
  std::string kind = "nsw";
  int n = 2;
  int m = 4;
  std::uint64_t seed = 0;
  std::string weights = "dirichlet";
  std::string objective = "lk:2";
  std::string out;
};

int run_gen(const GenOptions& opt) {
  std::string text;
  if (opt.kind == "nsw") {
    const WeightMode mode =
        opt.weights == "uniform" ? WeightMode::Uniform : WeightMode::Dirichlet;
    text = nsw_to_json(gen_nsw_instance(opt.n, opt.m, opt.seed, mode));
  } else if (opt.kind == "sched") {
    text = sched_to_json(
        gen_sched_instance(opt.n, opt.m, opt.seed, parse_objective_flag(opt.objective)));
  } else {
    throw ParseError("kind must be nsw or sched");
  }
  if (opt.out.empty()) std::cout << text;
  else write_file(opt.out, text);
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Compact convex-programming relaxations for Nash social welfare and "
               "unrelated-machine scheduling, with matching-based rounding"};
  app.require_subcommand(1);

  SolveOptions nsw_opt;
  CLI::App* solve_nsw = app.add_subcommand("solve-nsw", "solve and round an NSW instance");
  solve_nsw->add_option("--input", nsw_opt.input, "instance JSON file")->required();
  solve_nsw->add_option("--eps", nsw_opt.eps, "discretization parameter");
  solve_nsw->add_option("--seed", nsw_opt.seed, "sampling seed");
  solve_nsw->add_option("--round", nsw_opt.round_mode, "best|sample")
      ->check(CLI::IsMember({"best", "sample"}));
  solve_nsw->add_option("--dump-lp", nsw_opt.dump_lp, "write the full LP in MPS format");

  SolveOptions sched_opt;
  CLI::App* solve_sched =
      app.add_subcommand("solve-sched", "solve and round a scheduling instance");
  solve_sched->add_option("--input", sched_opt.input, "instance JSON file")->required();
  solve_sched->add_option("--objective", sched_opt.objective,
                          "l2|lk:K|completion (overrides the file)");
  solve_sched->add_option("--eps", sched_opt.eps, "discretization parameter");
  solve_sched->add_option("--seed", sched_opt.seed, "sampling seed");
  solve_sched->add_option("--round", sched_opt.round_mode, "best|sample")
      ->check(CLI::IsMember({"best", "sample"}));
  solve_sched->add_option("--dump-lp", sched_opt.dump_lp, "write the full LP in MPS format");

  std::string suite, verify_input;
  CLI::App* verify = app.add_subcommand("verify", "run a property suite");
  verify->add_option("--suite", suite, "nsw|fsr|ef1|sched|alpha")
      ->required()
      ->check(CLI::IsMember({"nsw", "fsr", "ef1", "sched", "alpha"}));
  verify->add_option("--input", verify_input, "optional instance for the fsr suite");

  GenOptions gen_opt;
  CLI::App* gen = app.add_subcommand("gen", "generate a reproducible instance");
  gen->add_option("--kind", gen_opt.kind, "nsw|sched")
      ->check(CLI::IsMember({"nsw", "sched"}));
  gen->add_option("--n", gen_opt.n, "players (agents or machines)")->required();
  gen->add_option("--m", gen_opt.m, "objects (items or jobs)")->required();
  gen->add_option("--seed", gen_opt.seed, "generator seed");
  gen->add_option("--weights", gen_opt.weights, "uniform|dirichlet")
      ->check(CLI::IsMember({"uniform", "dirichlet"}));
  gen->add_option("--objective", gen_opt.objective, "sched objective (l2|lk:K|completion)");
  gen->add_option("--out", gen_opt.out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& err) {
    const int code = app.exit(err);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (solve_nsw->parsed()) return run_solve_nsw(nsw_opt);
    if (solve_sched->parsed()) return run_solve_sched(sched_opt);
    if (verify->parsed()) return run_verify(suite, verify_input);
    return run_gen(gen_opt);
  } catch (const ParseError& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const InfeasibleInstance& err) {
    std::cerr << "infeasible: " << err.what() << "\n";
    return kExitInfeasible;
  } catch (const std::invalid_argument& err) {
    std::cerr << "input error: " << err.what() << "\n";
    return kExitInput;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return kExitProperty;
  }
}
