// Command-line front end; talks to the library only through the C API.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "tfim/tfim.h"

namespace {

int emit(tfim_status status, char*& text) {
  if (text != nullptr) {
    std::fputs(text, stdout);
    if (text[0] != '\0' && text[std::char_traits<char>::length(text) - 1] != '\n') std::fputc('\n', stdout);
    tfim_string_free(text);
    text = nullptr;
  }
  if (status != TFIM_OK) std::fprintf(stderr, "error: %s\n", tfim_last_error());
  return static_cast<int>(status);
}

struct InstanceHandle {
  tfim_instance* ptr = nullptr;
  ~InstanceHandle() { tfim_instance_free(ptr); }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Product-state approximations for signed transverse-field Ising instances"};
  app.require_subcommand(1);

  std::string path;
  double tol = 1e-7;
  int trials = 1000;
  unsigned long long seed = 1;
  double q = -1.0;
  std::string algo = "best";
  std::string format = "json";
  int cap = 14;
  int restarts = 128;
  int points = 1001;
  double field = 0.6;

  tfim_bench_options bench;
  tfim_bench_options_init(&bench);
  unsigned long long bench_seed = bench.seed;

  auto* solve = app.add_subcommand("solve", "Solve the SOC-SDP relaxation, print the solution as JSON");
  solve->add_option("instance", path, "Instance JSON file")->required();
  solve->add_option("--tol", tol, "Solver tolerance relative to W + H");

  auto* round = app.add_subcommand("round", "Solve, round and report value/SDP and value/exact ratios");
  round->add_option("instance", path, "Instance JSON file")->required();
  round->add_option("--algo", algo, "A, B, C, warmup or best")
      ->check(CLI::IsMember({"A", "B", "C", "warmup", "best"}));
  round->add_option("--q", q, "Interpolation parameter for C (default q*)")->check(CLI::Range(0.0, 1.0));
  round->add_option("--trials", trials, "Rounding trials per algorithm")->check(CLI::PositiveNumber);
  round->add_option("--seed", seed, "Master seed");
  round->add_option("--tol", tol, "Solver tolerance relative to W + H");
  round->add_option("--cap", cap, "Largest n for exact diagonalization");
  round->add_option("--restarts", restarts, "Product-optimum restarts");

  auto* exact = app.add_subcommand("exact", "Dense spectrum, lambda_max and product optimum");
  exact->add_option("instance", path, "Instance JSON file")->required();
  exact->add_option("--cap", cap, "Largest n for exact diagonalization");
  exact->add_option("--restarts", restarts, "Product-optimum restarts");
  exact->add_option("--seed", seed, "Seed for the product optimizer");

  auto* constants = app.add_subcommand("constants", "Rounding constants as JSON");

  auto* curve = app.add_subcommand("curve", "Optimal q and guaranteed ratio against edge share p");
  curve->add_option("--points", points, "Grid points on [0,1]")->check(CLI::Range(2, 1000000));
  curve->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  auto* triangle = app.add_subcommand("triangle", "Verify the three-qubit triangle instance");
  triangle->add_option("--field", field, "Uniform field g (checks are asserted for g = 0.6)");
  triangle->add_option("--restarts", restarts, "Product-optimum restarts");
  triangle->add_option("--trials", trials, "Rounding trials per algorithm")->check(CLI::PositiveNumber);
  triangle->add_option("--seed", seed, "Master seed");
  triangle->add_option("--tol", tol, "Solver tolerance relative to W + H");

  auto* benchcmd = app.add_subcommand("bench", "Sweep random G(n,p) instances");
  benchcmd->add_option("--instances", bench.instances, "Number of instances");
  benchcmd->add_option("--n", bench.n, "Qubits per instance");
  benchcmd->add_option("--edge-prob", bench.edge_prob, "Edge probability")->check(CLI::Range(0.0, 1.0));
  benchcmd->add_option("--neg-prob", bench.neg_prob, "Probability of J = -1")->check(CLI::Range(0.0, 1.0));
  benchcmd->add_option("--h-max", bench.h_max, "Fields drawn from U[0, h_max]")->check(CLI::NonNegativeNumber);
  benchcmd->add_option("--trials", bench.trials, "Rounding trials per algorithm")->check(CLI::PositiveNumber);
  benchcmd->add_option("--seed", bench_seed, "Master seed");
  benchcmd->add_option("--tol", bench.tol, "Solver tolerance relative to W + H");
  benchcmd->add_option("--cap", bench.cap, "Largest n for exact diagonalization");
  std::string bench_format = "csv";
  benchcmd->add_option("--format", bench_format, "csv or json")->check(CLI::IsMember({"csv", "json"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : TFIM_ERR_USAGE;
  }

  char* out = nullptr;
  if (*constants) return emit(tfim_report_constants(&out), out);
  if (*curve) {
    if (curve->count("--format") == 0) format = "csv";
    return emit(tfim_report_curve(points, format.c_str(), &out), out);
  }
  if (*triangle) {
    return emit(tfim_report_triangle(field, restarts, trials, seed, tol, &out), out);
  }
  if (*benchcmd) {
    bench.seed = bench_seed;
    return emit(tfim_report_bench(&bench, bench_format.c_str(), &out), out);
  }

  InstanceHandle inst;
  if (const tfim_status st = tfim_instance_load(path.c_str(), &inst.ptr); st != TFIM_OK) {
    char* none = nullptr;
    return emit(st, none);
  }

  if (*solve) {
    tfim_sdp* sdp = nullptr;
    tfim_status st = tfim_sdp_solve(inst.ptr, tol, &sdp);
    if (st == TFIM_OK) st = tfim_sdp_to_json(sdp, &out);
    tfim_sdp_free(sdp);
    return emit(st, out);
  }
  if (*round) {
    tfim_round_options opts;
    tfim_round_options_init(&opts);
    opts.algo = algo.c_str();
    opts.q = q;
    opts.trials = trials;
    opts.seed = seed;
    opts.tol = tol;
    opts.cap = cap;
    opts.restarts = restarts;
    return emit(tfim_report_round(inst.ptr, &opts, &out), out);
  }
  if (*exact) return emit(tfim_report_exact(inst.ptr, cap, restarts, seed, &out), out);
  return TFIM_ERR_USAGE;
}
