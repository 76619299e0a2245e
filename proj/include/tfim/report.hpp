#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "tfim/constants.hpp"
#include "tfim/exact.hpp"
#include "tfim/instance.hpp"
#include "tfim/relax.hpp"
#include "tfim/rounding.hpp"

namespace tfim {

/// JSON text with every float cut to 12 significant digits; two-space indent.
std::string dump_report(const nlohmann::json& doc);

nlohmann::json instance_summary(const Instance& inst);
nlohmann::json sdp_to_json(const Instance& inst, const SdpSolution& sdp);
nlohmann::json outcome_to_json(const RoundingOutcome& outcome);
nlohmann::json bloch_to_json(const BlochAssignment& state);

struct RoundOptions {
  std::string algo = "best";  // A, B, C, warmup, best
  std::optional<double> q;    // AlgC parameter, defaults to q_star()
  int trials = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int cap = kDefaultQubitCap;
  int restarts = 64;  // product-optimum restarts when n <= cap
};

/// solve -> round -> evaluate, with exact and product optima when n <= cap.
nlohmann::json round_report(const Instance& inst, const RoundOptions& options);

struct ExactOptions {
  int cap = kDefaultQubitCap;
  int restarts = 128;
  std::uint64_t seed = 1;
};

/// Spectrum (descending), lambda_max, shift identity and the product optimum.
nlohmann::json exact_report(const Instance& inst, const ExactOptions& options);

nlohmann::json constants_report();
std::string curve_csv(const std::vector<CurvePoint>& curve);

struct TriangleOptions {
  double field = 0.6;
  int restarts = 200;
  int trials = 1000;
  std::uint64_t seed = 1;
  double tol = 1e-7;
};

struct TriangleResult {
  nlohmann::json report;
  bool passed = false;
};

/// Runs every check on the three-qubit triangle. With the default field the
/// spectrum, product optimum and 169/180 gap are asserted; otherwise they are
/// only reported.
TriangleResult triangle_report(const TriangleOptions& options);

struct BenchOptions {
  int instances = 20;
  int n = 8;
  double edge_prob = 0.5;
  double neg_prob = 0.5;
  double h_max = 1.0;
  int trials = 200;
  std::uint64_t seed = 1;
  double tol = 1e-7;
  int cap = 12;
};

/// One round_report per random instance.
std::vector<nlohmann::json> bench_reports(const BenchOptions& options);
std::string bench_csv(const std::vector<nlohmann::json>& reports);

}  // namespace tfim
