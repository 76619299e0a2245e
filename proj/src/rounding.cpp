#include "tfim/rounding.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tfim/constants.hpp"
#include "tfim/errors.hpp"

namespace tfim {

std::string_view algorithm_name(Algorithm algo) {
  switch (algo) {
    case Algorithm::FieldOnly: return "FieldOnly";
    case Algorithm::IsingGW: return "IsingGW";
    case Algorithm::AlgA: return "AlgA";
    case Algorithm::AlgB: return "AlgB";
    case Algorithm::AlgC: return "AlgC";
  }
  return "unknown";
}

std::vector<int> hyperplane_signs(const Eigen::MatrixXd& grams, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Eigen::VectorXd g(grams.cols());
  for (Eigen::Index k = 0; k < g.size(); ++k) g(k) = normal(rng);
  const Eigen::VectorXd proj = grams * g;
  std::vector<int> signs(static_cast<std::size_t>(proj.size()));
  for (Eigen::Index i = 0; i < proj.size(); ++i) signs[i] = proj(i) < 0.0 ? -1 : 1;
  return signs;
}

namespace {

RoundingOutcome finish(const Instance& inst, BlochAssignment state, Algorithm algo, double q,
                       std::uint64_t seed, std::uint64_t trial) {
  RoundingOutcome out;
  out.value = evaluate_product_state(inst, state).total;
  out.state = std::move(state);
  out.algo = algo;
  out.q = q;
  out.seed = seed;
  out.trial = trial;
  return out;
}

std::vector<int> draw_signs(const SdpSolution& sdp, std::uint64_t seed, std::uint64_t trial) {
  auto rng = make_stream(seed, trial);
  return hyperplane_signs(sdp.grams, rng);
}

}  // namespace

RoundingOutcome algorithm_a(const Instance& inst, const SdpSolution& sdp, std::uint64_t seed,
                            std::uint64_t trial) {
  const std::vector<int> s = draw_signs(sdp, seed, trial);
  BlochAssignment state(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) state[i] = {0.0, 0.0, static_cast<double>(s[i])};
  return finish(inst, std::move(state), Algorithm::AlgA, 0.0, seed, trial);
}

RoundingOutcome algorithm_b(const Instance& inst, const SdpSolution& sdp, std::uint64_t seed,
                            std::uint64_t trial) {
  const std::vector<int> s = draw_signs(sdp, seed, trial);
  BlochAssignment state(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double x = sdp.x(static_cast<Eigen::Index>(i));
    const double leftover = std::sqrt(1.0 - x * x);
    state[i] = {x, 0.0, leftover * s[i]};
  }
  return finish(inst, std::move(state), Algorithm::AlgB, 1.0, seed, trial);
}

RoundingOutcome algorithm_c(const Instance& inst, const SdpSolution& sdp, double q,
                            std::uint64_t seed, std::uint64_t trial) {
  if (!(q >= 0.0 && q <= 1.0)) throw ArgumentError("interpolation parameter q must lie in [0,1]");
  const std::vector<int> s = draw_signs(sdp, seed, trial);
  BlochAssignment state(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    // + 0.0 folds a signed zero from q = 0 times a negative x.
    const double scaled = q * sdp.x(static_cast<Eigen::Index>(i)) + 0.0;
    const double leftover = std::sqrt(1.0 - scaled * scaled);
    state[i] = {scaled, 0.0, leftover * s[i]};
  }
  return finish(inst, std::move(state), Algorithm::AlgC, q, seed, trial);
}

RoundingOutcome warmup_field_state(const Instance& inst) {
  BlochAssignment state(static_cast<std::size_t>(inst.size()), BlochVector{1.0, 0.0, 0.0});
  return finish(inst, std::move(state), Algorithm::FieldOnly, 0.0, 0, 0);
}

SdpSolution solve_edge_relaxation(const Instance& inst, double tol) {
  return solve_soc_sdp(inst.with_fields(std::vector<double>(static_cast<std::size_t>(inst.size()), 0.0)),
                       tol);
}

RoundingOutcome warmup_ising_state(const Instance& inst, const SdpSolution& edge_sdp,
                                   std::uint64_t seed, std::uint64_t trial) {
  const std::vector<int> s = draw_signs(edge_sdp, seed, trial);
  BlochAssignment state(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) state[i] = {0.0, 0.0, static_cast<double>(s[i])};
  return finish(inst, std::move(state), Algorithm::IsingGW, 0.0, seed, trial);
}

RoundingOutcome warmup_ising_state(const Instance& inst, std::uint64_t seed, double tol) {
  return warmup_ising_state(inst, solve_edge_relaxation(inst, tol), seed, 0);
}

RoundingOutcome best_of(const std::vector<RoundingOutcome>& candidates) {
  if (candidates.empty()) throw ArgumentError("best_of needs at least one candidate");
  const RoundingOutcome* best = &candidates.front();
  for (const RoundingOutcome& c : candidates) {
    if (c.value > best->value ||
        (c.value == best->value && static_cast<int>(c.algo) < static_cast<int>(best->algo))) {
      best = &c;
    }
  }
  return *best;
}

TrialSummary run_trials(const Instance& inst, const SdpSolution& sdp, Algorithm algo, double q,
                        int trials, std::uint64_t seed) {
  if (trials < 1) throw ArgumentError("trial count must be at least 1");
  TrialSummary out;
  out.trials = trials;
  double mean = 0.0;
  double m2 = 0.0;
  for (int t = 0; t < trials; ++t) {
    const auto trial = static_cast<std::uint64_t>(t);
    RoundingOutcome r;
    switch (algo) {
      case Algorithm::FieldOnly: r = warmup_field_state(inst); r.seed = seed; r.trial = trial; break;
      case Algorithm::IsingGW: r = warmup_ising_state(inst, sdp, seed, trial); break;
      case Algorithm::AlgA: r = algorithm_a(inst, sdp, seed, trial); break;
      case Algorithm::AlgB: r = algorithm_b(inst, sdp, seed, trial); break;
      case Algorithm::AlgC: r = algorithm_c(inst, sdp, q, seed, trial); break;
    }
    const double delta = r.value - mean;
    mean += delta / (t + 1);
    m2 += delta * (r.value - mean);
    if (t == 0 || r.value > out.best.value) out.best = std::move(r);
  }
  out.mean = mean;
  if (trials > 1) out.stderr_mean = std::sqrt(std::max(m2, 0.0) / (trials - 1) / trials);
  return out;
}

double expected_value(const Instance& inst, const SdpSolution& sdp, Algorithm algo, double q) {
  if (algo == Algorithm::FieldOnly) return 0.5 * inst.total_weight() + inst.total_field();
  const int n = inst.size();
  double scale = 0.0;  // multiplier on x_i for the X marginal
  if (algo == Algorithm::AlgB) scale = 1.0;
  if (algo == Algorithm::AlgC) scale = q;
  std::vector<double> leftover(static_cast<std::size_t>(n));
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    const double xi = scale * sdp.x(i);
    leftover[i] = std::sqrt(1.0 - xi * xi);
    total += 0.5 * inst.fields()[i] * (1.0 + xi);
  }
  for (std::size_t k = 0; k < inst.edges().size(); ++k) {
    const Edge& e = inst.edges()[k];
    const double t = std::clamp(sdp.signed_correlation(inst, k), -1.0, 1.0);
    total += 0.5 * e.w * (1.0 + leftover[e.u] * leftover[e.v] * k_of_t(t));
  }
  return total;
}

}  // namespace tfim
