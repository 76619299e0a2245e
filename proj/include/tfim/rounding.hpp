#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "tfim/exact.hpp"
#include "tfim/instance.hpp"
#include "tfim/relax.hpp"
#include "tfim/rng.hpp"

namespace tfim {

/// Product-state constructions, in tie-break order.
enum class Algorithm {
  FieldOnly,  // |+>^n
  IsingGW,    // hyperplane rounding of the field-free relaxation
  AlgA,       // pure Z from the SOC-SDP vectors
  AlgB,       // SDP x-marginals, leftover Z budget on the hyperplane signs
  AlgC,       // x-marginals scaled by q
};

std::string_view algorithm_name(Algorithm algo);

struct RoundingOutcome {
  BlochAssignment state;
  double value = 0.0;  // evaluate_product_state(inst, state).total
  Algorithm algo = Algorithm::FieldOnly;
  double q = 0.0;  // meaningful for AlgC; 0 for A, 1 for B
  std::uint64_t seed = 0;
  std::uint64_t trial = 0;
};

/// s_i = sign(<g, u_i>) for g ~ N(0, I) in the row space of `grams`; sign(0) = +1.
std::vector<int> hyperplane_signs(const Eigen::MatrixXd& grams, std::mt19937_64& rng);

/// Bloch vectors (0, 0, s_i).
RoundingOutcome algorithm_a(const Instance& inst, const SdpSolution& sdp, std::uint64_t seed,
                            std::uint64_t trial = 0);

/// Bloch vectors (x_i, 0, sqrt(1 - x_i^2) s_i).
RoundingOutcome algorithm_b(const Instance& inst, const SdpSolution& sdp, std::uint64_t seed,
                            std::uint64_t trial = 0);

/// Bloch vectors (q x_i, 0, sqrt(1 - (q x_i)^2) s_i). Throws ArgumentError for q outside [0,1].
RoundingOutcome algorithm_c(const Instance& inst, const SdpSolution& sdp, double q,
                            std::uint64_t seed, std::uint64_t trial = 0);

/// Every qubit in |+>; value W/2 + H.
RoundingOutcome warmup_field_state(const Instance& inst);

/// The relaxation with all fields set to zero: the signed MaxCut SDP.
SdpSolution solve_edge_relaxation(const Instance& inst, double tol = 1e-7);

/// Hyperplane rounding of `edge_sdp` (from solve_edge_relaxation) to a Z-basis state.
RoundingOutcome warmup_ising_state(const Instance& inst, const SdpSolution& edge_sdp,
                                   std::uint64_t seed, std::uint64_t trial = 0);
RoundingOutcome warmup_ising_state(const Instance& inst, std::uint64_t seed, double tol = 1e-7);

/// Highest value; ties go to the earliest algorithm, then to the earliest entry.
/// Throws ArgumentError on an empty list.
RoundingOutcome best_of(const std::vector<RoundingOutcome>& candidates);

struct TrialSummary {
  RoundingOutcome best;
  double mean = 0.0;
  double stderr_mean = 0.0;
  int trials = 0;
};

/// Runs `algo` on streams 0..trials-1 of `seed`. For IsingGW pass the edge relaxation
/// as `sdp`; `q` is read only by AlgC.
TrialSummary run_trials(const Instance& inst, const SdpSolution& sdp, Algorithm algo, double q,
                        int trials, std::uint64_t seed);

/// Exact expectation of the randomized value of `algo` over the Gaussian draw:
/// sum_e w_e (1 + a_u a_v K(t_e))/2 + sum_i h_i (1 + x'_i)/2.
double expected_value(const Instance& inst, const SdpSolution& sdp, Algorithm algo, double q = 1.0);

}  // namespace tfim
