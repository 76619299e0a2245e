#pragma once

#include <vector>

#include <Eigen/Dense>

#include "tfim/errors.hpp"
#include "tfim/instance.hpp"

namespace tfim {

/// Feasible point of the SOC-strengthened SDP relaxation
///
///   maximize   sum_e w_e (1 + t_e)/2 + sum_i h_i (1 + x_i)/2,   t_e = -J_e c_e
///   subject to C >= 0, diag(C) = 1, x in [-1,1]^n,
///              x_u^2 + c_uv^2 <= 1 and x_v^2 + c_uv^2 <= 1 for every edge {u,v}.
struct SdpSolution {
  Eigen::VectorXd x;
  Eigen::MatrixXd C;
  /// Row i is the unit vector u_i with <u_i, u_j> = c_ij; one column per retained rank.
  Eigen::MatrixXd grams;
  double objective = 0.0;
  std::vector<double> edge_terms;   // w_e (1 + t_e)/2, aligned with inst.edges()
  std::vector<double> field_terms;  // h_i (1 + x_i)/2
  double primal_residual = 0.0;
  double dual_residual = 0.0;
  int iterations = 0;

  double edge_value() const;
  double field_value() const;
  /// t_e = -J_e c_e for edge index k.
  double signed_correlation(const Instance& inst, std::size_t k) const;
};

struct SolverOptions {
  double tol = 1e-7;  // relative to W + H
  int max_iterations = 200000;
  double rho = 1.0;
  double relaxation = 1.6;
};

/// Raised when the splitting iteration hits its cap. Carries the repaired best
/// iterate together with its residuals.
class SolverError : public Error {
 public:
  SolverError(const std::string& what, SdpSolution best)
      : Error(what), best_(std::move(best)) {}
  const SdpSolution& best() const noexcept { return best_; }

 private:
  SdpSolution best_;
};

/// Solves the relaxation by operator splitting (PSD cone, per-endpoint disks,
/// box) and returns an exactly feasible point.
SdpSolution solve_soc_sdp(const Instance& inst, double tol = 1e-7);
SdpSolution solve_soc_sdp(const Instance& inst, const SolverOptions& options);

/// Unit-vector factor of a PSD matrix with unit diagonal. Eigenvalues in
/// [-1e-6, 0) are clipped; anything lower is refused with VerificationError.
Eigen::MatrixXd gram_vectors(const Eigen::MatrixXd& C);

/// Projects C onto the PSD cone, restores the unit diagonal, clamps x to the box
/// and shrinks |x_i| until every disk constraint holds in floating point.
/// Terms, objective and Gram vectors are recomputed from the repaired point.
SdpSolution repair_feasibility(const Eigen::VectorXd& x, const Eigen::MatrixXd& C,
                               const Instance& inst);

}  // namespace tfim
