#include "tfim/relax.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace tfim {

double SdpSolution::edge_value() const {
  double s = 0.0;
  for (double v : edge_terms) s += v;
  return s;
}

double SdpSolution::field_value() const {
  double s = 0.0;
  for (double v : field_terms) s += v;
  return s;
}

double SdpSolution::signed_correlation(const Instance& inst, std::size_t k) const {
  const Edge& e = inst.edges()[k];
  return -e.J * C(e.u, e.v);
}

Eigen::MatrixXd gram_vectors(const Eigen::MatrixXd& C) {
  const Eigen::Index n = C.rows();
  if (n == 0) return Eigen::MatrixXd(0, 0);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (C + C.transpose()));
  const Eigen::VectorXd& lambda = es.eigenvalues();
  if (lambda(0) < -1e-6) {
    throw VerificationError("Gram matrix has eigenvalue " + std::to_string(lambda(0)) +
                            " below -1e-6");
  }
  const double cutoff = 1e-12 * std::max(1.0, lambda(n - 1));
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = n - 1; k >= 0; --k) {
    if (lambda(k) > cutoff) kept.push_back(k);
  }
  if (kept.empty()) kept.push_back(n - 1);

  Eigen::MatrixXd factor(n, static_cast<Eigen::Index>(kept.size()));
  for (std::size_t c = 0; c < kept.size(); ++c) {
    const Eigen::Index k = kept[c];
    factor.col(static_cast<Eigen::Index>(c)) = es.eigenvectors().col(k) * std::sqrt(std::max(lambda(k), 0.0));
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    const double norm = factor.row(i).norm();
    if (norm > 0.0) {
      factor.row(i) /= norm;
    } else {
      factor.row(i).setZero();
      factor(i, 0) = 1.0;
    }
  }
  return factor;
}

namespace {

void fill_terms(SdpSolution& sol, const Instance& inst) {
  sol.edge_terms.clear();
  sol.field_terms.clear();
  sol.objective = 0.0;
  for (const Edge& e : inst.edges()) {
    const double t = -e.J * sol.C(e.u, e.v);
    sol.edge_terms.push_back(0.5 * e.w * (1.0 + t));
    sol.objective += sol.edge_terms.back();
  }
  for (int i = 0; i < inst.size(); ++i) {
    sol.field_terms.push_back(0.5 * inst.fields()[i] * (1.0 + sol.x(i)));
    sol.objective += sol.field_terms.back();
  }
}

// Largest magnitude not exceeding sqrt(1 - c^2) for which m*m + c*c <= 1 holds exactly.
double disk_limit(double c) {
  double m = std::sqrt(std::max(0.0, 1.0 - c * c));
  while (m > 0.0 && m * m + c * c > 1.0) m = std::nextafter(m, 0.0);
  return m;
}

}  // namespace

SdpSolution repair_feasibility(const Eigen::VectorXd& x_raw, const Eigen::MatrixXd& C_raw,
                               const Instance& inst) {
  const int n = inst.size();
  SdpSolution sol;
  sol.C = 0.5 * (C_raw + C_raw.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.C);
  // Roundoff-level negatives are left alone so a repaired point is a fixed point.
  if (es.eigenvalues()(0) < -1e-12) {
    const Eigen::VectorXd clipped = es.eigenvalues().cwiseMax(0.0);
    sol.C = es.eigenvectors() * clipped.asDiagonal() * es.eigenvectors().transpose();
    sol.C = 0.5 * (sol.C + sol.C.transpose());
  }
  bool unit_diagonal = true;
  for (int i = 0; i < n; ++i) unit_diagonal = unit_diagonal && sol.C(i, i) == 1.0;
  if (!unit_diagonal) {
    Eigen::VectorXd inv_sqrt(n);
    for (int i = 0; i < n; ++i) {
      inv_sqrt(i) = sol.C(i, i) > 1e-300 ? 1.0 / std::sqrt(sol.C(i, i)) : 0.0;
    }
    sol.C = inv_sqrt.asDiagonal() * sol.C * inv_sqrt.asDiagonal();
    for (int i = 0; i < n; ++i) {
      // A vanished diagonal means the vertex lost its vector; give it a fresh orthogonal one.
      if (inv_sqrt(i) == 0.0) {
        sol.C.row(i).setZero();
        sol.C.col(i).setZero();
      }
      sol.C(i, i) = 1.0;
    }
  }
  sol.C = sol.C.cwiseMax(-1.0).cwiseMin(1.0);
  sol.C.triangularView<Eigen::StrictlyLower>() = sol.C.transpose();

  sol.x = x_raw.cwiseMax(-1.0).cwiseMin(1.0);
  for (const Edge& e : inst.edges()) {
    const double limit = disk_limit(sol.C(e.u, e.v));
    for (int end : {e.u, e.v}) {
      if (std::abs(sol.x(end)) > limit) sol.x(end) = std::copysign(limit, sol.x(end));
    }
  }

  fill_terms(sol, inst);
  sol.grams = gram_vectors(sol.C);
  return sol;
}

namespace {

// Operator splitting over the consensus form
//   minimize  c^T z   s.t.  copies of z lie in: PSD cone (whole C), one unit disk per
//   (edge, endpoint) pair on (x_end, c_e), and [-1,1] for each x_i; diag(C) = 1 in z.
// The PSD copy is measured in the Frobenius norm, so each off-diagonal entry has weight 2.
class SplittingSolver {
 public:
  SplittingSolver(const Instance& inst, const SolverOptions& opt)
      : inst_(inst), opt_(opt), n_(inst.size()), m_(inst.edges().size()) {
    double scale = 0.0;
    for (double h : inst.fields()) scale = std::max(scale, 0.5 * h);
    for (const Edge& e : inst.edges()) scale = std::max(scale, 0.5 * e.w);
    cost_x_.resize(n_);
    for (int i = 0; i < n_; ++i) cost_x_(i) = -0.5 * inst.fields()[i] / scale;
    cost_c_.resize(m_);
    for (std::size_t k = 0; k < m_; ++k) cost_c_[k] = 0.5 * inst.edges()[k].w * inst.edges()[k].J / scale;

    x_ = Eigen::VectorXd::Zero(n_);
    C_ = Eigen::MatrixXd::Identity(n_, n_);
    psd_ = C_;
    psd_dual_ = Eigen::MatrixXd::Zero(n_, n_);
    disk_x_.assign(2 * m_, 0.0);
    disk_c_.assign(2 * m_, 0.0);
    disk_dual_x_.assign(2 * m_, 0.0);
    disk_dual_c_.assign(2 * m_, 0.0);
    box_ = Eigen::VectorXd::Zero(n_);
    box_dual_ = Eigen::VectorXd::Zero(n_);
    rho_ = opt.rho;
  }

  bool run() {
    const double alpha = opt_.relaxation;
    for (iterations_ = 1; iterations_ <= opt_.max_iterations; ++iterations_) {
      const Eigen::VectorXd x_old = x_;
      const Eigen::MatrixXd C_old = C_;
      update_consensus();

      // PSD copy.
      const Eigen::MatrixXd psd_hat = alpha * C_ + (1.0 - alpha) * psd_;
      const Eigen::MatrixXd psd_in = psd_hat + psd_dual_;
      eig_.compute(psd_in);
      psd_ = eig_.eigenvectors() * eig_.eigenvalues().cwiseMax(0.0).asDiagonal() *
             eig_.eigenvectors().transpose();
      psd_dual_ += psd_hat - psd_;

      // Disk copies.
      for (std::size_t k = 0; k < m_; ++k) {
        const Edge& e = inst_.edges()[k];
        const double c = C_(e.u, e.v);
        for (int side = 0; side < 2; ++side) {
          const std::size_t s = 2 * k + side;
          const double xv = x_(side == 0 ? e.u : e.v);
          const double hx = alpha * xv + (1.0 - alpha) * disk_x_[s];
          const double hc = alpha * c + (1.0 - alpha) * disk_c_[s];
          double px = hx + disk_dual_x_[s];
          double pc = hc + disk_dual_c_[s];
          const double r = std::hypot(px, pc);
          if (r > 1.0) {
            px /= r;
            pc /= r;
          }
          disk_x_[s] = px;
          disk_c_[s] = pc;
          disk_dual_x_[s] += hx - px;
          disk_dual_c_[s] += hc - pc;
        }
      }

      // Box copies.
      const Eigen::VectorXd box_hat = alpha * x_ + (1.0 - alpha) * box_;
      box_ = (box_hat + box_dual_).cwiseMax(-1.0).cwiseMin(1.0);
      box_dual_ += box_hat - box_;

      primal_ = primal_residual();
      dual_ = rho_ * consensus_change(x_old, C_old);
      if (primal_ < 0.25 * opt_.tol && dual_ < 0.25 * opt_.tol) return true;

      if (iterations_ % 25 == 0) rebalance();
    }
    iterations_ = opt_.max_iterations;
    return false;
  }

  const Eigen::VectorXd& x() const { return x_; }
  const Eigen::MatrixXd& C() const { return C_; }
  int iterations() const { return iterations_; }
  double primal() const { return primal_; }
  double dual() const { return dual_; }

 private:
  // z-update: weighted average of (copy - dual) minus cost/rho, diag(C) pinned to 1.
  void update_consensus() {
    Eigen::VectorXd num_x = box_ - box_dual_;
    Eigen::VectorXd wt_x = Eigen::VectorXd::Ones(n_);
    Eigen::MatrixXd num_c = 2.0 * (psd_ - psd_dual_);
    Eigen::MatrixXd wt_c = Eigen::MatrixXd::Constant(n_, n_, 2.0);
    for (std::size_t k = 0; k < m_; ++k) {
      const Edge& e = inst_.edges()[k];
      double sum_c = 0.0;
      for (int side = 0; side < 2; ++side) {
        const std::size_t s = 2 * k + side;
        const int v = side == 0 ? e.u : e.v;
        num_x(v) += disk_x_[s] - disk_dual_x_[s];
        wt_x(v) += 1.0;
        sum_c += disk_c_[s] - disk_dual_c_[s];
      }
      // Off-diagonal entry: the symmetric pair carries cost c_e on one variable.
      num_c(e.u, e.v) += sum_c - cost_c_[k] / rho_;
      num_c(e.v, e.u) = num_c(e.u, e.v);
      wt_c(e.u, e.v) += 2.0;
      wt_c(e.v, e.u) = wt_c(e.u, e.v);
    }
    x_ = (num_x - cost_x_ / rho_).cwiseQuotient(wt_x);
    C_ = num_c.cwiseQuotient(wt_c);
    C_.diagonal().setOnes();
  }

  double primal_residual() const {
    double r2 = (psd_ - C_).squaredNorm();
    r2 += (box_ - x_).squaredNorm();
    for (std::size_t k = 0; k < m_; ++k) {
      const Edge& e = inst_.edges()[k];
      for (int side = 0; side < 2; ++side) {
        const std::size_t s = 2 * k + side;
        const double dx = disk_x_[s] - x_(side == 0 ? e.u : e.v);
        const double dc = disk_c_[s] - C_(e.u, e.v);
        r2 += dx * dx + dc * dc;
      }
    }
    return std::sqrt(r2);
  }

  double consensus_change(const Eigen::VectorXd& x_old, const Eigen::MatrixXd& C_old) const {
    const Eigen::VectorXd dx = x_ - x_old;
    const Eigen::MatrixXd dC = C_ - C_old;
    double s2 = dC.squaredNorm() + dx.squaredNorm();
    for (std::size_t k = 0; k < m_; ++k) {
      const Edge& e = inst_.edges()[k];
      s2 += 2.0 * dC(e.u, e.v) * dC(e.u, e.v) + dx(e.u) * dx(e.u) + dx(e.v) * dx(e.v);
    }
    return std::sqrt(s2);
  }

  void rebalance() {
    double factor = 1.0;
    if (primal_ > 10.0 * dual_) factor = 2.0;
    else if (dual_ > 10.0 * primal_) factor = 0.5;
    if (factor == 1.0) return;
    rho_ *= factor;
    psd_dual_ /= factor;
    box_dual_ /= factor;
    for (double& u : disk_dual_x_) u /= factor;
    for (double& u : disk_dual_c_) u /= factor;
  }

  const Instance& inst_;
  SolverOptions opt_;
  int n_;
  std::size_t m_;
  Eigen::VectorXd cost_x_;
  std::vector<double> cost_c_;

  Eigen::VectorXd x_;
  Eigen::MatrixXd C_;
  Eigen::MatrixXd psd_, psd_dual_;
  std::vector<double> disk_x_, disk_c_, disk_dual_x_, disk_dual_c_;
  Eigen::VectorXd box_, box_dual_;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig_;
  double rho_ = 1.0;
  double primal_ = 0.0;
  double dual_ = 0.0;
  int iterations_ = 0;
};

}  // namespace

SdpSolution solve_soc_sdp(const Instance& inst, double tol) {
  SolverOptions opt;
  opt.tol = tol;
  return solve_soc_sdp(inst, opt);
}

SdpSolution solve_soc_sdp(const Instance& inst, const SolverOptions& opt) {
  if (!(opt.tol > 0.0)) throw ArgumentError("solver tolerance must be positive");
  const int n = inst.size();
  if (inst.total_weight() + inst.total_field() <= 0.0) {
    SdpSolution sol = repair_feasibility(Eigen::VectorXd::Zero(n), Eigen::MatrixXd::Identity(n, n), inst);
    return sol;
  }

  SplittingSolver solver(inst, opt);
  const bool converged = solver.run();

  // The constraints see x_i only through x_i^2: |x_i| can only help the objective,
  // and a field-free vertex gains nothing from x_i != 0.
  Eigen::VectorXd x = solver.x().cwiseAbs();
  for (int i = 0; i < n; ++i) {
    if (inst.fields()[i] == 0.0) x(i) = 0.0;
  }
  SdpSolution sol = repair_feasibility(x, solver.C(), inst);
  sol.primal_residual = solver.primal();
  sol.dual_residual = solver.dual();
  sol.iterations = solver.iterations();
  if (!converged) {
    throw SolverError("SOC-SDP splitting did not converge in " + std::to_string(opt.max_iterations) +
                          " iterations (primal " + std::to_string(sol.primal_residual) + ", dual " +
                          std::to_string(sol.dual_residual) + ")",
                      std::move(sol));
  }
  return sol;
}

}  // namespace tfim
