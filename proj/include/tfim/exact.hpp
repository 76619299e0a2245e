#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "tfim/instance.hpp"

namespace tfim {

/// Default qubit limit for dense construction (2^14 x 2^14 doubles).
inline constexpr int kDefaultQubitCap = 14;

/// Single-qubit Bloch vector; rho = (I + x X + y Y + z Z)/2.
struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm_squared() const noexcept { return x * x + y * y + z * z; }
  bool operator==(const BlochVector&) const = default;
};

/// A product state, one Bloch vector per qubit.
using BlochAssignment = std::vector<BlochVector>;

/// H_TFIM' = sum_e w_e (I - J_e Z_u Z_v)/2 + sum_i h_i (I + X_i)/2 in the
/// computational basis, qubit 0 as the most significant bit.
struct DenseHamiltonian {
  int n = 0;
  Eigen::MatrixXd data;
};

DenseHamiltonian build_hamiltonian(const Instance& inst, int cap = kDefaultQubitCap);

/// The minimization form sum_e w_e J_e Z_u Z_v - sum_i h_i X_i, same basis convention.
Eigen::MatrixXd build_ising_hamiltonian(const Instance& inst, int cap = kDefaultQubitCap);

struct TopEigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;  // unit norm
};

TopEigenpair lambda_max(const DenseHamiltonian& hd);

/// All eigenvalues, ascending.
Eigen::VectorXd spectrum(const DenseHamiltonian& hd);

/// Smallest eigenvalue of the minimization form.
double lambda_min_ising(const Instance& inst, int cap = kDefaultQubitCap);

struct ProductEnergy {
  double total = 0.0;
  std::vector<double> edge_terms;   // aligned with inst.edges()
  std::vector<double> field_terms;  // one per qubit
};

/// Closed-form Tr[H_TFIM' rho] for a product state. Throws ArgumentError for a
/// wrong-length assignment or a Bloch vector longer than 1 (+1e-12).
ProductEnergy evaluate_product_state(const Instance& inst, const BlochAssignment& state);

/// |psi> for a pure product state (each Bloch vector must have unit norm).
Eigen::VectorXcd product_state_vector(const BlochAssignment& state);

/// <psi| H |psi> for a real symmetric H.
double expectation(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi);

struct ProductOptimum {
  BlochAssignment state;
  double value = 0.0;
};

/// Multi-start projected-gradient ascent over one angle per qubit,
/// (x_i, z_i) = (cos t_i, sin t_i) with t_i in [-pi/2, pi/2] and y_i = 0.
/// Deterministic in (restarts, seed).
ProductOptimum optimize_product_state(const Instance& inst, int restarts, std::uint64_t seed);

/// The converged point of every restart, in restart order.
std::vector<ProductOptimum> product_local_optima(const Instance& inst, int restarts,
                                                 std::uint64_t seed);

}  // namespace tfim
