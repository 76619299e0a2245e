#include "tfim/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "tfim/errors.hpp"
#include "tfim/rng.hpp"

namespace tfim {

namespace {

void check_cap(int n, int cap) {
  if (n > cap) {
    throw LimitError("n = " + std::to_string(n) + " exceeds the dense diagonalization cap of " +
                     std::to_string(cap) + " qubits");
  }
}

// Z eigenvalue (+1 for |0>, -1 for |1>) of qubit i in basis state b, qubit 0 = MSB.
inline int z_sign(std::uint64_t b, int i, int n) {
  return ((b >> (n - 1 - i)) & 1U) ? -1 : 1;
}

}  // namespace

DenseHamiltonian build_hamiltonian(const Instance& inst, int cap) {
  const int n = inst.size();
  check_cap(n, cap);
  const std::uint64_t dim = std::uint64_t{1} << n;
  DenseHamiltonian hd{n, Eigen::MatrixXd::Zero(dim, dim)};
  const double half_h = 0.5 * inst.total_field();
  for (std::uint64_t b = 0; b < dim; ++b) {
    double diag = half_h;
    for (const Edge& e : inst.edges()) {
      diag += 0.5 * e.w * (1.0 - e.J * z_sign(b, e.u, n) * z_sign(b, e.v, n));
    }
    hd.data(b, b) = diag;
    for (int i = 0; i < n; ++i) {
      hd.data(b, b ^ (std::uint64_t{1} << (n - 1 - i))) += 0.5 * inst.fields()[i];
    }
  }
  return hd;
}

Eigen::MatrixXd build_ising_hamiltonian(const Instance& inst, int cap) {
  const int n = inst.size();
  check_cap(n, cap);
  const std::uint64_t dim = std::uint64_t{1} << n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  for (std::uint64_t b = 0; b < dim; ++b) {
    double diag = 0.0;
    for (const Edge& e : inst.edges()) diag += e.w * e.J * z_sign(b, e.u, n) * z_sign(b, e.v, n);
    h(b, b) = diag;
    for (int i = 0; i < n; ++i) {
      h(b, b ^ (std::uint64_t{1} << (n - 1 - i))) -= inst.fields()[i];
    }
  }
  return h;
}

TopEigenpair lambda_max(const DenseHamiltonian& hd) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(hd.data);
  const Eigen::Index top = hd.data.rows() - 1;
  return {es.eigenvalues()(top), es.eigenvectors().col(top).normalized()};
}

Eigen::VectorXd spectrum(const DenseHamiltonian& hd) {
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(hd.data, Eigen::EigenvaluesOnly).eigenvalues();
}

double lambda_min_ising(const Instance& inst, int cap) {
  const Eigen::MatrixXd h = build_ising_hamiltonian(inst, cap);
  return Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(h, Eigen::EigenvaluesOnly).eigenvalues()(0);
}

ProductEnergy evaluate_product_state(const Instance& inst, const BlochAssignment& state) {
  if (state.size() != static_cast<std::size_t>(inst.size())) {
    throw ArgumentError("Bloch assignment has " + std::to_string(state.size()) +
                        " vectors for an instance of " + std::to_string(inst.size()) + " qubits");
  }
  for (std::size_t i = 0; i < state.size(); ++i) {
    if (!(state[i].norm_squared() <= 1.0 + 1e-12)) {
      throw ArgumentError("Bloch vector " + std::to_string(i) + " has norm greater than 1");
    }
  }
  ProductEnergy out;
  out.edge_terms.reserve(inst.edges().size());
  for (const Edge& e : inst.edges()) {
    const double term = 0.5 * e.w * (1.0 - e.J * state[e.u].z * state[e.v].z);
    out.edge_terms.push_back(term);
    out.total += term;
  }
  out.field_terms.reserve(state.size());
  for (std::size_t i = 0; i < state.size(); ++i) {
    const double term = 0.5 * inst.fields()[i] * (1.0 + state[i].x);
    out.field_terms.push_back(term);
    out.total += term;
  }
  return out;
}

Eigen::VectorXcd product_state_vector(const BlochAssignment& state) {
  Eigen::VectorXcd psi = Eigen::VectorXcd::Ones(1);
  for (std::size_t i = 0; i < state.size(); ++i) {
    const BlochVector& r = state[i];
    if (std::abs(r.norm_squared() - 1.0) > 1e-9) {
      throw ArgumentError("Bloch vector " + std::to_string(i) + " is not pure");
    }
    Eigen::Vector2cd q;
    if (1.0 + r.z < 1e-15) {
      q << 0.0, 1.0;
    } else {
      const double a = std::sqrt(0.5 * (1.0 + r.z));
      q << a, std::complex<double>(r.x, r.y) / std::sqrt(2.0 * (1.0 + r.z));
    }
    Eigen::VectorXcd next(psi.size() * 2);
    for (Eigen::Index k = 0; k < psi.size(); ++k) {
      next(2 * k) = psi(k) * q(0);
      next(2 * k + 1) = psi(k) * q(1);
    }
    psi = std::move(next);
  }
  return psi;
}

double expectation(const Eigen::MatrixXd& h, const Eigen::VectorXcd& psi) {
  const Eigen::VectorXcd hpsi = h.cast<std::complex<double>>() * psi;
  return psi.dot(hpsi).real();
}

namespace {

struct AngleObjective {
  const Instance& inst;

  double value(const std::vector<double>& theta) const {
    double f = 0.0;
    for (const Edge& e : inst.edges()) {
      f += 0.5 * e.w * (1.0 - e.J * std::sin(theta[e.u]) * std::sin(theta[e.v]));
    }
    for (std::size_t i = 0; i < theta.size(); ++i) f += 0.5 * inst.fields()[i] * (1.0 + std::cos(theta[i]));
    return f;
  }

  void gradient(const std::vector<double>& theta, std::vector<double>& g) const {
    for (std::size_t i = 0; i < theta.size(); ++i) g[i] = -0.5 * inst.fields()[i] * std::sin(theta[i]);
    for (const Edge& e : inst.edges()) {
      g[e.u] -= 0.5 * e.w * e.J * std::cos(theta[e.u]) * std::sin(theta[e.v]);
      g[e.v] -= 0.5 * e.w * e.J * std::sin(theta[e.u]) * std::cos(theta[e.v]);
    }
  }
};

constexpr double kHalfPi = std::numbers::pi / 2.0;

void project_angles(std::vector<double>& theta) {
  for (double& t : theta) t = std::clamp(t, -kHalfPi, kHalfPi);
}

// Projected gradient ascent with backtracking; returns the final objective.
double ascend(const AngleObjective& obj, std::vector<double>& theta) {
  const std::size_t n = theta.size();
  std::vector<double> grad(n), trial(n);
  double f = obj.value(theta);
  double step = 1.0;
  for (int iter = 0; iter < 20000; ++iter) {
    obj.gradient(theta, grad);
    bool accepted = false;
    double moved = 0.0;
    while (step > 1e-14) {
      for (std::size_t i = 0; i < n; ++i) trial[i] = theta[i] + step * grad[i];
      project_angles(trial);
      double decrease_model = 0.0;
      moved = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double d = trial[i] - theta[i];
        decrease_model += grad[i] * d;
        moved += d * d;
      }
      const double ft = obj.value(trial);
      if (ft >= f + 1e-4 * decrease_model) {
        theta.swap(trial);
        f = ft;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted || moved < 1e-26) break;
    step = std::min(step * 2.0, 16.0);
  }
  return f;
}

}  // namespace

std::vector<ProductOptimum> product_local_optima(const Instance& inst, int restarts,
                                                 std::uint64_t seed) {
  const AngleObjective obj{inst};
  const std::size_t n = static_cast<std::size_t>(inst.size());
  std::vector<ProductOptimum> out;
  out.reserve(static_cast<std::size_t>(std::max(restarts, 1)));
  for (int r = 0; r < std::max(restarts, 1); ++r) {
    auto rng = make_stream(seed, static_cast<std::uint64_t>(r));
    std::uniform_real_distribution<double> angle(-kHalfPi, kHalfPi);
    std::vector<double> theta(n);
    for (double& t : theta) t = angle(rng);
    ascend(obj, theta);
    ProductOptimum opt;
    opt.state.reserve(n);
    for (double t : theta) opt.state.push_back({std::cos(t), 0.0, std::sin(t)});
    opt.value = evaluate_product_state(inst, opt.state).total;
    out.push_back(std::move(opt));
  }
  return out;
}

ProductOptimum optimize_product_state(const Instance& inst, int restarts, std::uint64_t seed) {
  std::vector<ProductOptimum> all = product_local_optima(inst, restarts, seed);
  std::size_t best = 0;
  for (std::size_t k = 1; k < all.size(); ++k) {
    if (all[k].value > all[best].value) best = k;
  }
  return std::move(all[best]);
}

}  // namespace tfim
