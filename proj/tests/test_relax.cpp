#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "tfim/exact.hpp"
#include "tfim/relax.hpp"

using namespace tfim;

namespace {

// Optimum of the relaxation on a uniform triangle (J = +1, unit weights, field g),
// restricted to the symmetric slice x_i = x, c_ij = c. The program is concave and
// invariant under the vertex permutations, so the slice contains an optimum.
// PSD with equal off-diagonals means c in [-1/2, 1]; the disk gives x <= sqrt(1 - c^2).
double triangle_grid_oracle(double g) {
  double best = -1.0;
  const int steps = 200000;
  for (int k = 0; k <= steps; ++k) {
    const double c = -0.5 + 1.5 * k / steps;
    const double x = std::sqrt(std::max(0.0, 1.0 - c * c));
    best = std::max(best, 1.5 * (1.0 - c) + 1.5 * g * (1.0 + x));
  }
  return best;
}

void check_feasible(const SdpSolution& s, const Instance& inst) {
  const int n = inst.size();
  REQUIRE(s.x.size() == n);
  REQUIRE(s.C.rows() == n);
  CHECK((s.C - s.C.transpose()).cwiseAbs().maxCoeff() == 0.0);
  for (int i = 0; i < n; ++i) {
    CHECK(s.C(i, i) == 1.0);
    CHECK(std::abs(s.x(i)) <= 1.0);
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.C, Eigen::EigenvaluesOnly);
  CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
  for (const Edge& e : inst.edges()) {
    const double c = s.C(e.u, e.v);
    CHECK(s.x(e.u) * s.x(e.u) + c * c <= 1.0);
    CHECK(s.x(e.v) * s.x(e.v) + c * c <= 1.0);
  }
  // Gram rows reproduce C.
  CHECK((s.grams * s.grams.transpose() - s.C).cwiseAbs().maxCoeff() < 1e-6);
}

void check_decomposition(const SdpSolution& s, const Instance& inst) {
  double edges = 0.0, fields = 0.0;
  for (std::size_t k = 0; k < inst.edges().size(); ++k) {
    const Edge& e = inst.edges()[k];
    const double term = 0.5 * e.w * (1.0 - e.J * s.C(e.u, e.v));
    CHECK(s.edge_terms[k] == doctest::Approx(term).epsilon(1e-14));
    CHECK(s.signed_correlation(inst, k) == doctest::Approx(-e.J * s.C(e.u, e.v)));
    edges += term;
  }
  for (int i = 0; i < inst.size(); ++i) {
    const double term = 0.5 * inst.fields()[i] * (1.0 + s.x(i));
    CHECK(s.field_terms[i] == doctest::Approx(term).epsilon(1e-14));
    fields += term;
  }
  CHECK(s.objective == doctest::Approx(edges + fields).epsilon(1e-13));
  CHECK(s.edge_value() + s.field_value() == doctest::Approx(s.objective).epsilon(1e-13));
}

struct Reference {
  Instance inst;
  double value;
};

// Optima computed independently with an interior-point conic solver.
std::vector<Reference> references() {
  std::vector<Reference> out;
  out.push_back({Instance(4,
                          {{0, 1, 0.7, 1}, {1, 2, 1.0, -1}, {2, 3, 0.4, 1}, {0, 3, 0.9, 1},
                           {0, 2, 0.5, -1}},
                          {0.3, 0.8, 0.1, 0.6}),
                 4.370770676221638});
  out.push_back({Instance(5,
                          {{0, 1, 1.0, 1}, {0, 2, 0.8, -1}, {0, 3, 0.6, 1}, {0, 4, 0.3, 1},
                           {1, 2, 0.9, 1}, {1, 3, 0.2, -1}, {1, 4, 0.75, 1}, {2, 3, 1.0, 1},
                           {2, 4, 0.4, -1}, {3, 4, 0.55, 1}},
                          {0.2, 0.9, 0.5, 0.0, 1.1}),
                 7.908484242143836});
  std::vector<Edge> ring;
  for (int i = 0; i < 6; ++i) ring.push_back({i, (i + 1) % 6, 1.0, 1});
  ring.push_back({0, 3, 0.5, -1});
  out.push_back({Instance(6, ring, std::vector<double>(6, 0.4)), 7.66047639458492});
  return out;
}

}  // namespace

TEST_CASE("field-only instance saturates the box") {
  const Instance inst(3, {}, {1.0, 0.5, 2.0});
  const SdpSolution s = solve_soc_sdp(inst);
  for (int i = 0; i < 3; ++i) CHECK(s.x(i) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.objective == doctest::Approx(3.5).epsilon(1e-7));
  check_feasible(s, inst);
}

TEST_CASE("single antiferromagnetic edge") {
  const Instance inst(2, {{0, 1, 1.0, 1}}, {0.0, 0.0});
  const SdpSolution s = solve_soc_sdp(inst);
  CHECK(s.objective == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s.C(0, 1) == doctest::Approx(-1.0).epsilon(1e-5));
  // No field, no reason to leave the equator.
  CHECK(s.x(0) == 0.0);
  CHECK(s.x(1) == 0.0);
}

TEST_CASE("triangle matches the symmetric oracle") {
  for (double g : {0.0, 0.3, 0.6, 1.0, 2.0}) {
    CAPTURE(g);
    const Instance tri = triangle_instance(g);
    const SdpSolution s = solve_soc_sdp(tri);
    const double budget = 1e-7 * (tri.total_weight() + tri.total_field());
    CHECK(std::abs(s.objective - triangle_grid_oracle(g)) <= budget + 1e-9);
    check_feasible(s, tri);
  }
  CHECK(triangle_grid_oracle(0.6) == doctest::Approx(2.25 + 0.9 + 0.45 * std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("frozen reference optima") {
  for (const Reference& r : references()) {
    const SdpSolution s = solve_soc_sdp(r.inst);
    const double scale = r.inst.total_weight() + r.inst.total_field();
    CHECK(std::abs(s.objective - r.value) <= 1e-6 * scale);
    check_feasible(s, r.inst);
    check_decomposition(s, r.inst);
  }
}

TEST_CASE("degenerate and invalid solver calls") {
  const Instance empty(2, {}, {0.0, 0.0});
  const SdpSolution s = solve_soc_sdp(empty);
  CHECK(s.objective == 0.0);
  CHECK(s.C == Eigen::MatrixXd::Identity(2, 2));
  CHECK(s.x == Eigen::VectorXd::Zero(2));

  CHECK_THROWS_AS(solve_soc_sdp(triangle_instance(), 0.0), ArgumentError);

  SolverOptions opts;
  opts.max_iterations = 2;
  const Instance k5 = references()[1].inst;
  try {
    solve_soc_sdp(k5, opts);
    FAIL("expected SolverError");
  } catch (const SolverError& e) {
    check_feasible(e.best(), k5);
    CHECK(e.best().iterations == 2);
  }
}

TEST_CASE("gram vectors") {
  const Eigen::MatrixXd eye = gram_vectors(Eigen::MatrixXd::Identity(3, 3));
  CHECK((eye * eye.transpose() - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-14);

  const Eigen::MatrixXd ones = gram_vectors(Eigen::MatrixXd::Ones(3, 3));
  CHECK(ones.cols() == 1);
  CHECK(ones(0, 0) == doctest::Approx(ones(1, 0)));
  CHECK(std::abs(ones(0, 0)) == doctest::Approx(1.0));

  Eigen::Matrix2d anti;
  anti << 1, -1, -1, 1;
  const Eigen::MatrixXd a = gram_vectors(anti);
  CHECK(a.cols() == 1);
  CHECK(a(0, 0) == doctest::Approx(-a(1, 0)));

  Eigen::Matrix2d bad;
  bad << 1, 2, 2, 1;
  CHECK_THROWS_AS(gram_vectors(bad), VerificationError);
}

TEST_CASE("repair restores the disk constraint") {
  const Instance inst(2, {{0, 1, 1.0, 1}}, {1.0, 1.0});
  Eigen::Matrix2d C;
  C << 1, 0.1, 0.1, 1;
  const SdpSolution s = repair_feasibility(Eigen::Vector2d(1.0, 1.0), C, inst);
  CHECK(s.C == C);
  CHECK(s.x(0) == doctest::Approx(std::sqrt(0.99)).epsilon(1e-15));
  CHECK(s.x(0) * s.x(0) + 0.01 <= 1.0);
  check_feasible(s, inst);
}

TEST_CASE("repair is idempotent and gentle") {
  const Reference r = references()[2];
  const SdpSolution s = solve_soc_sdp(r.inst);
  const SdpSolution again = repair_feasibility(s.x, s.C, r.inst);
  CHECK(again.x == s.x);
  CHECK(again.C == s.C);
  CHECK(again.objective == s.objective);

  // Push C slightly out of the cone along its softest direction.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s.C);
  const Eigen::VectorXd v = eig.eigenvectors().col(0);
  const Eigen::MatrixXd bent = s.C - (eig.eigenvalues()(0) + 1e-4) * v * v.transpose();
  const SdpSolution fixed = repair_feasibility(s.x, bent, r.inst);
  check_feasible(fixed, r.inst);
  CHECK((fixed.C - s.C).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("property: relaxation bounds the spectrum and stays feasible") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const int n = 3 + static_cast<int>(seed % 6);
    const Instance inst = erdos_renyi_instance(n, 0.5, 0.5, 1.0, 100 + seed);
    const SdpSolution s = solve_soc_sdp(inst);
    const double top = lambda_max(build_hamiltonian(inst)).value;
    CHECK(s.objective >= top - 1e-7 * (inst.total_weight() + inst.total_field()));
    check_feasible(s, inst);
    check_decomposition(s, inst);
  }
}
