#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "tfim/rounding.hpp"

using namespace tfim;

namespace {

Instance mixed_instance() {
  return Instance(4,
                  {{0, 1, 0.7, 1}, {1, 2, 1.0, -1}, {2, 3, 0.4, 1}, {0, 3, 0.9, 1}, {0, 2, 0.5, -1}},
                  {0.3, 0.8, 0.1, 0.6});
}

double arcsine_law(double t) { return 2.0 / std::numbers::pi * std::asin(t); }

double edge_energy(const Edge& e, const BlochAssignment& s) {
  return 0.5 * e.w * (1.0 - e.J * s[e.u].z * s[e.v].z);
}

}  // namespace

TEST_CASE("hyperplane signs") {
  Eigen::MatrixXd opposite(2, 2);
  opposite << 1, 0, -1, 0;
  Eigen::MatrixXd same(2, 2);
  same << 0.6, 0.8, 0.6, 0.8;
  for (std::uint64_t t = 0; t < 50; ++t) {
    auto r1 = make_stream(3, t);
    const auto s = hyperplane_signs(opposite, r1);
    CHECK(s[0] == -s[1]);
    auto r2 = make_stream(3, t);
    const auto u = hyperplane_signs(same, r2);
    CHECK(u[0] == u[1]);
  }
  // No directions at all: every projection is zero and rounds to +1.
  auto rng = make_stream(1, 0);
  const auto flat = hyperplane_signs(Eigen::MatrixXd::Zero(3, 0), rng);
  CHECK(flat == std::vector<int>{1, 1, 1});
}

TEST_CASE("sign correlations follow the arcsine law") {
  const int samples = 200000;
  for (double t : {-0.9, -0.3, 0.0, 0.5, 0.95}) {
    Eigen::MatrixXd u(2, 2);
    u << 1, 0, t, std::sqrt(1 - t * t);
    double sum = 0.0;
    for (int k = 0; k < samples; ++k) {
      auto rng = make_stream(11, static_cast<std::uint64_t>(k));
      const auto s = hyperplane_signs(u, rng);
      sum += s[0] * s[1];
    }
    CHECK(std::abs(sum / samples - arcsine_law(t)) < 4.0 / std::sqrt(samples));
  }
}

TEST_CASE("algorithm shapes") {
  const Instance inst = mixed_instance();
  const SdpSolution sdp = solve_soc_sdp(inst);
  const RoundingOutcome a = algorithm_a(inst, sdp, 5, 2);
  const RoundingOutcome b = algorithm_b(inst, sdp, 5, 2);
  const RoundingOutcome c = algorithm_c(inst, sdp, 0.6312, 5, 2);
  CHECK(a.algo == Algorithm::AlgA);
  CHECK(a.seed == 5);
  CHECK(a.trial == 2);
  for (int i = 0; i < inst.size(); ++i) {
    CHECK(a.state[i].x == 0.0);
    CHECK(std::abs(a.state[i].z) == 1.0);
    CHECK(b.state[i].x == sdp.x(i));
    CHECK(c.state[i].x == doctest::Approx(0.6312 * sdp.x(i)));
    // All three share the hyperplane.
    CHECK(std::signbit(a.state[i].z) == std::signbit(b.state[i].z));
    CHECK(std::signbit(a.state[i].z) == std::signbit(c.state[i].z));
    for (const RoundingOutcome* r : {&a, &b, &c}) {
      CHECK(r->state[i].y == 0.0);
      CHECK(r->state[i].norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
    }
  }
  CHECK(a.value == evaluate_product_state(inst, a.state).total);
}

TEST_CASE("interpolation on a saturated marginal") {
  const Instance inst(1, {}, {1.0});
  const SdpSolution sdp = solve_soc_sdp(inst);
  REQUIRE(sdp.x(0) == doctest::Approx(1.0).epsilon(1e-6));
  const RoundingOutcome c = algorithm_c(inst, sdp, 0.6312, 1, 0);
  CHECK(c.state[0].x == doctest::Approx(0.6312).epsilon(1e-6));
  CHECK(std::abs(c.state[0].z) == doctest::Approx(std::sqrt(1 - 0.6312 * 0.6312)).epsilon(1e-5));
  CHECK_THROWS_AS(algorithm_c(inst, sdp, 1.5, 1, 0), ArgumentError);
  CHECK_THROWS_AS(algorithm_c(inst, sdp, -0.1, 1, 0), ArgumentError);
}

TEST_CASE("interpolation endpoints reproduce A and B") {
  const Instance inst = mixed_instance();
  const SdpSolution sdp = solve_soc_sdp(inst);
  for (std::uint64_t t = 0; t < 20; ++t) {
    const RoundingOutcome a = algorithm_a(inst, sdp, 9, t);
    const RoundingOutcome c0 = algorithm_c(inst, sdp, 0.0, 9, t);
    CHECK(c0.state == a.state);
    CHECK(c0.value == a.value);
    const RoundingOutcome b = algorithm_b(inst, sdp, 9, t);
    const RoundingOutcome c1 = algorithm_c(inst, sdp, 1.0, 9, t);
    CHECK(c1.state == b.state);
    CHECK(c1.value == b.value);
  }
}

TEST_CASE("warm-up candidates") {
  const Instance inst = mixed_instance();
  const RoundingOutcome f = warmup_field_state(inst);
  CHECK(f.value == doctest::Approx(0.5 * inst.total_weight() + inst.total_field()));
  for (const BlochVector& b : f.state) CHECK(b == BlochVector{1, 0, 0});

  // Ferromagnet without fields: the edge relaxation is rank one and rounding aligns everything.
  const Instance ferro(4, {{0, 1, 1.0, -1}, {1, 2, 0.5, -1}, {2, 3, 2.0, -1}, {0, 3, 1.5, -1}},
                       std::vector<double>(4, 0.0));
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const RoundingOutcome g = warmup_ising_state(ferro, seed);
    CHECK(g.algo == Algorithm::IsingGW);
    CHECK(g.value == doctest::Approx(ferro.total_weight()).epsilon(1e-12));
  }

  const SdpSolution edge = solve_edge_relaxation(inst);
  const RoundingOutcome g = warmup_ising_state(inst, edge, 2, 0);
  for (const BlochVector& b : g.state) {
    CHECK(b.x == 0.0);
    CHECK(std::abs(b.z) == 1.0);
  }
}

TEST_CASE("best_of") {
  RoundingOutcome a, b, c;
  a.algo = Algorithm::AlgC;
  a.value = 2.0;
  b.algo = Algorithm::AlgA;
  b.value = 2.0;
  c.algo = Algorithm::FieldOnly;
  c.value = 1.0;
  CHECK(best_of({a, b, c}).algo == Algorithm::AlgA);
  c.value = 2.0;
  CHECK(best_of({a, b, c}).algo == Algorithm::FieldOnly);
  a.value = 2.5;
  CHECK(best_of({a, b, c}).algo == Algorithm::AlgC);
  CHECK_THROWS_AS(best_of({}), ArgumentError);
}

TEST_CASE("trial summaries") {
  const Instance inst = mixed_instance();
  const SdpSolution sdp = solve_soc_sdp(inst);
  const TrialSummary one = run_trials(inst, sdp, Algorithm::AlgB, 1.0, 1, 4);
  CHECK(one.trials == 1);
  CHECK(one.stderr_mean == 0.0);
  CHECK(one.mean == one.best.value);
  CHECK(one.best.state == algorithm_b(inst, sdp, 4, 0).state);

  const TrialSummary field = run_trials(inst, sdp, Algorithm::FieldOnly, 0.0, 30, 4);
  CHECK(field.stderr_mean == 0.0);
  CHECK(field.mean == doctest::Approx(warmup_field_state(inst).value));

  const TrialSummary many = run_trials(inst, sdp, Algorithm::AlgA, 0.0, 4000, 4);
  double best = 0.0;
  for (int t = 0; t < 4000; ++t) best = std::max(best, algorithm_a(inst, sdp, 4, t).value);
  CHECK(many.best.value == best);
  CHECK(std::abs(many.mean - expected_value(inst, sdp, Algorithm::AlgA)) < 4 * many.stderr_mean);
  CHECK(run_trials(inst, sdp, Algorithm::AlgA, 0.0, 4000, 4).mean == many.mean);
  CHECK_THROWS_AS(run_trials(inst, sdp, Algorithm::AlgA, 0.0, 0, 4), ArgumentError);
}

TEST_CASE("property: field marginals and remaining Z budget") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    const Instance inst = erdos_renyi_instance(3 + static_cast<int>(seed % 6), 0.6, 0.5, 1.0, 40 + seed);
    const SdpSolution sdp = solve_soc_sdp(inst);
    const ProductEnergy a = evaluate_product_state(inst, algorithm_a(inst, sdp, seed).state);
    const ProductEnergy b = evaluate_product_state(inst, algorithm_b(inst, sdp, seed).state);
    for (int i = 0; i < inst.size(); ++i) {
      const double h = inst.fields()[i];
      CHECK(a.field_terms[i] == doctest::Approx(0.5 * h));
      CHECK(b.field_terms[i] == doctest::Approx(sdp.field_terms[i]).epsilon(1e-14));
    }
    for (std::size_t k = 0; k < inst.edges().size(); ++k) {
      const Edge& e = inst.edges()[k];
      const double t = sdp.signed_correlation(inst, k);
      const double au = std::sqrt(1 - sdp.x(e.u) * sdp.x(e.u));
      const double av = std::sqrt(1 - sdp.x(e.v) * sdp.x(e.v));
      CHECK(au * av >= t * t - 1e-15);
    }
  }
}

TEST_CASE("property: per-edge sample means match the closed form") {
  const Instance inst = erdos_renyi_instance(7, 0.6, 0.5, 1.0, 77);
  const SdpSolution sdp = solve_soc_sdp(inst);
  const int trials = 20000;
  for (Algorithm algo : {Algorithm::AlgA, Algorithm::AlgB}) {
    const double scale = algo == Algorithm::AlgB ? 1.0 : 0.0;
    std::vector<double> sum(inst.edges().size(), 0.0), sq(inst.edges().size(), 0.0);
    for (int t = 0; t < trials; ++t) {
      const RoundingOutcome r = algo == Algorithm::AlgA ? algorithm_a(inst, sdp, 8, t)
                                                        : algorithm_b(inst, sdp, 8, t);
      for (std::size_t k = 0; k < inst.edges().size(); ++k) {
        const double v = edge_energy(inst.edges()[k], r.state);
        sum[k] += v;
        sq[k] += v * v;
      }
    }
    for (std::size_t k = 0; k < inst.edges().size(); ++k) {
      const Edge& e = inst.edges()[k];
      const double xu = scale * sdp.x(e.u), xv = scale * sdp.x(e.v);
      const double expect = 0.5 * e.w *
                            (1 + std::sqrt(1 - xu * xu) * std::sqrt(1 - xv * xv) *
                                     arcsine_law(sdp.signed_correlation(inst, k)));
      const double mean = sum[k] / trials;
      const double sd = std::sqrt(std::max(0.0, sq[k] / trials - mean * mean));
      // Fifteen edges checked at once, so four standard errors rather than three.
      CHECK(std::abs(mean - expect) <= 4 * sd / std::sqrt(trials) + 1e-12);
    }
  }
}
