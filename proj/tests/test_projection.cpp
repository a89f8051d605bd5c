#include <doctest.h>

#include <cmath>
#include <string>

#include "l1inf/oracle.hpp"
#include "l1inf/projection.hpp"
#include "support.hpp"

using namespace l1inf;

namespace {

const DenseMatrix kIdentity = DenseMatrix::from_rows({{1, 0}, {0, 1}});

std::string name(Algorithm a) { return std::string(to_string(a)); }

void check_kkt(const DenseMatrix& y, double radius, const ProjectionOutput& out) {
  const DenseMatrix mag = sign_decompose(y).magnitudes;
  const DenseMatrix xabs = sign_decompose(out.X).magnitudes;
  double mu_total = 0.0;
  for (std::size_t j = 0; j < y.cols(); ++j) {
    mu_total += out.mu[j];
    if (out.active[j]) {
      double removed = 0.0;
      for (std::size_t i = 0; i < y.rows(); ++i) removed += mag(i, j) - xabs(i, j);
      CHECK(std::abs(removed - out.theta) <= 1e-9);
      CHECK(out.mu[j] > 0.0);
    } else {
      CHECK(testing::column_abs_sum(y, j) <= out.theta + 1e-9);
      CHECK(out.mu[j] == 0.0);
      for (double v : out.X.column(j)) CHECK(v == 0.0);
    }
  }
  CHECK(std::abs(mu_total - radius) <= 1e-9);
}

}  // namespace

TEST_CASE("identity example, every algorithm") {
  for (Algorithm a : kAllAlgorithms) {
    CAPTURE(name(a));
    const auto out = project_ball_l1inf(kIdentity, 1.0, a);
    CHECK(testing::max_abs_diff(out.X, DenseMatrix::from_rows({{0.5, 0}, {0, 0.5}})) <= 1e-15);
    CHECK(out.theta == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(out.mu[0] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(out.mu[1] == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(out.stats.K + out.stats.J == 4);
  }
  // The converged state recovers the same caps.
  ThetaState state(2, 1.0);
  state.activate(0, 1.0, 1);
  state.activate(1, 1.0, 1);
  const auto rec = recover_solution(kIdentity, state.update_theta(), state);
  CHECK(rec.mu == std::vector<double>{0.5, 0.5});
}

TEST_CASE("inside the ball returns the input") {
  const auto y = DenseMatrix::from_rows({{0.4, -0.2}, {-0.1, 0.5}});  // norm 0.9
  for (Algorithm a : kAllAlgorithms) {
    const auto out = project_ball_l1inf(y, 1.0, a);
    CHECK(out.X == y);
    CHECK(out.theta == 0.0);
    CHECK(out.active == std::vector<unsigned char>{1, 1});
    CHECK(out.stats.K + out.stats.J == 4);
  }
  const auto ones = DenseMatrix::from_rows({{1, 1}, {1, 1}});  // norm exactly 2
  CHECK(project_ball_l1inf(ones, 2.0).X == ones);
}

TEST_CASE("zero radius gives the zero matrix") {
  SplitMix64 rng(41);
  const auto y = testing::random_matrix(rng, 4, 3);
  for (Algorithm a : kAllAlgorithms) {
    const auto out = project_ball_l1inf(y, 0.0, a);
    CHECK(out.X == DenseMatrix(4, 3));
    CHECK(out.active == std::vector<unsigned char>(3, 0));
    CHECK(out.mu == std::vector<double>(3, 0.0));
    CHECK(out.stats.K + out.stats.J == 12);
  }
}

TEST_CASE("negative or non-finite radius is rejected") {
  CHECK_THROWS_AS(project_ball_l1inf(kIdentity, -1.0), std::invalid_argument);
  CHECK_THROWS_AS(project_ball_l1inf(kIdentity, std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(prox_linf_l1(kIdentity, 0.0), std::invalid_argument);
}

TEST_CASE("direct entry points enforce their preconditions") {
  const auto signed_y = DenseMatrix::from_rows({{1, -1}});
  CHECK_THROWS_AS(naive_projection(signed_y, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(total_order_projection(kIdentity, 2.0), std::invalid_argument);
  CHECK_THROWS_AS(inverse_total_order_projection(kIdentity, 0.0), std::invalid_argument);
  CHECK(inverse_total_order_projection(kIdentity, 1.0).theta == doctest::Approx(0.5));
}

TEST_CASE("single column caps the column at the radius") {
  const auto y = DenseMatrix::from_rows({{3}, {1}});
  for (Algorithm a : kAllAlgorithms) {
    const auto out = project_ball_l1inf(y, 2.0, a);
    CHECK(testing::max_abs_diff(out.X, DenseMatrix::from_rows({{2}, {1}})) <= 1e-15);
    CHECK(out.theta == doctest::Approx(1.0));
    CHECK(out.mu[0] == doctest::Approx(2.0));
  }
}

TEST_CASE("one dominant column zeroes the others") {
  SplitMix64 rng(42);
  for (int t = 0; t < 200; ++t) {
    auto y = testing::random_matrix(rng, 3, 3, 0.0, 0.2);
    for (std::size_t i = 0; i < 3; ++i) y(i, t % 3) = 1.0 + rng.next_double();
    const double radius = 0.05;
    const auto ref = oracle_project_ball(y, radius);
    for (Algorithm a : kAllAlgorithms) {
      const auto out = project_ball_l1inf(y, radius, a);
      CHECK(testing::max_abs_diff(out.X, ref) <= 1e-9);
      for (std::size_t j = 0; j < 3; ++j) {
        const bool zero_ref = std::all_of(ref.column(j).begin(), ref.column(j).end(),
                                          [](double v) { return v == 0.0; });
        CHECK(zero_ref == !out.active[j]);
      }
    }
  }
}

TEST_CASE("all algorithms match the bisection reference on grid matrices") {
  SplitMix64 rng(43);
  std::size_t compared = 0;
  for (int t = 0; t < 1200; ++t) {
    const std::size_t n = testing::between(rng, 1, 12);
    const std::size_t m = testing::between(rng, 1, 12);
    const auto y = testing::grid_matrix(rng, n, m, t % 2 == 1);
    const double norm = norm_l1_inf(y);
    const double radius = (norm > 0 ? norm : 1.0) * 1.5 * (1.0 - rng.next_double());
    const auto ref = oracle_project_ball(y, radius);
    for (Algorithm a : kAllAlgorithms) {
      CAPTURE(name(a));
      CAPTURE(t);
      const auto out = project_ball_l1inf(y, radius, a);
      REQUIRE(testing::max_abs_diff(out.X, ref) <= 1e-9);
      CHECK(out.stats.K + out.stats.J == n * m);
      ++compared;
    }
  }
  CHECK(compared == 3600);
}

TEST_CASE("degenerate shapes match the reference") {
  SplitMix64 rng(44);
  for (int t = 0; t < 300; ++t) {
    const bool row = t % 2 == 0;
    const std::size_t len = testing::between(rng, 1, 40);
    const auto y = row ? testing::random_matrix(rng, 1, len) : testing::random_matrix(rng, len, 1);
    const double radius = norm_l1_inf(y) * rng.next_double() + 1e-6;
    const auto ref = oracle_project_ball(y, radius);
    for (Algorithm a : kAllAlgorithms) {
      CHECK(testing::max_abs_diff(project_ball_l1inf(y, radius, a).X, ref) <= 1e-9);
    }
  }
}

TEST_CASE("all-zero columns stay exactly zero and inactive") {
  auto y = DenseMatrix::from_rows({{0, 1, 0}, {0, 0.5, 0}, {0, 0.2, 0}});
  for (Algorithm a : kAllAlgorithms) {
    const auto out = project_ball_l1inf(y, 0.5, a);
    CHECK(out.active == std::vector<unsigned char>{0, 1, 0});
    for (std::size_t j : {0u, 2u}) {
      for (double v : out.X.column(j)) CHECK(v == 0.0);
    }
  }
}

TEST_CASE("KKT conditions, feasibility, signs and dominance") {
  SplitMix64 rng(45);
  for (int t = 0; t < 300; ++t) {
    const auto y = testing::random_matrix(rng, testing::between(rng, 1, 30),
                                          testing::between(rng, 1, 30));
    const double norm = norm_l1_inf(y);
    const double radius = norm * (1.0 - rng.next_double());
    for (Algorithm a : kAllAlgorithms) {
      CAPTURE(name(a));
      const auto out = project_ball_l1inf(y, radius, a);
      CHECK(out.theta >= 0.0);
      CHECK(norm_l1_inf(out.X) <= radius + 1e-9);
      CHECK(std::abs(norm_l1_inf(out.X) - radius) <= 1e-9);
      check_kkt(y, radius, out);
      for (std::size_t k = 0; k < y.size(); ++k) {
        const double xv = out.X.values()[k];
        const double yv = y.values()[k];
        CHECK(xv * yv >= 0.0);
        CHECK(std::abs(xv) <= std::abs(yv));
      }
    }
  }
}

TEST_CASE("theta trace is nondecreasing") {
  SplitMix64 rng(46);
  ProjectionOptions opts;
  opts.trace_theta = true;
  for (int t = 0; t < 200; ++t) {
    const auto y = testing::random_matrix(rng, testing::between(rng, 1, 25),
                                          testing::between(rng, 1, 25), 0.0, 1.0);
    const double radius = norm_l1_inf(y) * (1.0 - rng.next_double());
    for (Algorithm a : kAllAlgorithms) {
      CAPTURE(name(a));
      const auto out = project_ball_l1inf(y, radius, a, opts);
      REQUIRE(!out.theta_trace.empty());
      for (std::size_t k = 1; k < out.theta_trace.size(); ++k) {
        CHECK(out.theta_trace[k] >= out.theta_trace[k - 1]);
      }
    }
  }
}

TEST_CASE("Moreau identity holds exactly") {
  SplitMix64 rng(47);
  for (int t = 0; t < 100; ++t) {
    const auto y = testing::random_matrix(rng, testing::between(rng, 1, 20),
                                          testing::between(rng, 1, 20));
    const double radius = norm_l1_inf(y) * 1.2 * (1.0 - rng.next_double());
    const auto prox = prox_linf_l1(y, radius);
    const auto proj = project_ball_l1inf(y, radius);
    for (std::size_t k = 0; k < y.size(); ++k) {
      CHECK(std::abs(prox.values()[k] + proj.X.values()[k] - y.values()[k]) <= 1e-12);
    }
  }
}

TEST_CASE("prox examples") {
  CHECK(testing::max_abs_diff(prox_linf_l1(kIdentity, 1.0),
                              DenseMatrix::from_rows({{0.5, 0}, {0, 0.5}})) <= 1e-15);
  const auto small = DenseMatrix::from_rows({{0.1, -0.2}});
  CHECK(prox_linf_l1(small, 1.0) == DenseMatrix(1, 2));
}

TEST_CASE("idempotence and nonexpansiveness") {
  SplitMix64 rng(48);
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = testing::between(rng, 1, 20);
    const std::size_t m = testing::between(rng, 1, 20);
    const auto y1 = testing::random_matrix(rng, n, m);
    const auto y2 = testing::random_matrix(rng, n, m);
    const double radius = 0.5 * norm_l1_inf(y1) * rng.next_double() + 1e-3;
    for (Algorithm a : kAllAlgorithms) {
      const auto p1 = project_ball_l1inf(y1, radius, a).X;
      const auto p2 = project_ball_l1inf(y2, radius, a).X;
      CHECK(testing::max_abs_diff(project_ball_l1inf(p1, radius, a).X, p1) <= 1e-12);
      CHECK(frobenius_distance(p1, p2) <= frobenius_distance(y1, y2) + 1e-9);
    }
  }
}

TEST_CASE("sparsity and theta are monotone in the radius") {
  SplitMix64 rng(49);
  for (int t = 0; t < 20; ++t) {
    const auto y = testing::random_matrix(rng, 30, 30, 0.0, 1.0);
    double prev_sparsity = 1.0;
    double prev_theta = INFINITY;
    for (double radius = 0.01; radius < norm_l1_inf(y); radius *= 1.5) {
      const auto out = project_ball_l1inf(y, radius);
      const double s = sparsity_report(out.X).entry_sparsity;
      CHECK(s <= prev_sparsity);
      CHECK(out.theta <= prev_theta);
      prev_sparsity = s;
      prev_theta = out.theta;
    }
  }
}

TEST_CASE("uniform 1000x1000 at radius 1 is sparse with small J") {
  const auto y = gen_uniform_matrix(1000, 1000, 1);
  ProjectionOptions opts;
  opts.verify_accumulators = true;
  const auto out = project_ball_l1inf(y, 1.0, Algorithm::inverse_total_order, opts);
  const auto ref = theta_by_bisection(y, 1.0);
  CHECK(out.theta == doctest::Approx(ref.theta).epsilon(1e-12));
  CHECK(testing::max_abs_diff(out.X, ref.X) <= 1e-9);
  CHECK(sparsity_report(out.X).entry_sparsity > 0.5);
  CHECK(static_cast<double>(out.stats.J) / 1e6 < 0.10);
  CHECK(out.stats.K + out.stats.J == 1000000u);
  // Incremental accumulators stay close to exact recomputation.
  CHECK(out.stats.accumulator_drift <= 1e-6);
}

TEST_CASE("accumulator drift bound across the radius range") {
  const auto y = gen_uniform_matrix(1000, 1000, 7);
  ProjectionOptions opts;
  opts.verify_accumulators = true;
  for (double radius : {1e-3, 0.1, 8.0, 100.0}) {
    for (Algorithm a : {Algorithm::total_order, Algorithm::inverse_total_order}) {
      CAPTURE(radius);
      CAPTURE(name(a));
      CHECK(project_ball_l1inf(y, radius, a, opts).stats.accumulator_drift <= 1e-6);
    }
  }
}
