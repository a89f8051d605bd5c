#include "l1inf/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "l1inf/norms.hpp"
#include "l1inf/simplex.hpp"

namespace l1inf {

namespace {

constexpr std::size_t kMaxBisection = 200;
constexpr std::size_t kMaxKktSide = 6;

void require_oracle_input(const DenseMatrix& y, double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw std::invalid_argument("radius must be positive");
  const auto v = y.values();
  if (std::any_of(v.begin(), v.end(), [](double x) { return x < 0.0; })) {
    throw std::invalid_argument("oracle input must be nonnegative");
  }
  if (!(norm_l1_inf(y) > radius)) throw std::invalid_argument("oracle input lies inside the ball");
}

double column_sum(const DenseMatrix& y, std::size_t j) {
  const auto c = y.column(j);
  return std::accumulate(c.begin(), c.end(), 0.0);
}

// Closed-form theta for the supports that column simplex projections pick
// at `theta`.
double theta_from_supports(const DenseMatrix& y, double radius, double theta) {
  double num = 0.0;
  double den = 0.0;
  for (std::size_t j = 0; j < y.cols(); ++j) {
    if (column_sum(y, j) <= theta) continue;
    const double tau = project_simplex(y.column(j), theta).tau;
    double selected = 0.0;
    double k = 0.0;
    for (double v : y.column(j)) {
      if (v < tau) continue;
      selected += v;
      k += 1.0;
    }
    num += selected / k;
    den += 1.0 / k;
  }
  return den > 0.0 ? (num - radius) / den : theta;
}

}  // namespace

double cap_total(const DenseMatrix& y, double theta) {
  double total = 0.0;
  for (std::size_t j = 0; j < y.cols(); ++j) {
    if (column_sum(y, j) <= theta) continue;
    total += project_simplex(y.column(j), theta).tau;
  }
  return total;
}

OracleResult theta_by_bisection(const DenseMatrix& y, double radius, double tol) {
  require_oracle_input(y, radius);
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  double lo = 0.0;
  double hi = 0.0;
  for (std::size_t j = 0; j < y.cols(); ++j) hi = std::max(hi, column_sum(y, j));
  const double width0 = hi - lo;
  double g_lo = cap_total(y, lo);
  double g_hi = 0.0;

  OracleResult out{DenseMatrix(y.rows(), y.cols()), 0.0, 0.0, 0};
  double theta = 0.5 * (lo + hi);
  while (out.iterations < kMaxBisection) {
    theta = 0.5 * (lo + hi);
    if (!(theta > lo && theta < hi)) break;  // bracket exhausted at ulp resolution
    ++out.iterations;
    const double g = cap_total(y, theta);
    const double slack = 1e-12 * (1.0 + g_lo);
    if (g > g_lo + slack || g < g_hi - slack) {
      throw std::logic_error("cap total is not monotone in theta");
    }
    if (g > radius) {
      lo = theta;
      g_lo = g;
    } else {
      hi = theta;
      g_hi = g;
    }
    if (std::abs(g - radius) <= tol && hi - lo <= tol * (1.0 + width0)) break;
  }

  // g is piecewise linear: solving exactly on the supports found at the
  // bisection point is usually tighter than the bracket midpoint.
  const double refined = theta_from_supports(y, radius, theta);
  const double r_mid = std::abs(cap_total(y, theta) - radius);
  const double r_refined = refined >= 0.0 ? std::abs(cap_total(y, refined) - radius)
                                          : std::numeric_limits<double>::infinity();
  out.theta = r_refined < r_mid ? refined : theta;
  out.residual = std::min(r_mid, r_refined);

  for (std::size_t j = 0; j < y.cols(); ++j) {
    if (column_sum(y, j) <= out.theta) continue;
    const auto src = y.column(j);
    const SimplexResult r = project_simplex(src, out.theta);
    auto dst = out.X.column(j);
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] - r.projected[i];
  }
  return out;
}

OracleResult project_small_kkt(const DenseMatrix& y, double radius) {
  const std::size_t n = y.rows();
  const std::size_t m = y.cols();
  if (n > kMaxKktSide || m > kMaxKktSide) {
    throw std::length_error("exhaustive KKT search is limited to 6x6 inputs");
  }
  require_oracle_input(y, radius);

  // Sorted columns with a trailing zero, and running sums.
  std::vector<double> z((n + 1) * m, 0.0);
  std::vector<double> s(n * m);
  double scale = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const auto col = y.column(j);
    std::copy(col.begin(), col.end(), z.begin() + static_cast<std::ptrdiff_t>(j * (n + 1)));
    std::sort(z.begin() + static_cast<std::ptrdiff_t>(j * (n + 1)),
              z.begin() + static_cast<std::ptrdiff_t>(j * (n + 1) + n), std::greater<>());
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) s[j * n + i] = acc += z[j * (n + 1) + i];
    scale = std::max(scale, acc);
  }
  const double eps = 1e-11 * (1.0 + scale);

  // state[j] == 0: column zeroed; otherwise its top state[j] entries are capped.
  std::vector<std::size_t> state(m, 0);
  std::vector<double> best_mu;
  double best_theta = 0.0;
  double best_dist = std::numeric_limits<double>::infinity();
  std::size_t configs = 0;
  std::vector<double> mu(m);

  while (true) {
    ++configs;
    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (state[j] == 0) continue;
      const double k = static_cast<double>(state[j]);
      num += s[j * n + state[j] - 1] / k;
      den += 1.0 / k;
    }
    if (den > 0.0) {
      const double theta = (num - radius) / den;
      bool ok = theta >= -eps;
      for (std::size_t j = 0; ok && j < m; ++j) {
        const double* zj = z.data() + j * (n + 1);
        if (state[j] == 0) {
          mu[j] = 0.0;
          ok = s[j * n + n - 1] <= theta + eps;
          continue;
        }
        const std::size_t k = state[j];
        mu[j] = (s[j * n + k - 1] - theta) / static_cast<double>(k);
        ok = mu[j] >= -eps && zj[k - 1] >= mu[j] - eps && zj[k] <= mu[j] + eps;
      }
      if (ok) {
        double dist = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
          const double cap = std::max(mu[j], 0.0);
          for (double v : y.column(j)) dist += (v - std::min(v, cap)) * (v - std::min(v, cap));
        }
        if (dist < best_dist) {
          best_dist = dist;
          best_theta = theta;
          best_mu = mu;
        }
      }
    }
    std::size_t j = 0;
    while (j < m && ++state[j] > n) state[j++] = 0;
    if (j == m) break;
  }
  if (best_mu.empty()) throw std::logic_error("no configuration satisfies the optimality conditions");

  OracleResult out{DenseMatrix(n, m), best_theta, 0.0, configs};
  double total = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    const double cap = std::max(best_mu[j], 0.0);
    total += cap;
    const auto src = y.column(j);
    auto dst = out.X.column(j);
    for (std::size_t i = 0; i < n; ++i) dst[i] = std::min(src[i], cap);
  }
  out.residual = std::abs(total - radius);
  return out;
}

DenseMatrix oracle_project_ball(const DenseMatrix& y, double radius, double tol) {
  if (!(radius >= 0.0)) throw std::invalid_argument("radius must be nonnegative");
  if (radius == 0.0) return DenseMatrix(y.rows(), y.cols());
  if (norm_l1_inf(y) <= radius) return y;
  SignDecomposition parts = sign_decompose(y);
  return recompose(parts.signs, theta_by_bisection(parts.magnitudes, radius, tol).X);
}

}  // namespace l1inf
