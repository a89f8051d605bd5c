#include "l1inf/check.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "l1inf/bench.hpp"
#include "l1inf/matrix_io.hpp"
#include "l1inf/norms.hpp"
#include "l1inf/oracle.hpp"

namespace l1inf {

namespace {

constexpr std::size_t kMaxCheckSide = 12;
constexpr std::size_t kMaxKktSide = 6;

struct Trial {
  DenseMatrix y;
  double radius;
};

Trial draw_trial(std::uint64_t seed, const CheckConfig& cfg) {
  SplitMix64 rng(seed);
  const std::size_t n = 1 + rng.next() % cfg.max_n;
  const std::size_t m = 1 + rng.next() % cfg.max_m;
  const bool grid = rng.next() % 2 == 0;
  const bool signed_entries = rng.next() % 2 == 0;
  std::vector<double> values(n * m);
  for (double& v : values) {
    v = grid ? static_cast<double>(rng.next() % 11) / 10.0 : rng.next_double();
    if (signed_entries && rng.next() % 2 == 0) v = -v;
  }
  DenseMatrix y = DenseMatrix::from_column_major(n, m, std::move(values));
  // Radius in (0, 1.5 * norm]; all-zero draws still get a positive radius.
  const double fraction = 1.5 * (1.0 - rng.next_double());
  const double norm = norm_l1_inf(y);
  return {std::move(y), norm > 0.0 ? fraction * norm : fraction};
}

double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
  double worst = 0.0;
  auto av = a.values();
  auto bv = b.values();
  for (std::size_t k = 0; k < av.size(); ++k) worst = std::max(worst, std::abs(av[k] - bv[k]));
  return worst;
}

}  // namespace

std::vector<NamedProjection> default_projections() {
  std::vector<NamedProjection> out;
  for (Algorithm algo : kAllAlgorithms) {
    out.push_back({std::string(to_string(algo)), [algo](const DenseMatrix& y, double radius) {
                     return project_ball_l1inf(y, radius, algo);
                   }});
  }
  return out;
}

CheckSummary run_check(const CheckConfig& cfg, const std::vector<NamedProjection>& projections,
                       std::ostream& report) {
  if (cfg.trials == 0) throw std::invalid_argument("trials must be >= 1");
  if (cfg.max_n == 0 || cfg.max_n > kMaxCheckSide || cfg.max_m == 0 || cfg.max_m > kMaxCheckSide) {
    throw std::invalid_argument("max-n and max-m must lie in [1, 12]");
  }
  if (!(cfg.tol > 0.0)) throw std::invalid_argument("tol must be positive");
  const double oracle_tol = std::min(1e-12, cfg.tol * 1e-3);

  std::vector<std::uint64_t> seeds(cfg.trials);
  SplitMix64 seeder(cfg.seed);
  for (auto& s : seeds) s = seeder.next();

  std::vector<std::string> failures(cfg.trials);
  std::vector<unsigned char> used_kkt(cfg.trials, 0);
  const long count = static_cast<long>(cfg.trials);
#pragma omp parallel for schedule(dynamic)
  for (long t = 0; t < count; ++t) {
    const auto idx = static_cast<std::size_t>(t);
    std::ostringstream msg;
    try {
      const Trial trial = draw_trial(seeds[idx], cfg);
      const std::size_t n = trial.y.rows();
      const std::size_t m = trial.y.cols();
      const DenseMatrix reference = oracle_project_ball(trial.y, trial.radius, oracle_tol);
      bool bad = false;

      if (n <= kMaxKktSide && m <= kMaxKktSide && norm_l1_inf(trial.y) > trial.radius) {
        used_kkt[idx] = 1;
        SignDecomposition parts = sign_decompose(trial.y);
        const OracleResult kkt = project_small_kkt(parts.magnitudes, trial.radius);
        const double diff = max_abs_diff(recompose(parts.signs, kkt.X), reference);
        if (diff > cfg.tol) {
          bad = true;
          msg << "  exhaustive solver differs from bisection by " << format_real(diff)
              << " (theta=" << format_real(kkt.theta) << ")\n";
        }
      }

      std::ostringstream thetas;
      for (const NamedProjection& p : projections) {
        const ProjectionOutput out = p.project(trial.y, trial.radius);
        thetas << ' ' << p.name << '=' << format_real(out.theta);
        const double diff = max_abs_diff(out.X, reference);
        if (diff > cfg.tol) {
          bad = true;
          msg << "  " << p.name << " differs from reference by " << format_real(diff) << '\n';
        }
        if (out.stats.K + out.stats.J != n * m) {
          bad = true;
          msg << "  " << p.name << " reports K+J=" << out.stats.K + out.stats.J << " != nm\n";
        }
      }
      if (bad) {
        std::ostringstream head;
        head << "trial " << idx << " FAILED: n=" << n << " m=" << m
             << " C=" << format_real(trial.radius) << "\n  theta:" << thetas.str() << '\n'
             << msg.str() << "  matrix:\n";
        write_matrix(head, trial.y);
        failures[idx] = head.str();
      }
    } catch (const std::exception& e) {
      failures[idx] = "trial " + std::to_string(idx) + " FAILED: " + e.what() + '\n';
    }
  }

  CheckSummary summary;
  summary.trials = cfg.trials;
  for (std::size_t t = 0; t < cfg.trials; ++t) {
    summary.kkt_trials += used_kkt[t];
    if (failures[t].empty()) {
      ++summary.passed;
    } else {
      ++summary.failed;
      report << failures[t];
    }
  }
  report << "check: trials=" << summary.trials << " passed=" << summary.passed
         << " failed=" << summary.failed << " kkt_trials=" << summary.kkt_trials
         << " tol=" << format_real(cfg.tol) << '\n';
  return summary;
}

}  // namespace l1inf
