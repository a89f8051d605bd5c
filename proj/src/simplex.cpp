#include "l1inf/simplex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <stdexcept>

namespace l1inf {

SimplexResult project_simplex(std::span<const double> v, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("simplex radius must be >= 0");
  if (std::any_of(v.begin(), v.end(), [](double x) { return !(x >= 0.0); })) {
    throw std::invalid_argument("simplex projection needs a nonnegative vector");
  }

  SimplexResult out;
  const double total = std::accumulate(v.begin(), v.end(), 0.0);
  if (total <= radius) {
    out.projected.assign(v.begin(), v.end());
    out.support_size = static_cast<std::size_t>(
        std::count_if(v.begin(), v.end(), [](double x) { return x > 0.0; }));
    return out;
  }

  if (radius == 0.0) {
    out.tau = *std::max_element(v.begin(), v.end());
  } else {
    std::vector<double> sorted(v.begin(), v.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    // Largest k with (sum of top k - radius)/k < k-th largest. k = 1 always
    // qualifies in exact arithmetic, so it is the fallback under rounding.
    out.tau = sorted[0] - radius;
    double prefix = sorted[0];
    for (std::size_t k = 2; k <= sorted.size(); ++k) {
      prefix += sorted[k - 1];
      const double candidate = (prefix - radius) / static_cast<double>(k);
      if (candidate < sorted[k - 1]) out.tau = candidate;
    }
  }

  out.projected.resize(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double shifted = v[i] - out.tau;
    out.projected[i] = shifted > 0.0 ? shifted : 0.0;
    out.support_size += shifted > 0.0;
  }
  return out;
}

}  // namespace l1inf
