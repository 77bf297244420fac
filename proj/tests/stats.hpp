#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

// Pearson chi-square p-value of observed counts against expected
// probabilities. Cells with expectation below 5 are pooled.
inline double chi_square_pvalue(const std::vector<std::uint64_t>& observed, const std::vector<double>& probs) {
  std::uint64_t total = 0;
  for (auto c : observed) total += c;
  double stat = 0.0;
  double pooled_obs = 0.0, pooled_exp = 0.0;
  int cells = 0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double e = probs[k] * static_cast<double>(total);
    if (e < 5.0) {
      pooled_obs += static_cast<double>(observed[k]);
      pooled_exp += e;
      continue;
    }
    const double d = static_cast<double>(observed[k]) - e;
    stat += d * d / e;
    ++cells;
  }
  if (pooled_exp >= 5.0) {
    const double d = pooled_obs - pooled_exp;
    stat += d * d / pooled_exp;
    ++cells;
  }
  if (cells < 2) return 1.0;
  boost::math::chi_squared dist(cells - 1);
  return boost::math::cdf(boost::math::complement(dist, stat));
}
