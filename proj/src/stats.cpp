// SPDX-License-Identifier: Apache-2.0
#include "rankweave/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "rankweave/cost_model.hpp"

namespace rankweave {

namespace {

// Average ranks (1-based) with ties sharing the mean of their positions.
std::vector<double> average_ranks(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  std::vector<double> ranks(n);
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j + 1 < n && xs[idx[j + 1]] == xs[idx[i]]) ++j;
    const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
    for (std::size_t k = i; k <= j; ++k) ranks[idx[k]] = avg;
    i = j + 1;
  }
  return ranks;
}

double pearson(const std::vector<double>& xs, const std::vector<double>& ys) {
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw domain_error("spearman: constant series, coefficient undefined");
  return sxy / std::sqrt(sxx * syy);
}

}  // namespace

double spearman(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size())
    throw domain_error("spearman: series lengths differ (" + std::to_string(xs.size()) + " vs " +
                       std::to_string(ys.size()) + ")");
  if (xs.size() < 2) throw domain_error("spearman: need at least 2 points");
  return pearson(average_ranks(xs), average_ranks(ys));
}

DistributionStats distribution_stats(const std::vector<double>& values) {
  if (values.empty()) throw domain_error("distribution_stats: no samples");
  DistributionStats st;
  st.count = static_cast<int>(values.size());
  st.min = values[0];
  st.max = values[0];
  double sum = 0.0;
  for (double v : values) {
    st.min = std::min(st.min, v);
    st.max = std::max(st.max, v);
    sum += v;
  }
  st.mean = sum / static_cast<double>(st.count);
  double sq = 0.0;
  for (double v : values) sq += (v - st.mean) * (v - st.mean);
  st.stddev = std::sqrt(sq / static_cast<double>(st.count));
  return st;
}

std::vector<RankOrder> sample_orders(int n, int n_samples, std::uint64_t seed) {
  if (n_samples < 1) throw domain_error("sample_orders: need at least 1 sample");
  std::mt19937_64 rng(seed);
  std::vector<RankOrder> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  for (int k = 0; k < n_samples; ++k) {
    RankOrder o = RankOrder::identity(n);
    std::shuffle(o.perm.begin(), o.perm.end(), rng);
    out.push_back(std::move(o));
  }
  return out;
}

std::vector<double> sample_costs(const CostMatrix& m, const CollectiveSpec& spec, int n_samples,
                                 std::uint64_t seed) {
  std::vector<double> costs;
  costs.reserve(static_cast<std::size_t>(n_samples));
  for (const RankOrder& o : sample_orders(spec.n, n_samples, seed))
    costs.push_back(evaluate(m, o, spec));
  return costs;
}

DistributionStats sample_cost_distribution(const CostMatrix& m, const CollectiveSpec& spec,
                                           int n_samples, std::uint64_t seed) {
  return distribution_stats(sample_costs(m, spec, n_samples, seed));
}

}  // namespace rankweave
