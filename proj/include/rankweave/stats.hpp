// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rankweave/types.hpp"

namespace rankweave {

/// Spearman rank correlation with average ranks for ties. Throws
/// domain_error on length mismatch, fewer than two points, or a constant
/// series (the coefficient is undefined there).
double spearman(const std::vector<double>& xs, const std::vector<double>& ys);

DistributionStats distribution_stats(const std::vector<double>& values);

/// Evaluate the cost model on n_samples uniformly random rank orders.
/// Deterministic for a fixed seed.
DistributionStats sample_cost_distribution(const CostMatrix& m, const CollectiveSpec& spec,
                                           int n_samples, std::uint64_t seed);

/// The raw per-sample costs behind sample_cost_distribution, in draw order.
std::vector<double> sample_costs(const CostMatrix& m, const CollectiveSpec& spec, int n_samples,
                                 std::uint64_t seed);

/// The permutations drawn by sample_costs, in the same order.
std::vector<RankOrder> sample_orders(int n, int n_samples, std::uint64_t seed);

}  // namespace rankweave
