// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <string>
#include <vector>

#include "rankweave/types.hpp"

namespace rankweave::test {

inline CostMatrix make_matrix(const std::vector<std::vector<double>>& rows) {
  std::vector<std::string> hosts;
  for (std::size_t i = 0; i < rows.size(); ++i) hosts.push_back("h" + std::to_string(i));
  return CostMatrix(hosts, rows);
}

inline CostMatrix uniform_matrix(int n, double off_diagonal) {
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), off_diagonal));
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = 0.0;
  return make_matrix(rows);
}

inline CostMatrix random_matrix(int n, std::mt19937_64& rng, bool symmetric = true,
                                double lo = 1.0, double hi = 1000.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<std::vector<double>> rows(static_cast<std::size_t>(n),
                                        std::vector<double>(static_cast<std::size_t>(n), 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = symmetric ? i + 1 : 0; j < n; ++j) {
      if (i == j) continue;
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = dist(rng);
      if (symmetric) rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
  }
  return make_matrix(rows);
}

inline RankOrder random_order(int n, std::mt19937_64& rng) {
  RankOrder o = RankOrder::identity(n);
  std::shuffle(o.perm.begin(), o.perm.end(), rng);
  return o;
}

}  // namespace rankweave::test
