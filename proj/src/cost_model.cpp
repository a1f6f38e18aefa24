// SPDX-License-Identifier: Apache-2.0
#include "rankweave/cost_model.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

namespace rankweave {

namespace {

void check_inputs(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec) {
  validate(spec);
  if (m.n() != spec.n)
    throw domain_error("matrix is " + std::to_string(m.n()) + "x" + std::to_string(m.n()) +
                       " but spec has N=" + std::to_string(spec.n));
  validate(order, spec.n);
}

// Matrix view with rank indices aliased and remapped through the order.
struct OrderedCost {
  const CostMatrix& m;
  const std::vector<int>& perm;
  CostMode mode;
  int n;

  double operator()(int i, int j, double bytes) const {
    const int a = perm[static_cast<std::size_t>(alias_rank(i, n))];
    const int b = perm[static_cast<std::size_t>(alias_rank(j, n))];
    const double rtt = m.at(a, b);
    return mode == CostMode::LatencyOnly ? rtt : rtt * bytes;
  }
};

// Hop costs are accumulated in sorted order so that the sum is bit-identical
// across rotations and reflections of the same cycle.
double sorted_sum(std::vector<double>& values) {
  std::sort(values.begin(), values.end());
  double total = 0.0;
  for (double v : values) total += v;
  return total;
}

}  // namespace

double round_bytes(double size_bytes, int base, int round) {
  double divisor = 1.0;
  for (int k = 0; k <= round; ++k) divisor *= static_cast<double>(base);
  return size_bytes / divisor;
}

double transfer_cost(const CostMatrix& m, int i, int j, double bytes, CostMode mode) {
  const int n = m.n();
  const double rtt = m.at(alias_rank(i, n), alias_rank(j, n));
  return mode == CostMode::LatencyOnly ? rtt : rtt * bytes;
}

double ring_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec) {
  check_inputs(m, order, spec);
  if (spec.algorithm != Algorithm::Ring) throw domain_error("ring_cost: spec is not Ring");
  const int n = spec.n;
  if (n == 1) return 0.0;
  const OrderedCost c{m, order.perm, spec.cost_mode, n};
  std::vector<double> hops;
  hops.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) hops.push_back(c(i, i - 1, spec.size_bytes));
  return sorted_sum(hops);
}

double halving_doubling_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec) {
  check_inputs(m, order, spec);
  if (spec.algorithm != Algorithm::HalvingDoubling)
    throw domain_error("halving_doubling_cost: spec is not HalvingDoubling");
  const int n = spec.n;
  if (n == 1) return 0.0;
  const OrderedCost c{m, order.perm, spec.cost_mode, n};
  const int rounds = ilog(n, 2);
  double total = 0.0;
  for (int i = 0; i < rounds; ++i) {
    const double bytes = round_bytes(spec.size_bytes, 2, i);
    const int stride = 1 << i;
    double round_max = 0.0;
    if (spec.hd_pairing == HdPairing::PaperFormula) {
      for (int j = 0; j < n / 2; ++j) round_max = std::max(round_max, c(j, j + stride, bytes));
    } else {
      for (int j = 0; j < n; ++j) round_max = std::max(round_max, c(j, j ^ stride, bytes));
    }
    total += round_max;
  }
  return total;
}

double double_binary_tree_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec) {
  check_inputs(m, order, spec);
  if (spec.algorithm != Algorithm::DoubleBinaryTree)
    throw domain_error("double_binary_tree_cost: spec is not DoubleBinaryTree");
  const int n = spec.n;
  if (n == 1) return 0.0;
  const OrderedCost c{m, order.perm, spec.cost_mode, n};
  const double half = spec.size_bytes / 2.0;

  // T(i, j) of the recursion; `shift` of -1 evaluates the mirrored tree,
  // whose nodes hold rank-1 of the primary tree's nodes.
  std::function<double(int, int, int)> tree = [&](int i, int j, int shift) -> double {
    if (i >= j) return 0.0;
    const int mid = (i + j) / 2;
    const int left_peer = (3 * i + j) / 2 - 1;
    const int right_peer = (i + 3 * j) / 2 + 1;
    const double left = c(mid + shift, left_peer + shift, half) + tree(i, mid - 1, shift);
    const double right = c(mid + shift, right_peer + shift, half) + tree(mid + 1, j, shift);
    return std::max(left, right);
  };

  return std::max(tree(0, n - 1, 0), tree(0, n - 1, -1));
}

double bcube_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec) {
  check_inputs(m, order, spec);
  if (spec.algorithm != Algorithm::BCube) throw domain_error("bcube_cost: spec is not BCube");
  const int n = spec.n;
  if (n == 1) return 0.0;
  const OrderedCost c{m, order.perm, spec.cost_mode, n};
  const int b = spec.bcube_b;
  const int rounds = ilog(n, b);
  double total = 0.0;
  long long stride = 1;
  for (int i = 0; i < rounds; ++i) {
    const double bytes = round_bytes(spec.size_bytes, b, i);
    double round_max = 0.0;
    for (int j = 0; j < n / b; ++j)
      for (int k = 1; k < b; ++k)
        round_max = std::max(round_max, c(j, static_cast<int>((j + k * stride) % n), bytes));
    total += round_max;
    stride *= b;
  }
  return total;
}

double evaluate(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec) {
  switch (spec.algorithm) {
    case Algorithm::Ring: return ring_cost(m, order, spec);
    case Algorithm::HalvingDoubling: return halving_doubling_cost(m, order, spec);
    case Algorithm::DoubleBinaryTree: return double_binary_tree_cost(m, order, spec);
    case Algorithm::BCube: return bcube_cost(m, order, spec);
  }
  throw domain_error("evaluate: unknown algorithm");
}

namespace {

Schedule expand_ring(const CollectiveSpec& spec) {
  Schedule s{Algorithm::Ring, spec.n, ScheduleSemantics::SequentialHops, {}};
  for (int i = 0; i < spec.n; ++i)
    s.rounds.push_back({Transfer{i, alias_rank(i - 1, spec.n), spec.size_bytes, -1}});
  return s;
}

Schedule expand_hd(const CollectiveSpec& spec) {
  Schedule s{Algorithm::HalvingDoubling, spec.n, ScheduleSemantics::BulkSynchronousRounds, {}};
  const int rounds = ilog(spec.n, 2);
  for (int i = 0; i < rounds; ++i) {
    const double bytes = round_bytes(spec.size_bytes, 2, i);
    const int stride = 1 << i;
    std::vector<Transfer> round;
    if (spec.hd_pairing == HdPairing::PaperFormula) {
      for (int j = 0; j < spec.n / 2; ++j)
        round.push_back(Transfer{j, alias_rank(j + stride, spec.n), bytes, -1});
    } else {
      for (int j = 0; j < spec.n; ++j) round.push_back(Transfer{j, j ^ stride, bytes, -1});
    }
    s.rounds.push_back(std::move(round));
  }
  return s;
}

Schedule expand_bcube(const CollectiveSpec& spec) {
  Schedule s{Algorithm::BCube, spec.n, ScheduleSemantics::BulkSynchronousRounds, {}};
  const int b = spec.bcube_b;
  const int rounds = ilog(spec.n, b);
  long long stride = 1;
  for (int i = 0; i < rounds; ++i) {
    const double bytes = round_bytes(spec.size_bytes, b, i);
    std::vector<Transfer> round;
    for (int j = 0; j < spec.n / b; ++j)
      for (int k = 1; k < b; ++k)
        round.push_back(Transfer{j, static_cast<int>((j + k * stride) % spec.n), bytes, -1});
    s.rounds.push_back(std::move(round));
    stride *= b;
  }
  return s;
}

Schedule expand_dbt(const CollectiveSpec& spec) {
  const int n = spec.n;
  Schedule s{Algorithm::DoubleBinaryTree, n, ScheduleSemantics::CriticalPath, {}};
  const double half = spec.size_bytes / 2.0;

  // Emit the recursion's edges by depth; each edge's parent is the edge that
  // reached its subtree root one level up.
  std::function<void(int, int, int, int, int)> emit = [&](int i, int j, int shift, int depth,
                                                          int parent) {
    if (i >= j) return;
    if (static_cast<std::size_t>(depth) >= s.rounds.size()) s.rounds.emplace_back();
    const int mid = (i + j) / 2;
    const int left_peer = (3 * i + j) / 2 - 1;
    const int right_peer = (i + 3 * j) / 2 + 1;
    // The recursive calls below may grow s.rounds, so index it afresh each time.
    const int left_idx = static_cast<int>(s.rounds[static_cast<std::size_t>(depth)].size());
    s.rounds[static_cast<std::size_t>(depth)].push_back(
        Transfer{alias_rank(mid + shift, n), alias_rank(left_peer + shift, n), half, parent});
    emit(i, mid - 1, shift, depth + 1, left_idx);
    const int right_idx = static_cast<int>(s.rounds[static_cast<std::size_t>(depth)].size());
    s.rounds[static_cast<std::size_t>(depth)].push_back(
        Transfer{alias_rank(mid + shift, n), alias_rank(right_peer + shift, n), half, parent});
    emit(mid + 1, j, shift, depth + 1, right_idx);
  };

  emit(0, n - 1, 0, 0, -1);
  emit(0, n - 1, -1, 0, -1);
  return s;
}

}  // namespace

Schedule expand_schedule(const CollectiveSpec& spec) {
  validate(spec);
  if (spec.n == 1) return Schedule{spec.algorithm, 1, ScheduleSemantics::SequentialHops, {}};
  switch (spec.algorithm) {
    case Algorithm::Ring: return expand_ring(spec);
    case Algorithm::HalvingDoubling: return expand_hd(spec);
    case Algorithm::DoubleBinaryTree: return expand_dbt(spec);
    case Algorithm::BCube: return expand_bcube(spec);
  }
  throw domain_error("expand_schedule: unknown algorithm");
}

double schedule_cost(const Schedule& s, const CostMatrix& m, const RankOrder& order, CostMode mode) {
  if (m.n() != s.node_count)
    throw domain_error("schedule node count does not match matrix dimension");
  validate(order, s.node_count);
  const OrderedCost c{m, order.perm, mode, s.node_count};

  switch (s.semantics) {
    case ScheduleSemantics::SequentialHops: {
      std::vector<double> hops;
      for (const auto& round : s.rounds)
        for (const auto& t : round) hops.push_back(c(t.src, t.dst, t.bytes));
      return sorted_sum(hops);
    }
    case ScheduleSemantics::BulkSynchronousRounds: {
      double total = 0.0;
      for (const auto& round : s.rounds) {
        double round_max = 0.0;
        for (const auto& t : round) round_max = std::max(round_max, c(t.src, t.dst, t.bytes));
        total += round_max;
      }
      return total;
    }
    case ScheduleSemantics::CriticalPath: {
      // Accumulate leaf-up: value(edge) = cost(edge) + max over child values.
      std::vector<double> child_max;  // per transfer of the round being reduced into
      std::vector<double> value;      // per transfer of the round below
      double best = 0.0;
      for (std::size_t r = s.rounds.size(); r-- > 0;) {
        const auto& round = s.rounds[r];
        child_max.assign(round.size(), 0.0);
        if (r + 1 < s.rounds.size()) {
          const auto& below = s.rounds[r + 1];
          for (std::size_t t = 0; t < below.size(); ++t)
            if (below[t].parent >= 0)
              child_max[static_cast<std::size_t>(below[t].parent)] =
                  std::max(child_max[static_cast<std::size_t>(below[t].parent)], value[t]);
        }
        value.resize(round.size());
        for (std::size_t t = 0; t < round.size(); ++t) {
          value[t] = c(round[t].src, round[t].dst, round[t].bytes) + child_max[t];
          if (r == 0) best = std::max(best, value[t]);
        }
      }
      return best;
    }
  }
  throw domain_error("schedule_cost: unknown semantics");
}

}  // namespace rankweave
