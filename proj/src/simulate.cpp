// SPDX-License-Identifier: Apache-2.0
#include "rankweave/simulate.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>
#include <vector>

#include "rankweave/cost_model.hpp"

namespace rankweave {

namespace {

struct LinkWalk {
  const TopologySpec& topo;
  std::vector<long long> group_size;  // group_size[l] = product of fanouts[0..l]

  explicit LinkWalk(const TopologySpec& t) : topo(t) {
    long long g = 1;
    for (const auto& lvl : t.levels) {
      g *= lvl.fanout;
      group_size.push_back(g);
    }
  }

  // key for one direction of one link; dir 0 = up (source side), 1 = down
  long long key(int level, long long id, int dir) const {
    return (static_cast<long long>(level) << 42) | (id << 1) | dir;
  }

  long long link_id(int host, int level) const {
    return level == 0 ? host : host / group_size[static_cast<std::size_t>(level - 1)];
  }

  template <typename Fn>
  void for_each_link(int src_host, int dst_host, Fn&& fn) const {
    const int lca = lca_level(topo, src_host, dst_host);
    for (int l = 0; l <= lca; ++l) {
      fn(l, key(l, link_id(src_host, l), 0));
      fn(l, key(l, link_id(dst_host, l), 1));
    }
  }

  double capacity(int level) const {
    const auto& lvl = topo.levels[static_cast<std::size_t>(level)];
    return lvl.bandwidth_Bpus / lvl.oversub;
  }
};

// Per-transfer durations for one round under equal link sharing.
std::vector<double> round_durations(const LinkWalk& walk, const CostMatrix& m,
                                    const std::vector<Transfer>& round,
                                    const std::vector<int>& perm) {
  std::unordered_map<long long, int> load;
  for (const auto& t : round) {
    if (t.src == t.dst) continue;
    walk.for_each_link(perm[static_cast<std::size_t>(t.src)], perm[static_cast<std::size_t>(t.dst)],
                       [&](int, long long k) { ++load[k]; });
  }
  std::vector<double> durations;
  durations.reserve(round.size());
  for (const auto& t : round) {
    if (t.src == t.dst) {
      durations.push_back(0.0);
      continue;
    }
    const int a = perm[static_cast<std::size_t>(t.src)];
    const int b = perm[static_cast<std::size_t>(t.dst)];
    double rate = std::numeric_limits<double>::infinity();
    walk.for_each_link(a, b, [&](int level, long long k) {
      rate = std::min(rate, walk.capacity(level) / static_cast<double>(load.at(k)));
    });
    durations.push_back(m.at(a, b) / 2.0 + t.bytes / rate);
  }
  return durations;
}

}  // namespace

double simulate_collective(const TopologySpec& topo, const CostMatrix& m, const RankOrder& order,
                           const CollectiveSpec& spec) {
  validate(topo);
  if (topo.host_count() != spec.n)
    throw domain_error("topology has " + std::to_string(topo.host_count()) + " hosts but spec.n=" +
                       std::to_string(spec.n));
  if (m.n() != spec.n) throw domain_error("matrix dimension does not match spec.n");
  validate(order, spec.n);

  const Schedule schedule = expand_schedule(spec);
  const LinkWalk walk(topo);

  std::vector<std::vector<double>> durations;
  durations.reserve(schedule.rounds.size());
  for (const auto& round : schedule.rounds)
    durations.push_back(round_durations(walk, m, round, order.perm));

  switch (schedule.semantics) {
    case ScheduleSemantics::SequentialHops: {
      double total = 0.0;
      for (const auto& round : durations)
        for (double d : round) total += d;
      return total;
    }
    case ScheduleSemantics::BulkSynchronousRounds: {
      double total = 0.0;
      for (const auto& round : durations) {
        double round_max = 0.0;
        for (double d : round) round_max = std::max(round_max, d);
        total += round_max;
      }
      return total;
    }
    case ScheduleSemantics::CriticalPath: {
      std::vector<double> child_max;
      std::vector<double> value;
      double best = 0.0;
      for (std::size_t r = schedule.rounds.size(); r-- > 0;) {
        const auto& round = schedule.rounds[r];
        child_max.assign(round.size(), 0.0);
        if (r + 1 < schedule.rounds.size()) {
          const auto& below = schedule.rounds[r + 1];
          for (std::size_t t = 0; t < below.size(); ++t)
            if (below[t].parent >= 0)
              child_max[static_cast<std::size_t>(below[t].parent)] =
                  std::max(child_max[static_cast<std::size_t>(below[t].parent)], value[t]);
        }
        value.resize(round.size());
        for (std::size_t t = 0; t < round.size(); ++t) {
          value[t] = durations[r][t] + child_max[t];
          if (r == 0) best = std::max(best, value[t]);
        }
      }
      return best;
    }
  }
  throw domain_error("simulate_collective: unknown schedule semantics");
}

double simulate_collective(const TopologySpec& topo, const RankOrder& order,
                           const CollectiveSpec& spec) {
  return simulate_collective(topo, generate_matrix(topo), order, spec);
}

}  // namespace rankweave
