// SPDX-License-Identifier: Apache-2.0
#include "rankweave/topology.hpp"

#include <cmath>
#include <random>
#include <string>

namespace rankweave {

int TopologySpec::host_count() const {
  long long n = 1;
  for (const auto& lvl : levels) n *= lvl.fanout;
  return static_cast<int>(n);
}

void validate(const TopologySpec& topo) {
  if (topo.levels.empty()) throw domain_error("topology needs at least one level");
  long long n = 1;
  for (const auto& lvl : topo.levels) {
    if (lvl.fanout < 1) throw domain_error("topology level fanout must be >= 1");
    if (!(lvl.latency_us > 0.0)) throw domain_error("topology level latency must be > 0");
    if (!(lvl.bandwidth_Bpus > 0.0)) throw domain_error("topology level bandwidth must be > 0");
    if (!(lvl.oversub >= 1.0)) throw domain_error("topology oversubscription must be >= 1");
    n *= lvl.fanout;
    if (n > 1'000'000) throw domain_error("topology host count exceeds 1e6");
  }
  if (n < 2) throw domain_error("topology fanout product must be >= 2 hosts, got " + std::to_string(n));
  if (topo.jitter < 0.0 || topo.jitter >= 1.0) throw domain_error("jitter must be in [0, 1)");
}

int lca_level(const TopologySpec& topo, int i, int j) {
  long long group = 1;
  for (std::size_t l = 0; l < topo.levels.size(); ++l) {
    group *= topo.levels[l].fanout;
    if (i / group == j / group) return static_cast<int>(l);
  }
  return static_cast<int>(topo.levels.size()) - 1;
}

CostMatrix generate_matrix(const TopologySpec& topo) {
  validate(topo);
  const int n = topo.host_count();

  CostMatrix m;
  m.hosts.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) m.hosts.push_back("node" + std::to_string(i));
  m.rtt_us.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);

  std::mt19937_64 rng(topo.seed);
  std::uniform_real_distribution<double> noise(0.0, topo.jitter > 0.0 ? topo.jitter : 1.0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const int lca = lca_level(topo, i, j);
      double one_way = 0.0;
      for (int l = 0; l <= lca; ++l) {
        const double u = topo.jitter > 0.0 ? noise(rng) : 0.0;
        one_way += topo.levels[static_cast<std::size_t>(l)].latency_us * (1.0 + u);
      }
      m.at(i, j) = 2.0 * one_way;
      m.at(j, i) = m.at(i, j);
    }
  }
  return m;
}

}  // namespace rankweave
