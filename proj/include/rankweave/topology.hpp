// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "rankweave/types.hpp"

namespace rankweave {

/// One tier of a hierarchical network, leaf upward. Level 0 is the host
/// access link into its first switch; level l >= 1 is the uplink of a
/// level-(l-1) group toward its parent.
struct TopologyLevel {
  int fanout = 0;              // children per node at this level
  double latency_us = 0.0;     // one-way per-hop latency
  double bandwidth_Bpus = 0.0; // link bandwidth, bytes per microsecond
  double oversub = 1.0;        // oversubscription ratio (>= 1)
};

/// Synthetic hierarchical datacenter description; host count is the product
/// of the fanouts.
struct TopologySpec {
  std::vector<TopologyLevel> levels;
  double jitter = 0.0;         // multiplicative per-hop noise amplitude in [0, 1)
  std::uint64_t seed = 0;

  int host_count() const;
};

void validate(const TopologySpec& topo);

/// Level of the lowest common ancestor of hosts i and j (0 = same leaf group).
int lca_level(const TopologySpec& topo, int i, int j);

/// Pairwise RTT matrix implied by the hierarchy: rtt[i][j] = 2 * sum of the
/// per-hop latencies up to the LCA level, each hop scaled by (1 + u) with u
/// drawn uniformly from [0, jitter). Symmetric, zero diagonal, deterministic
/// per seed.
CostMatrix generate_matrix(const TopologySpec& topo);

}  // namespace rankweave
