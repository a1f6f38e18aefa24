// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rankweave/topology.hpp"
#include "rankweave/types.hpp"

namespace rankweave {

/// Simulated completion time (µs) of the collective on the synthetic
/// topology under the given rank order, using an equal-share flow model:
/// each transfer moves at the tightest link share along its path, where a
/// link's capacity (bandwidth / oversubscription, per direction) is split
/// evenly among the transfers of the same round that cross it. A transfer's
/// duration is its one-way path latency (half the generated RTT, jitter
/// included) plus bytes / share. Rounds combine per the schedule semantics.
///
/// This is an independent ground-truth stand-in, not the cost model: it
/// prices bandwidth contention that the latency-centric models ignore.
double simulate_collective(const TopologySpec& topo, const RankOrder& order,
                           const CollectiveSpec& spec);

/// Same, but reusing an already-generated matrix for the latency terms
/// (must come from generate_matrix(topo)).
double simulate_collective(const TopologySpec& topo, const CostMatrix& m, const RankOrder& order,
                           const CollectiveSpec& spec);

}  // namespace rankweave
