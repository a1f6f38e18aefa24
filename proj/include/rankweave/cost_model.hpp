// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "rankweave/types.hpp"

namespace rankweave {

/// Canonical rank for an arbitrary (possibly out-of-range) rank index.
inline int alias_rank(int r, int n) { return ((r % n) + n) % n; }

/// Bytes sent per node in round `round` of a distance-doubling scheme with
/// the given base (2 for halving-doubling, B for BCube): S / base^(round+1).
double round_bytes(double size_bytes, int base, int round);

/// Cost of moving `bytes` from rank i to rank j (ranks aliased mod n).
/// LatencyOnly: rtt[i][j]; LatencyTimesSize: rtt[i][j] * bytes. Self
/// transfers cost 0 through the zero diagonal.
double transfer_cost(const CostMatrix& m, int i, int j, double bytes, CostMode mode);

// Closed-form cost models. Every rank index is remapped through `order`
// before the matrix lookup, so the identity order evaluates the raw model.
double ring_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec);
double halving_doubling_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec);
double double_binary_tree_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec);
double bcube_cost(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec);

/// Dispatch to the model selected by spec.algorithm.
double evaluate(const CostMatrix& m, const RankOrder& order, const CollectiveSpec& spec);

/// Expand the algorithm into explicit communication rounds (rank space,
/// matrix-independent). Costing the result with schedule_cost reproduces
/// evaluate() exactly.
Schedule expand_schedule(const CollectiveSpec& spec);

/// Re-cost an expanded schedule against a matrix and order.
double schedule_cost(const Schedule& s, const CostMatrix& m, const RankOrder& order, CostMode mode);

}  // namespace rankweave
