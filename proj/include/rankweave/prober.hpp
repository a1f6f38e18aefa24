// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rankweave/net.hpp"
#include "rankweave/probe_wire.hpp"
#include "rankweave/types.hpp"

namespace rankweave {

class pair_unreachable_error : public net_error {
 public:
  pair_unreachable_error(const std::string& src, const std::string& dst, const std::string& detail)
      : net_error("pair " + src + " -> " + dst + " unreachable: " + detail), src_host(src), dst_host(dst) {}
  std::string src_host;
  std::string dst_host;
};

/// Raised by build_cost_matrix when a pair cannot be probed; carries the
/// partially filled raw matrix (NaN = not yet probed) so the caller can
/// persist it for --resume.
class matrix_build_error : public net_error {
 public:
  matrix_build_error(const pair_unreachable_error& cause, CostMatrix partial_matrix)
      : net_error(cause.what()), src_host(cause.src_host), dst_host(cause.dst_host),
        partial(std::move(partial_matrix)) {}
  std::string src_host;
  std::string dst_host;
  CostMatrix partial;
};

struct PairProgress {
  int pair_index = 0;  // 1-based over ordered pairs
  int total_pairs = 0;
  std::string src;
  std::string dst;
  double rtt_estimate_us = 0.0;
  bool skipped = false;  // already present in the resume matrix
};
using ProgressFn = std::function<void(const PairProgress&)>;

/// Probe one ordered pair: sends cfg.probes_per_pair datagrams to the agent
/// on dst, strictly one outstanding probe at a time (the next probe goes out
/// only after the reply arrived or timed out). Replies that do not match the
/// outstanding payload are discarded and the probe counts as lost. The local
/// socket binds to src's address when that is locally assignable, so
/// loopback pairs measure the intended direction.
ProbeSampleSet probe_pair(const Endpoint& src, const Endpoint& dst, const ProbeConfig& cfg,
                          std::uint8_t round_id = 0);

/// Probe all N(N-1) ordered pairs one at a time (both directions of a pair
/// back to back), aggregate each to its percentile estimate, then
/// symmetrize. `hosts` entries are "host[:port]" lines; cfg.port fills in a
/// missing port. Entries already finite in `resume_from` are not re-probed.
CostMatrix build_cost_matrix(const std::vector<std::string>& hosts, const ProbeConfig& cfg,
                             const ProgressFn& progress = {},
                             const CostMatrix* resume_from = nullptr);

}  // namespace rankweave
