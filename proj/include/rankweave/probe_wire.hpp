// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "rankweave/types.hpp"

namespace rankweave {

// Probe datagram: one 32-bit big-endian word, high byte the round id, low
// 24 bits the sequence number. The agent reflects it verbatim, so a reply
// identifies exactly which probe of which round it answers.
inline constexpr std::size_t kProbePayloadSize = 4;
inline constexpr std::uint32_t kMaxSequence = (1u << 24) - 1;

std::array<std::uint8_t, kProbePayloadSize> encode_probe(std::uint8_t round_id, std::uint32_t sequence);
std::pair<std::uint8_t, std::uint32_t> decode_probe(const std::uint8_t* data, std::size_t len);

struct ProbeConfig {
  int probes_per_pair = 10000;
  int percentile = 10;  // nearest-rank percentile kept as the pair estimate
  std::chrono::microseconds timeout{500'000};
  std::chrono::microseconds inter_probe_gap{0};
  std::uint16_t port = 18515;  // default agent port; RANKWEAVE_PORT overrides in the CLI
  int max_consecutive_losses = 100;
};

void validate(const ProbeConfig& cfg);

/// RTT samples for one ordered host pair. Lost probes are counted, never
/// fabricated: samples.size() + lost == attempted.
struct ProbeSampleSet {
  std::string src;
  std::string dst;
  std::vector<double> rtt_us;
  int lost = 0;
  int attempted = 0;
};

/// Nearest-rank percentile of the samples: the value at index
/// ceil(p/100 * n) - 1 of the ascending sort.
double aggregate_rtt(const std::vector<double>& samples, int percentile);

/// out[i][j] = out[j][i] = max(in[i][j], in[j][i]); diagonal forced to 0.
CostMatrix symmetrize(const CostMatrix& m);

}  // namespace rankweave
