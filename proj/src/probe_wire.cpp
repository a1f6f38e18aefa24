// SPDX-License-Identifier: Apache-2.0
#include "rankweave/probe_wire.hpp"

#include <algorithm>
#include <cmath>

namespace rankweave {

std::array<std::uint8_t, kProbePayloadSize> encode_probe(std::uint8_t round_id, std::uint32_t sequence) {
  if (sequence > kMaxSequence)
    throw domain_error("probe sequence " + std::to_string(sequence) + " exceeds 24 bits");
  return {round_id, static_cast<std::uint8_t>((sequence >> 16) & 0xff),
          static_cast<std::uint8_t>((sequence >> 8) & 0xff),
          static_cast<std::uint8_t>(sequence & 0xff)};
}

std::pair<std::uint8_t, std::uint32_t> decode_probe(const std::uint8_t* data, std::size_t len) {
  if (len != kProbePayloadSize)
    throw domain_error("probe payload must be exactly 4 bytes, got " + std::to_string(len));
  const std::uint32_t seq = (static_cast<std::uint32_t>(data[1]) << 16) |
                            (static_cast<std::uint32_t>(data[2]) << 8) |
                            static_cast<std::uint32_t>(data[3]);
  return {data[0], seq};
}

void validate(const ProbeConfig& cfg) {
  if (cfg.probes_per_pair < 1) throw domain_error("probes_per_pair must be >= 1");
  if (cfg.percentile < 1 || cfg.percentile > 100) throw domain_error("percentile must be in [1, 100]");
  if (cfg.timeout.count() <= 0) throw domain_error("probe timeout must be > 0");
  if (cfg.inter_probe_gap.count() < 0) throw domain_error("inter-probe gap must be >= 0");
  if (cfg.max_consecutive_losses < 1) throw domain_error("loss threshold must be >= 1");
}

double aggregate_rtt(const std::vector<double>& samples, int percentile) {
  if (samples.empty()) throw domain_error("aggregate_rtt: no samples");
  if (percentile < 1 || percentile > 100) throw domain_error("percentile must be in [1, 100]");
  std::vector<double> sorted(samples);
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  auto idx = static_cast<std::size_t>(std::ceil(static_cast<double>(percentile) / 100.0 * n)) - 1;
  idx = std::min(idx, sorted.size() - 1);
  return sorted[idx];
}

CostMatrix symmetrize(const CostMatrix& m) {
  const std::size_t n = m.hosts.size();
  if (m.rtt_us.size() != n * n) throw domain_error("symmetrize: matrix storage is not n*n");
  CostMatrix out = m;
  for (int i = 0; i < out.n(); ++i) {
    out.at(i, i) = 0.0;
    for (int j = i + 1; j < out.n(); ++j) {
      const double v = std::max(m.at(i, j), m.at(j, i));
      out.at(i, j) = v;
      out.at(j, i) = v;
    }
  }
  return out;
}

}  // namespace rankweave
