// SPDX-License-Identifier: Apache-2.0
#include "rankweave/prober.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <thread>

namespace rankweave {

namespace {

using Clock = std::chrono::steady_clock;

double to_us(Clock::duration d) {
  return std::chrono::duration<double, std::micro>(d).count();
}

}  // namespace

ProbeSampleSet probe_pair(const Endpoint& src, const Endpoint& dst, const ProbeConfig& cfg,
                          std::uint8_t round_id) {
  validate(cfg);
  UdpSocket sock;
  try {
    sock.bind(Endpoint{src.host, 0});
  } catch (const net_error&) {
    // src is not a local address (coordinator probing a remote pair); let
    // the OS pick the source.
  }

  const sockaddr_in target = resolve_ipv4(dst);
  ProbeSampleSet set;
  set.src = src.str();
  set.dst = dst.str();

  int consecutive_losses = 0;
  std::uint8_t buf[64];
  for (int p = 0; p < cfg.probes_per_pair; ++p) {
    const auto payload = encode_probe(round_id, static_cast<std::uint32_t>(p) & kMaxSequence);
    const auto sent_at = Clock::now();
    const auto deadline = sent_at + cfg.timeout;
    sock.send_to(payload.data(), payload.size(), target);
    ++set.attempted;

    bool got_reply = false;
    for (;;) {
      const auto now = Clock::now();
      if (now >= deadline) break;
      sock.set_recv_timeout(std::chrono::duration_cast<std::chrono::microseconds>(deadline - now));
      auto got = sock.recv_from(buf, sizeof(buf));
      if (!got) break;  // timed out
      if (got->first == payload.size() && std::memcmp(buf, payload.data(), payload.size()) == 0) {
        set.rtt_us.push_back(to_us(Clock::now() - sent_at));
        got_reply = true;
        break;
      }
      // Stale or foreign datagram (e.g. a late reply to an earlier probe):
      // discard and keep waiting for the outstanding one.
    }

    if (got_reply) {
      consecutive_losses = 0;
    } else {
      ++set.lost;
      if (++consecutive_losses >= cfg.max_consecutive_losses) break;
    }
    if (cfg.inter_probe_gap.count() > 0) std::this_thread::sleep_for(cfg.inter_probe_gap);
  }

  if (set.rtt_us.empty())
    throw pair_unreachable_error(set.src, set.dst,
                                 "all " + std::to_string(set.attempted) + " probes lost");
  return set;
}

CostMatrix build_cost_matrix(const std::vector<std::string>& hosts, const ProbeConfig& cfg,
                             const ProgressFn& progress, const CostMatrix* resume_from) {
  validate(cfg);
  const int n = static_cast<int>(hosts.size());
  if (n < 2) throw domain_error("need >= 2 hosts to build a cost matrix, got " + std::to_string(n));

  std::vector<Endpoint> endpoints;
  endpoints.reserve(hosts.size());
  for (const auto& h : hosts) endpoints.push_back(Endpoint::parse(h, cfg.port));

  CostMatrix raw;
  raw.hosts = hosts;
  raw.rtt_us.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n),
                    std::numeric_limits<double>::quiet_NaN());
  for (int i = 0; i < n; ++i) raw.at(i, i) = 0.0;
  if (resume_from != nullptr) {
    if (resume_from->n() != n) throw domain_error("resume matrix dimension does not match hostfile");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && std::isfinite(resume_from->at(i, j))) raw.at(i, j) = resume_from->at(i, j);
  }

  const int total_pairs = n * (n - 1);
  int pair_index = 0;
  auto probe_direction = [&](int i, int j) {
    ++pair_index;
    PairProgress pp{pair_index, total_pairs, hosts[static_cast<std::size_t>(i)],
                    hosts[static_cast<std::size_t>(j)], 0.0, false};
    if (std::isfinite(raw.at(i, j))) {
      pp.skipped = true;
      pp.rtt_estimate_us = raw.at(i, j);
      if (progress) progress(pp);
      return;
    }
    try {
      const ProbeSampleSet set = probe_pair(endpoints[static_cast<std::size_t>(i)],
                                            endpoints[static_cast<std::size_t>(j)], cfg,
                                            static_cast<std::uint8_t>(pair_index % 256));
      raw.at(i, j) = aggregate_rtt(set.rtt_us, cfg.percentile);
      pp.rtt_estimate_us = raw.at(i, j);
    } catch (const pair_unreachable_error& e) {
      throw matrix_build_error(e, raw);
    }
    if (progress) progress(pp);
  };

  // One pair at a time, both directions back to back, so probes never
  // interfere with each other.
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      probe_direction(i, j);
      probe_direction(j, i);
    }
  }

  CostMatrix result = symmetrize(raw);
  validate(result);
  return result;
}

}  // namespace rankweave
