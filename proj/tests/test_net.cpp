// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstring>
#include <thread>
#include <vector>

#include "rankweave/echo_agent.hpp"
#include "rankweave/prober.hpp"

using namespace rankweave;

namespace {

ProbeConfig quick_config(int probes = 50) {
  ProbeConfig cfg;
  cfg.probes_per_pair = probes;
  cfg.timeout = std::chrono::milliseconds(250);
  cfg.max_consecutive_losses = 10;
  return cfg;
}

}  // namespace

TEST_CASE("endpoint parsing") {
  const auto a = Endpoint::parse("10.0.0.1:18600", 1);
  CHECK(a.host == "10.0.0.1");
  CHECK(a.port == 18600);
  const auto b = Endpoint::parse("  somehost  ", 18515);
  CHECK(b.host == "somehost");
  CHECK(b.port == 18515);
  CHECK_THROWS_AS(Endpoint::parse("host:0", 1), domain_error);
  CHECK_THROWS_AS(Endpoint::parse("host:99999", 1), domain_error);
  CHECK_THROWS_AS(Endpoint::parse("host:abc", 1), domain_error);
  CHECK_THROWS_AS(Endpoint::parse(":123", 1), domain_error);
  CHECK_THROWS_AS(Endpoint::parse("   ", 1), domain_error);
}

TEST_CASE("echo agent reflects 4-byte datagrams and drops malformed ones") {
  EchoAgent agent(Endpoint{"127.0.0.1", 0});
  agent.start();
  const Endpoint agent_ep{"127.0.0.1", agent.port()};
  const sockaddr_in target = resolve_ipv4(agent_ep);

  UdpSocket client;
  client.set_recv_timeout(std::chrono::milliseconds(300));
  std::uint8_t buf[16];

  const auto payload = encode_probe(1, 2);
  client.send_to(payload.data(), payload.size(), target);
  auto got = client.recv_from(buf, sizeof(buf));
  REQUIRE(got.has_value());
  CHECK(got->first == 4);
  CHECK(std::memcmp(buf, payload.data(), 4) == 0);

  const std::uint8_t malformed[3] = {1, 2, 3};
  client.send_to(malformed, sizeof(malformed), target);
  CHECK(!client.recv_from(buf, sizeof(buf)).has_value());  // silently dropped

  agent.stop();
  CHECK(agent.echoed() == 1);
  CHECK(agent.dropped() == 1);
}

TEST_CASE("agent bind failure surfaces as net_error") {
  EchoAgent agent(Endpoint{"127.0.0.1", 0});
  CHECK_THROWS_AS(EchoAgent(Endpoint{"127.0.0.1", agent.port()}), net_error);
  CHECK_THROWS_AS(EchoAgent(Endpoint{"203.0.113.9", 18515}), net_error);  // not a local addr
}

TEST_CASE("concurrent senders each get their own payloads back") {
  EchoAgent agent(Endpoint{"127.0.0.1", 0});
  agent.start();
  const sockaddr_in target = resolve_ipv4(Endpoint{"127.0.0.1", agent.port()});

  constexpr int kSenders = 64;
  constexpr int kProbes = 25;
  std::atomic<int> mismatches{0};
  std::atomic<int> lost{0};
  std::vector<std::thread> threads;
  threads.reserve(kSenders);
  for (int s = 0; s < kSenders; ++s) {
    threads.emplace_back([&, s] {
      UdpSocket sock;
      sock.set_recv_timeout(std::chrono::milliseconds(500));
      std::uint8_t buf[16];
      for (int p = 0; p < kProbes; ++p) {
        const auto payload = encode_probe(static_cast<std::uint8_t>(s), static_cast<std::uint32_t>(p));
        sock.send_to(payload.data(), payload.size(), target);
        auto got = sock.recv_from(buf, sizeof(buf));
        if (!got) {
          ++lost;
          continue;
        }
        if (got->first != 4 || std::memcmp(buf, payload.data(), 4) != 0) ++mismatches;
      }
    });
  }
  for (auto& t : threads) t.join();
  agent.stop();
  CHECK(mismatches.load() == 0);          // UDP sockets never cross-deliver
  CHECK(lost.load() < kSenders * kProbes / 10);
  CHECK(agent.echoed() > 0);
}

TEST_CASE("probe_pair on loopback: every probe answered, sane RTTs") {
  EchoAgent agent(Endpoint{"127.0.0.1", 0});
  agent.start();
  const auto cfg = quick_config(100);
  const auto set = probe_pair(Endpoint{"127.0.0.1", 0}, Endpoint{"127.0.0.1", agent.port()}, cfg, 7);
  agent.stop();

  CHECK(set.attempted == 100);
  CHECK(set.lost == 0);
  CHECK(set.rtt_us.size() == 100);
  for (double v : set.rtt_us) {
    CHECK(v > 0.0);
    CHECK(v < 50'000.0);  // loopback: comfortably under 50 ms
  }
  CHECK(aggregate_rtt(set.rtt_us, 10) <= aggregate_rtt(set.rtt_us, 90));
}

TEST_CASE("probe_pair aborts early on a dead destination") {
  ProbeConfig cfg = quick_config(1000);
  cfg.timeout = std::chrono::milliseconds(20);
  cfg.max_consecutive_losses = 5;
  // port 9 (discard) on loopback: nothing answers
  CHECK_THROWS_AS(probe_pair(Endpoint{"127.0.0.1", 0}, Endpoint{"127.0.0.1", 9}, cfg),
                  pair_unreachable_error);
}

TEST_CASE("corrupted replies are discarded and count as losses") {
  // an anti-agent that always replies with a flipped payload
  UdpSocket bad;
  bad.bind(Endpoint{"127.0.0.1", 0});
  bad.set_recv_timeout(std::chrono::milliseconds(50));
  const std::uint16_t bad_port = bad.local_port();
  std::atomic<bool> stop{false};
  std::thread bad_thread([&] {
    std::uint8_t buf[16];
    while (!stop.load()) {
      auto got = bad.recv_from(buf, sizeof(buf));
      if (!got) continue;
      buf[0] ^= 0xff;
      bad.send_to(buf, got->first, got->second);
    }
  });

  ProbeConfig cfg = quick_config(3);
  cfg.timeout = std::chrono::milliseconds(30);
  CHECK_THROWS_AS(probe_pair(Endpoint{"127.0.0.1", 0}, Endpoint{"127.0.0.1", bad_port}, cfg),
                  pair_unreachable_error);
  stop.store(true);
  bad_thread.join();
}

TEST_CASE("build_cost_matrix over two loopback agents") {
  EchoAgent a(Endpoint{"127.0.0.1", 0});
  EchoAgent b(Endpoint{"127.0.0.2", 0});
  a.start();
  b.start();
  const std::vector<std::string> hosts{"127.0.0.1:" + std::to_string(a.port()),
                                       "127.0.0.2:" + std::to_string(b.port())};

  int probed = 0;
  const auto m = build_cost_matrix(hosts, quick_config(60), [&](const PairProgress& p) {
    CHECK(p.total_pairs == 2);
    if (!p.skipped) ++probed;
  });
  a.stop();
  b.stop();

  CHECK(probed == 2);
  validate(m);
  CHECK(is_symmetric(m));
  CHECK(m.n() == 2);
  CHECK(m.at(0, 1) > 0.0);
  CHECK(m.hosts == hosts);
}

TEST_CASE("build_cost_matrix resumes from a partial matrix") {
  EchoAgent a(Endpoint{"127.0.0.1", 0});
  a.start();
  const std::vector<std::string> hosts{"127.0.0.1:" + std::to_string(a.port()),
                                       "127.0.0.1:" + std::to_string(a.port()) + " "};
  // distinct lines, same agent; trim makes them the same endpoint
  CostMatrix partial;
  partial.hosts = hosts;
  partial.rtt_us = {0.0, 123.0, std::nan(""), 0.0};

  int probed = 0;
  const auto m = build_cost_matrix(hosts, quick_config(20),
                                   [&](const PairProgress& p) { probed += p.skipped ? 0 : 1; },
                                   &partial);
  a.stop();
  CHECK(probed == 1);  // only the missing direction
  CHECK(m.at(0, 1) == std::max(123.0, m.at(1, 0)));

  // a complete matrix resumes to zero probes
  int probed2 = 0;
  const auto m2 = build_cost_matrix(hosts, quick_config(20),
                                    [&](const PairProgress& p) { probed2 += p.skipped ? 0 : 1; }, &m);
  CHECK(probed2 == 0);
  CHECK(m2.rtt_us == m.rtt_us);
}

TEST_CASE("build_cost_matrix failure carries the partial matrix and names the pair") {
  EchoAgent a(Endpoint{"127.0.0.1", 0});
  a.start();
  ProbeConfig cfg = quick_config(5);
  cfg.timeout = std::chrono::milliseconds(20);
  cfg.max_consecutive_losses = 3;
  const std::vector<std::string> hosts{"127.0.0.1:" + std::to_string(a.port()), "127.0.0.1:9"};
  try {
    build_cost_matrix(hosts, cfg);
    FAIL("expected matrix_build_error");
  } catch (const matrix_build_error& e) {
    CHECK(e.src_host == hosts[0]);
    CHECK(e.dst_host == hosts[1]);
    CHECK(e.partial.n() == 2);
    CHECK(std::isfinite(e.partial.at(0, 0)));
    CHECK(!std::isfinite(e.partial.at(0, 1)));  // the failed direction stays unprobed
  }
  a.stop();
}

TEST_CASE("build_cost_matrix needs at least two hosts") {
  CHECK_THROWS_AS(build_cost_matrix({"127.0.0.1"}, quick_config()), domain_error);
}
