// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "rankweave/simulate.hpp"
#include "test_support.hpp"

using namespace rankweave;
using test::random_order;

namespace {

CollectiveSpec spec_of(Algorithm a, int n, double size, HdPairing pairing = HdPairing::PaperFormula) {
  CollectiveSpec s;
  s.algorithm = a;
  s.n = n;
  s.size_bytes = size;
  s.hd_pairing = pairing;
  return s;
}

}  // namespace

TEST_CASE("single transfer sees full capacity: latency + bytes/bandwidth") {
  TopologySpec topo;
  topo.levels.push_back({2, 1.0, 100.0, 1.0});
  // ring on 2 nodes: two hops, each alone in its round: 2 * (1 + 1000/100)
  const double t = simulate_collective(topo, RankOrder::identity(2), spec_of(Algorithm::Ring, 2, 1000.0));
  CHECK(t == 22.0);
}

TEST_CASE("transfers sharing an oversubscribed uplink get half the capacity each") {
  TopologySpec topo;
  topo.levels.push_back({2, 1.0, 100.0, 1.0});   // racks of 2, access 100 B/us
  topo.levels.push_back({2, 10.0, 100.0, 2.0});  // rack uplink capacity 100/2 = 50

  // xor pairing, N=4, S=1000:
  //  round 0 (distance 1): intra-rack pairs, no sharing: max = 1 + 500/100 = 6
  //  round 1 (distance 2): (0,2) and (1,3) share rack uplinks: rate
  //  min(100, 50/2) = 25: max = 11 + 250/25 = 21
  const double t = simulate_collective(
      topo, RankOrder::identity(4),
      spec_of(Algorithm::HalvingDoubling, 4, 1000.0, HdPairing::XorPairing));
  CHECK(t == 27.0);

  // with rack-local ordering broken, round 0 also crosses racks and gets slower
  const double worse = simulate_collective(
      topo, RankOrder{{0, 2, 1, 3}},
      spec_of(Algorithm::HalvingDoubling, 4, 1000.0, HdPairing::XorPairing));
  CHECK(worse > t);
}

TEST_CASE("flat uniform topology: every rank order simulates identically") {
  TopologySpec topo;
  topo.levels.push_back({8, 2.0, 50.0, 1.0});
  std::mt19937_64 rng(51);
  for (auto algo : {Algorithm::Ring, Algorithm::HalvingDoubling, Algorithm::DoubleBinaryTree}) {
    const auto spec = spec_of(algo, 8, 4096.0);
    const double base = simulate_collective(topo, RankOrder::identity(8), spec);
    for (int k = 0; k < 20; ++k)
      CHECK(simulate_collective(topo, random_order(8, rng), spec) == base);
  }
}

TEST_CASE("simulated time is monotone in data size and link latency") {
  TopologySpec topo;
  topo.levels.push_back({4, 1.0, 100.0, 1.0});
  topo.levels.push_back({4, 15.0, 100.0, 4.0});
  topo.jitter = 0.05;
  topo.seed = 8;
  std::mt19937_64 rng(53);
  const auto order = random_order(16, rng);

  double prev = 0.0;
  for (double size : {1e3, 1e4, 1e5, 1e6}) {
    const double t = simulate_collective(topo, order, spec_of(Algorithm::Ring, 16, size));
    CHECK(t > prev);
    prev = t;
  }

  auto slower = topo;
  slower.levels[1].latency_us *= 3.0;
  CHECK(simulate_collective(slower, order, spec_of(Algorithm::HalvingDoubling, 16, 1e5)) >=
        simulate_collective(topo, order, spec_of(Algorithm::HalvingDoubling, 16, 1e5)));
}

TEST_CASE("simulation rejects mismatched node counts") {
  TopologySpec topo;
  topo.levels.push_back({4, 1.0, 100.0, 1.0});
  CHECK_THROWS_AS(simulate_collective(topo, RankOrder::identity(8), spec_of(Algorithm::Ring, 8, 1.0)),
                  domain_error);
}
