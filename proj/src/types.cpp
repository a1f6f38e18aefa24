// SPDX-License-Identifier: Apache-2.0
#include "rankweave/types.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rankweave {

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Ring: return "ring";
    case Algorithm::HalvingDoubling: return "hd";
    case Algorithm::DoubleBinaryTree: return "dbt";
    case Algorithm::BCube: return "bcube";
  }
  return "?";
}

const char* to_string(CostMode m) {
  return m == CostMode::LatencyOnly ? "latency" : "latency-size";
}

const char* to_string(HdPairing p) {
  return p == HdPairing::PaperFormula ? "paper" : "xor";
}

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "ring") return Algorithm::Ring;
  if (s == "hd") return Algorithm::HalvingDoubling;
  if (s == "dbt") return Algorithm::DoubleBinaryTree;
  if (s == "bcube") return Algorithm::BCube;
  throw domain_error("unknown algorithm '" + s + "' (expected ring|hd|dbt|bcube)");
}

CostMode cost_mode_from_string(const std::string& s) {
  if (s == "latency") return CostMode::LatencyOnly;
  if (s == "latency-size") return CostMode::LatencyTimesSize;
  throw domain_error("unknown cost mode '" + s + "' (expected latency|latency-size)");
}

HdPairing hd_pairing_from_string(const std::string& s) {
  if (s == "paper") return HdPairing::PaperFormula;
  if (s == "xor") return HdPairing::XorPairing;
  throw domain_error("unknown pairing '" + s + "' (expected paper|xor)");
}

CostMatrix::CostMatrix(std::vector<std::string> host_ids, std::vector<std::vector<double>> rows)
    : hosts(std::move(host_ids)) {
  const std::size_t n = hosts.size();
  if (rows.size() != n)
    throw domain_error("matrix has " + std::to_string(rows.size()) + " rows for " +
                       std::to_string(n) + " hosts");
  rtt_us.reserve(n * n);
  for (const auto& row : rows) {
    if (row.size() != n) throw domain_error("matrix is not square");
    rtt_us.insert(rtt_us.end(), row.begin(), row.end());
  }
}

std::vector<std::vector<double>> CostMatrix::rows() const {
  std::vector<std::vector<double>> out(hosts.size());
  for (int i = 0; i < n(); ++i)
    out[i].assign(rtt_us.begin() + static_cast<std::ptrdiff_t>(i) * n(),
                  rtt_us.begin() + static_cast<std::ptrdiff_t>(i + 1) * n());
  return out;
}

void validate(const CostMatrix& m) {
  const std::size_t n = m.hosts.size();
  if (n == 0) throw domain_error("cost matrix is empty");
  if (m.rtt_us.size() != n * n) throw domain_error("cost matrix storage is not n*n");
  for (int i = 0; i < m.n(); ++i) {
    for (int j = 0; j < m.n(); ++j) {
      const double v = m.at(i, j);
      if (!std::isfinite(v) || v < 0.0)
        throw domain_error("rtt[" + std::to_string(i) + "][" + std::to_string(j) +
                           "] is not a finite nonnegative value");
      if (i == j && v != 0.0)
        throw domain_error("rtt[" + std::to_string(i) + "][" + std::to_string(i) +
                           "] must be 0");
    }
  }
}

bool is_symmetric(const CostMatrix& m) {
  for (int i = 0; i < m.n(); ++i)
    for (int j = i + 1; j < m.n(); ++j)
      if (m.at(i, j) != m.at(j, i)) return false;
  return true;
}

RankOrder RankOrder::identity(int n) {
  RankOrder o;
  o.perm.resize(static_cast<std::size_t>(n));
  std::iota(o.perm.begin(), o.perm.end(), 0);
  return o;
}

void validate(const RankOrder& order, int n) {
  if (order.size() != n)
    throw domain_error("rank order has " + std::to_string(order.size()) +
                       " entries, expected " + std::to_string(n));
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : order.perm) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw domain_error("rank order is not a permutation of [0, " + std::to_string(n) + ")");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

RankOrder rotated(const RankOrder& order, int k) {
  const int n = order.size();
  RankOrder out;
  out.perm.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) out.perm[static_cast<std::size_t>(i)] = order.perm[static_cast<std::size_t>(((i + k) % n + n) % n)];
  return out;
}

RankOrder inverse(const RankOrder& order) {
  RankOrder out;
  out.perm.resize(order.perm.size());
  for (int i = 0; i < order.size(); ++i) out.perm[static_cast<std::size_t>(order.perm[static_cast<std::size_t>(i)])] = i;
  return out;
}

bool is_power_of(long long n, long long base) {
  if (base < 2 || n < 1) return false;
  while (n % base == 0) n /= base;
  return n == 1;
}

int ilog(long long n, long long base) {
  if (!is_power_of(n, base)) throw domain_error("ilog: n is not a power of base");
  int k = 0;
  while (n > 1) {
    n /= base;
    ++k;
  }
  return k;
}

void validate(const CollectiveSpec& spec) {
  if (spec.n < 1) throw domain_error("node count must be >= 1");
  if (!(spec.size_bytes > 0.0)) throw domain_error("data size must be > 0");
  if (spec.n == 1) return;  // degenerate single-node collective, cost 0 by definition
  switch (spec.algorithm) {
    case Algorithm::Ring:
      break;
    case Algorithm::HalvingDoubling:
    case Algorithm::DoubleBinaryTree:
      if (!is_power_of(spec.n, 2))
        throw domain_error(std::string(to_string(spec.algorithm)) + " requires N a power of 2, got " +
                           std::to_string(spec.n));
      break;
    case Algorithm::BCube:
      if (spec.bcube_b < 2) throw domain_error("BCube group size B must be >= 2");
      if (!is_power_of(spec.n, spec.bcube_b))
        throw domain_error("BCube requires N a power of B=" + std::to_string(spec.bcube_b) +
                           ", got " + std::to_string(spec.n));
      break;
  }
}

double total_wire_bytes(const Schedule& s) {
  double total = 0.0;
  for (const auto& round : s.rounds)
    for (const auto& t : round)
      if (t.src != t.dst) total += t.bytes;
  return total;
}

}  // namespace rankweave
