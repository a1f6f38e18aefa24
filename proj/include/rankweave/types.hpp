// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace rankweave {

// Error categories map onto CLI exit codes: io_error -> 2,
// domain_error -> 3, net_error -> 4.
class domain_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class net_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Algorithm { Ring, HalvingDoubling, DoubleBinaryTree, BCube };
enum class CostMode { LatencyOnly, LatencyTimesSize };
enum class HdPairing { PaperFormula, XorPairing };

const char* to_string(Algorithm a);
const char* to_string(CostMode m);
const char* to_string(HdPairing p);
Algorithm algorithm_from_string(const std::string& s);   // ring|hd|dbt|bcube
CostMode cost_mode_from_string(const std::string& s);    // latency|latency-size
HdPairing hd_pairing_from_string(const std::string& s);  // paper|xor

/// Pairwise transfer-cost estimates between hosts (round-trip microseconds),
/// stored row-major: at(i, j) = RTT from host i to host j.
struct CostMatrix {
  std::vector<std::string> hosts;
  std::vector<double> rtt_us;

  CostMatrix() = default;
  CostMatrix(std::vector<std::string> host_ids, std::vector<std::vector<double>> rows);

  int n() const { return static_cast<int>(hosts.size()); }
  double at(int i, int j) const { return rtt_us[static_cast<std::size_t>(i) * hosts.size() + j]; }
  double& at(int i, int j) { return rtt_us[static_cast<std::size_t>(i) * hosts.size() + j]; }
  std::vector<std::vector<double>> rows() const;
};

/// Zero diagonal, nonnegative finite entries, dimensions consistent.
void validate(const CostMatrix& m);
bool is_symmetric(const CostMatrix& m);

/// Host order assignment: perm[rank] = original index of the host holding
/// that rank. Always a bijection on [0, n).
struct RankOrder {
  std::vector<int> perm;

  static RankOrder identity(int n);
  int size() const { return static_cast<int>(perm.size()); }
};

void validate(const RankOrder& order, int n);
RankOrder rotated(const RankOrder& order, int k);
RankOrder inverse(const RankOrder& order);

/// Algorithm selection plus the parameters the cost models need.
struct CollectiveSpec {
  Algorithm algorithm = Algorithm::Ring;
  int n = 0;                  // participating node count
  double size_bytes = 0.0;    // data size S per node
  int bcube_b = 2;            // peer-group size, BCube only
  CostMode cost_mode = CostMode::LatencyTimesSize;
  HdPairing hd_pairing = HdPairing::PaperFormula;
};

/// n >= 1; size > 0; power-of-2 node counts for halving-doubling and the
/// double binary tree; n a power of bcube_b for BCube.
void validate(const CollectiveSpec& spec);

bool is_power_of(long long n, long long base);
int ilog(long long n, long long base);  // exact logarithm; n must be a power of base

/// One point-to-point transfer in rank space. `parent` indexes the transfer
/// in the previous round that must complete first (critical-path schedules
/// only; -1 means none).
struct Transfer {
  int src = 0;
  int dst = 0;
  double bytes = 0.0;
  int parent = -1;
};

/// How a schedule's rounds turn into a completion cost.
enum class ScheduleSemantics {
  SequentialHops,         // hops execute one after another: total = sum of hops
  BulkSynchronousRounds,  // barrier per round: total = sum over rounds of round max
  CriticalPath,           // transfers chain via `parent`: total = heaviest chain
};

/// Explicit communication rounds for one collective run. Transfers are in
/// rank space; aliasing to canonical ranks has already been applied. The
/// double-binary-tree expansion keeps the self-edges its index arithmetic
/// produces for small N (they cost zero and carry no wire bytes) because
/// dropping them would break the dependency chains.
struct Schedule {
  Algorithm algorithm = Algorithm::Ring;
  int node_count = 0;
  ScheduleSemantics semantics = ScheduleSemantics::SequentialHops;
  std::vector<std::vector<Transfer>> rounds;
};

/// Total bytes crossing the wire; self-transfers move nothing.
double total_wire_bytes(const Schedule& s);

struct DistributionStats {
  double min = 0.0;
  double max = 0.0;
  double mean = 0.0;
  double stddev = 0.0;
  int count = 0;
};

}  // namespace rankweave
