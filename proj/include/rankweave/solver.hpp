// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <random>
#include <string>

#include "rankweave/types.hpp"

namespace rankweave {

struct SolverConfig {
  std::chrono::duration<double> budget{10.0};  // wall-clock cap for anneal()
  std::uint64_t seed = 0;
  double initial_temperature = 0.0;  // <= 0: stddev of 100 random-order costs
  double cooling = 0.995;            // geometric factor per temperature level
  int steps_per_temperature = 0;     // <= 0: 4 * N
  int restarts = 4;
  int brute_force_threshold = 10;    // max N handed to exhaustive search
};

void validate(const SolverConfig& cfg);

enum class SolveMethod { BruteForce, Anneal, External };
const char* to_string(SolveMethod m);
SolveMethod solve_method_from_string(const std::string& s);

struct Solution {
  RankOrder order;
  double cost = 0.0;
  SolveMethod method = SolveMethod::BruteForce;
  std::uint64_t evaluations = 0;
};

/// Exact global minimum by enumeration; N must not exceed the brute-force
/// threshold. Ring enumeration pins rank 0 to host 0 (rotation symmetry
/// makes this lossless). Ties resolve to the lexicographically smallest
/// permutation.
Solution brute_force(const CostMatrix& m, const CollectiveSpec& spec,
                     int threshold = SolverConfig{}.brute_force_threshold);

/// One random mutation: with equal probability swap two positions, reverse
/// a random sub-array, or shuffle a random sub-array of length at most
/// max(3, N/8). Always returns a valid permutation.
RankOrder neighbor(const RankOrder& order, std::mt19937_64& rng);

/// Simulated annealing with Metropolis acceptance and geometric cooling.
/// Restart 0 starts from the identity order, so the result never costs more
/// than the identity arrangement. Deterministic for a fixed seed provided
/// the schedule completes within the time budget.
Solution anneal(const CostMatrix& m, const CollectiveSpec& spec, const SolverConfig& cfg);

struct TwoStageOptions {
  std::string emit_smt_path;        // when set, write the SMT-LIB encoding here
  std::string external_model_path;  // when set, adopt this model if strictly better
  std::function<void(const std::string&)> log;  // human-readable progress/warnings
};

/// Stage 1 produces C_0 (brute force when N is small, annealing otherwise);
/// stage 2 emits an SMT-LIB encoding constrained by cost < C_0 for optional
/// external refinement. A supplied external model wins only if it parses to
/// a valid permutation with strictly lower verified cost; otherwise the
/// stage-1 solution is returned.
Solution two_stage_solve(const CostMatrix& m, const CollectiveSpec& spec, const SolverConfig& cfg,
                         const TwoStageOptions& opts = {});

}  // namespace rankweave
