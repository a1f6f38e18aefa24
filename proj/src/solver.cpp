// SPDX-License-Identifier: Apache-2.0
#include "rankweave/solver.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rankweave/cost_model.hpp"
#include "rankweave/smtlib.hpp"
#include "rankweave/stats.hpp"

namespace rankweave {

namespace {

using Clock = std::chrono::steady_clock;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

// Stream k of the run seed; keeps restart RNGs independent of each other.
std::uint64_t substream(std::uint64_t seed, std::uint64_t k) { return splitmix64(seed ^ splitmix64(k)); }

bool lex_less(const std::vector<int>& a, const std::vector<int>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

struct Best {
  RankOrder order;
  double cost = 0.0;
  bool set = false;

  void offer(const RankOrder& o, double c) {
    if (!set || c < cost || (c == cost && lex_less(o.perm, order.perm))) {
      order = o;
      cost = c;
      set = true;
    }
  }
};

}  // namespace

void validate(const SolverConfig& cfg) {
  if (!(cfg.budget.count() > 0.0)) throw domain_error("solver budget must be > 0");
  if (!(cfg.cooling > 0.0 && cfg.cooling < 1.0)) throw domain_error("cooling factor must be in (0, 1)");
  if (cfg.restarts < 1) throw domain_error("restarts must be >= 1");
  if (cfg.brute_force_threshold < 2) throw domain_error("brute-force threshold must be >= 2");
}

const char* to_string(SolveMethod m) {
  switch (m) {
    case SolveMethod::BruteForce: return "BruteForce";
    case SolveMethod::Anneal: return "Anneal";
    case SolveMethod::External: return "External";
  }
  return "?";
}

SolveMethod solve_method_from_string(const std::string& s) {
  if (s == "BruteForce") return SolveMethod::BruteForce;
  if (s == "Anneal") return SolveMethod::Anneal;
  if (s == "External") return SolveMethod::External;
  throw domain_error("unknown solve method '" + s + "'");
}

Solution brute_force(const CostMatrix& m, const CollectiveSpec& spec, int threshold) {
  validate(spec);
  if (spec.n > threshold)
    throw domain_error("N=" + std::to_string(spec.n) + " exceeds the brute-force threshold " +
                       std::to_string(threshold) + "; use anneal");

  Solution sol;
  sol.method = SolveMethod::BruteForce;
  Best best;

  if (spec.algorithm == Algorithm::Ring && spec.n >= 2) {
    // Ring cost is rotation invariant, so pinning rank 0 to host 0 loses
    // nothing and divides the search space by N. Enumeration is in
    // lexicographic order, so the first minimum seen is the lex-smallest.
    RankOrder o = RankOrder::identity(spec.n);
    do {
      const double c = evaluate(m, o, spec);
      ++sol.evaluations;
      if (!best.set || c < best.cost) best.offer(o, c);
    } while (std::next_permutation(o.perm.begin() + 1, o.perm.end()));
  } else {
    RankOrder o = RankOrder::identity(spec.n);
    do {
      const double c = evaluate(m, o, spec);
      ++sol.evaluations;
      if (!best.set || c < best.cost) best.offer(o, c);
    } while (std::next_permutation(o.perm.begin(), o.perm.end()));
  }

  sol.order = best.order;
  sol.cost = best.cost;
  return sol;
}

RankOrder neighbor(const RankOrder& order, std::mt19937_64& rng) {
  const int n = order.size();
  if (n < 2) return order;
  RankOrder out = order;
  auto pos = [&](int lo, int hi) {  // inclusive bounds
    return static_cast<int>(std::uniform_int_distribution<int>(lo, hi)(rng));
  };
  switch (pos(0, 2)) {
    case 0: {  // swap two distinct positions
      const int i = pos(0, n - 1);
      int j = pos(0, n - 2);
      if (j >= i) ++j;
      std::swap(out.perm[static_cast<std::size_t>(i)], out.perm[static_cast<std::size_t>(j)]);
      break;
    }
    case 1: {  // reverse a random sub-array
      int i = pos(0, n - 1);
      int j = pos(0, n - 2);
      if (j >= i) ++j;
      if (i > j) std::swap(i, j);
      std::reverse(out.perm.begin() + i, out.perm.begin() + j + 1);
      break;
    }
    default: {  // shuffle a short random sub-array
      const int max_len = std::min(n, std::max(3, n / 8));
      const int len = pos(2, std::max(2, max_len));
      const int start = pos(0, n - len);
      std::shuffle(out.perm.begin() + start, out.perm.begin() + start + len, rng);
      break;
    }
  }
  return out;
}

Solution anneal(const CostMatrix& m, const CollectiveSpec& spec, const SolverConfig& cfg) {
  validate(spec);
  validate(cfg);
  if (m.n() != spec.n) throw domain_error("matrix dimension does not match spec.n");

  Solution sol;
  sol.method = SolveMethod::Anneal;
  const int n = spec.n;
  const int steps = cfg.steps_per_temperature > 0 ? cfg.steps_per_temperature : 4 * n;
  const auto start = Clock::now();

  double t0 = cfg.initial_temperature;
  if (t0 <= 0.0) {
    // Default scale: spread of the cost landscape under random orders.
    std::mt19937_64 rng(substream(cfg.seed, 0xfeedULL));
    std::vector<double> costs;
    costs.reserve(100);
    RankOrder o = RankOrder::identity(n);
    for (int k = 0; k < 100; ++k) {
      std::shuffle(o.perm.begin(), o.perm.end(), rng);
      costs.push_back(evaluate(m, o, spec));
      ++sol.evaluations;
    }
    t0 = distribution_stats(costs).stddev;
  }
  if (t0 <= 0.0) t0 = 1.0;  // flat landscape; any walk is as good as any other
  const double t_floor = t0 * 1e-6;

  Best global;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int r = 0; r < cfg.restarts; ++r) {
    std::mt19937_64 rng(substream(cfg.seed, static_cast<std::uint64_t>(r) + 1));
    RankOrder current = RankOrder::identity(n);
    if (r > 0) std::shuffle(current.perm.begin(), current.perm.end(), rng);
    double current_cost = evaluate(m, current, spec);
    ++sol.evaluations;
    Best local;
    local.offer(current, current_cost);

    const auto deadline =
        start + std::chrono::duration_cast<Clock::duration>(cfg.budget * (r + 1) / cfg.restarts);
    for (double t = t0; t > t_floor; t *= cfg.cooling) {
      if (Clock::now() >= deadline) break;
      for (int s = 0; s < steps; ++s) {
        RankOrder candidate = neighbor(current, rng);
        const double c = evaluate(m, candidate, spec);
        ++sol.evaluations;
        const double delta = c - current_cost;
        if (delta <= 0.0 || unit(rng) < std::exp(-delta / t)) {
          current = std::move(candidate);
          current_cost = c;
          local.offer(current, current_cost);
        }
      }
    }
    global.offer(local.order, local.cost);
  }

  sol.order = global.order;
  sol.cost = global.cost;
  return sol;
}

Solution two_stage_solve(const CostMatrix& m, const CollectiveSpec& spec, const SolverConfig& cfg,
                         const TwoStageOptions& opts) {
  validate(spec);
  validate(cfg);
  auto log = [&](const std::string& msg) {
    if (opts.log) opts.log(msg);
  };

  Solution stage1;
  if (spec.n <= 2) {
    stage1.order = RankOrder::identity(spec.n);
    stage1.cost = evaluate(m, stage1.order, spec);
    stage1.method = SolveMethod::BruteForce;
    stage1.evaluations = 1;
  } else if (spec.n <= cfg.brute_force_threshold) {
    stage1 = brute_force(m, spec, cfg.brute_force_threshold);
    log("stage 1: brute force over " + std::to_string(stage1.evaluations) + " orders, cost " +
        std::to_string(stage1.cost));
  } else {
    stage1 = anneal(m, spec, cfg);
    log("stage 1: anneal, " + std::to_string(stage1.evaluations) + " evaluations, cost " +
        std::to_string(stage1.cost));
  }

  if (!opts.emit_smt_path.empty()) {
    const std::string text = emit_smtlib(m, spec, stage1.cost);
    std::ofstream out(opts.emit_smt_path);
    if (!out) throw io_error("cannot write SMT file '" + opts.emit_smt_path + "'");
    out << text;
    log("stage 2: SMT-LIB encoding with bound cost < " + std::to_string(stage1.cost) +
        " written to " + opts.emit_smt_path);
  }

  if (!opts.external_model_path.empty()) {
    std::ifstream in(opts.external_model_path);
    if (!in) {
      log("warning: cannot read external model '" + opts.external_model_path +
          "'; keeping the stage-1 solution");
      return stage1;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    try {
      const RankOrder external = parse_model_file(buffer.str(), spec.n);
      const double cost = evaluate(m, external, spec);
      if (cost < stage1.cost) {
        log("external model improves cost " + std::to_string(stage1.cost) + " -> " +
            std::to_string(cost));
        return Solution{external, cost, SolveMethod::External, stage1.evaluations + 1};
      }
      log("warning: external model does not improve on the stage-1 cost; keeping stage 1");
    } catch (const domain_error& e) {
      log(std::string("warning: invalid external model: ") + e.what() +
          "; keeping the stage-1 solution");
    }
  }
  return stage1;
}

}  // namespace rankweave
