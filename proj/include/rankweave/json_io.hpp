// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>

#include "rankweave/solver.hpp"
#include "rankweave/topology.hpp"
#include "rankweave/types.hpp"

namespace rankweave {

// Matrix file: { "hosts": [string...], "rtt_us": [[number...]...] }.
// Unprobed entries of a partial (resumable) matrix are JSON null and load
// as NaN.
std::string matrix_to_json(const CostMatrix& m);
CostMatrix matrix_from_json(const std::string& text);
CostMatrix load_matrix(const std::string& path);
void save_matrix(const std::string& path, const CostMatrix& m);

// Solution file: { "order": [int...], "cost": number, "method": string,
// "evaluations": int }.
std::string solution_to_json(const Solution& s);
Solution solution_from_json(const std::string& text);
Solution load_solution(const std::string& path);
void save_solution(const std::string& path, const Solution& s);

// Topology file: { "levels": [{"fanout": int, "latency_us": num,
// "bandwidth_Bpus": num, "oversub": num}...], "jitter": num, "seed": int }.
std::string topology_to_json(const TopologySpec& t);
TopologySpec topology_from_json(const std::string& text);
TopologySpec load_topology(const std::string& path);
void save_topology(const std::string& path, const TopologySpec& t);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace rankweave
