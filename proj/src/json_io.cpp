// SPDX-License-Identifier: Apache-2.0
#include "rankweave/json_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

namespace rankweave {

using nlohmann::json;

namespace {

json parse(const std::string& text, const char* what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw io_error(std::string("malformed JSON in ") + what);
  return j;
}

}  // namespace

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw io_error("failed writing '" + path + "'");
}

std::string matrix_to_json(const CostMatrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.n(); ++i) {
    json row = json::array();
    for (int j = 0; j < m.n(); ++j) {
      const double v = m.at(i, j);
      if (std::isfinite(v)) row.push_back(v);
      else row.push_back(nullptr);  // unprobed entry of a partial matrix
    }
    rows.push_back(std::move(row));
  }
  return json{{"hosts", m.hosts}, {"rtt_us", rows}}.dump(2) + "\n";
}

CostMatrix matrix_from_json(const std::string& text) {
  const json j = parse(text, "matrix file");
  try {
    CostMatrix m;
    m.hosts = j.at("hosts").get<std::vector<std::string>>();
    const auto& rows = j.at("rtt_us");
    if (!rows.is_array() || rows.size() != m.hosts.size())
      throw io_error("matrix file: rtt_us must have one row per host");
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != m.hosts.size())
        throw io_error("matrix file: rtt_us is not square");
      for (const auto& v : row)
        m.rtt_us.push_back(v.is_null() ? std::numeric_limits<double>::quiet_NaN()
                                       : v.get<double>());
    }
    return m;
  } catch (const json::exception& e) {
    throw io_error(std::string("matrix file: ") + e.what());
  }
}

CostMatrix load_matrix(const std::string& path) { return matrix_from_json(read_text_file(path)); }
void save_matrix(const std::string& path, const CostMatrix& m) { write_text_file(path, matrix_to_json(m)); }

std::string solution_to_json(const Solution& s) {
  return json{{"order", s.order.perm},
              {"cost", s.cost},
              {"method", to_string(s.method)},
              {"evaluations", s.evaluations}}
             .dump(2) +
         "\n";
}

Solution solution_from_json(const std::string& text) {
  const json j = parse(text, "solution file");
  try {
    Solution s;
    s.order.perm = j.at("order").get<std::vector<int>>();
    s.cost = j.value("cost", 0.0);
    s.method = solve_method_from_string(j.value("method", "BruteForce"));
    s.evaluations = j.value("evaluations", std::uint64_t{0});
    return s;
  } catch (const json::exception& e) {
    throw io_error(std::string("solution file: ") + e.what());
  }
}

Solution load_solution(const std::string& path) { return solution_from_json(read_text_file(path)); }
void save_solution(const std::string& path, const Solution& s) { write_text_file(path, solution_to_json(s)); }

std::string topology_to_json(const TopologySpec& t) {
  json levels = json::array();
  for (const auto& lvl : t.levels)
    levels.push_back(json{{"fanout", lvl.fanout},
                          {"latency_us", lvl.latency_us},
                          {"bandwidth_Bpus", lvl.bandwidth_Bpus},
                          {"oversub", lvl.oversub}});
  return json{{"levels", levels}, {"jitter", t.jitter}, {"seed", t.seed}}.dump(2) + "\n";
}

TopologySpec topology_from_json(const std::string& text) {
  const json j = parse(text, "topology file");
  try {
    TopologySpec t;
    for (const auto& lvl : j.at("levels")) {
      TopologyLevel level;
      level.fanout = lvl.at("fanout").get<int>();
      level.latency_us = lvl.at("latency_us").get<double>();
      level.bandwidth_Bpus = lvl.at("bandwidth_Bpus").get<double>();
      level.oversub = lvl.value("oversub", 1.0);
      t.levels.push_back(level);
    }
    t.jitter = j.value("jitter", 0.0);
    t.seed = j.value("seed", std::uint64_t{0});
    return t;
  } catch (const json::exception& e) {
    throw io_error(std::string("topology file: ") + e.what());
  }
}

TopologySpec load_topology(const std::string& path) { return topology_from_json(read_text_file(path)); }
void save_topology(const std::string& path, const TopologySpec& t) { write_text_file(path, topology_to_json(t)); }

}  // namespace rankweave
