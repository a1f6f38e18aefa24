// SPDX-License-Identifier: Apache-2.0
#include "rankweave/hostfile.hpp"

#include <fstream>
#include <sstream>
#include <unordered_set>

#include "rankweave/net.hpp"

namespace rankweave {

std::vector<std::string> parse_hostfile(const std::string& text) {
  std::vector<std::string> hosts;
  std::unordered_set<std::string> seen;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    const auto last = line.find_last_not_of(" \t\r");
    const std::string entry = line.substr(first, last - first + 1);
    Endpoint::parse(entry, 1);  // syntax check only; throws domain_error
    if (!seen.insert(entry).second)
      throw domain_error("duplicate host '" + entry + "' at line " + std::to_string(line_no));
    hosts.push_back(entry);
  }
  if (hosts.empty()) throw domain_error("hostfile contains no hosts");
  return hosts;
}

std::vector<std::string> read_hostfile(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw io_error("cannot read hostfile '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_hostfile(buffer.str());
}

void write_hostfile(const std::string& path, const std::vector<std::string>& hosts) {
  std::ofstream out(path);
  if (!out) throw io_error("cannot write hostfile '" + path + "'");
  for (const auto& h : hosts) out << h << "\n";
  if (!out) throw io_error("failed writing hostfile '" + path + "'");
}

std::vector<std::string> reorder_hosts(const std::vector<std::string>& hosts, const RankOrder& order) {
  validate(order, static_cast<int>(hosts.size()));
  std::vector<std::string> out;
  out.reserve(hosts.size());
  for (int i = 0; i < order.size(); ++i)
    out.push_back(hosts[static_cast<std::size_t>(order.perm[static_cast<std::size_t>(i)])]);
  return out;
}

}  // namespace rankweave
