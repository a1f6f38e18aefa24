// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <vector>

#include "rankweave/types.hpp"

namespace rankweave {

/// Parse MPI-style hostfile text: one "host[:port]" per line, rank = line
/// index. Blank lines and '#' comments are skipped. Throws domain_error on
/// empty files, syntactically invalid endpoints, or duplicate entries.
std::vector<std::string> parse_hostfile(const std::string& text);

std::vector<std::string> read_hostfile(const std::string& path);
void write_hostfile(const std::string& path, const std::vector<std::string>& hosts);

/// Line i of the result is the host holding rank i: hosts[order.perm[i]].
std::vector<std::string> reorder_hosts(const std::vector<std::string>& hosts, const RankOrder& order);

}  // namespace rankweave
