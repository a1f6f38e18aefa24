// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>

#include "rankweave/types.hpp"

namespace rankweave {

/// SMT-LIB2 encoding of the rank-order cost minimization for an optimizing
/// solver (Z3 / OptiMathSAT style `minimize`). Rank variables r_0..r_{N-1}
/// range over [0, N) and are pairwise distinct; the matrix is flattened into
/// an array constant c with c[i*N + j] = rtt[i][j], and every model term
/// reads it through select(c, r_i*N + r_j). When `upper_bound` is given, a
/// strict `(assert (< cost bound))` prunes the search. The tree and BCube
/// objectives blow up in term count, so their emission is refused above
/// `emission_cap` nodes.
std::string emit_smtlib(const CostMatrix& m, const CollectiveSpec& spec,
                        std::optional<double> upper_bound = std::nullopt, int emission_cap = 64);

/// Parse an external model file, one `r_<i> = <int>` line per rank
/// variable (blank lines and lines starting with ';' or '#' are ignored).
/// Throws domain_error unless the assignments form a permutation of [0, n).
RankOrder parse_model_file(const std::string& text, int n);

/// True when every '(' in the text has a matching ')' (';' comments are
/// skipped). Exposed for conformance checks.
bool balanced_sexpr(const std::string& text);

}  // namespace rankweave
