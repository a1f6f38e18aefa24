// SPDX-License-Identifier: Apache-2.0
#include "rankweave/smtlib.hpp"

#include <cstdio>
#include <functional>
#include <sstream>
#include <vector>

#include "rankweave/cost_model.hpp"

namespace rankweave {

namespace {

// SMT-LIB Real literals have no exponent form; print fixed-point and trim.
std::string real_literal(double v) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), "%.12f", v);
  std::string s(buf);
  const auto dot = s.find('.');
  auto last = s.find_last_not_of('0');
  if (last < dot + 1) last = dot + 1;
  s.erase(last + 1);
  return s;
}

struct Emitter {
  const CostMatrix& m;
  const CollectiveSpec& spec;
  int n;

  std::string rank(int i) const { return "r_" + std::to_string(alias_rank(i, n)); }

  // cost of moving `bytes` from rank i to rank j, via the flattened array
  std::string term(int i, int j, double bytes) const {
    const std::string sel = "(sel " + rank(i) + " " + rank(j) + ")";
    if (spec.cost_mode == CostMode::LatencyOnly) return sel;
    return "(* " + real_literal(bytes) + " " + sel + ")";
  }

  static std::string max_fold(const std::vector<std::string>& terms) {
    std::string acc = terms.front();
    for (std::size_t k = 1; k < terms.size(); ++k) acc = "(max2 " + acc + " " + terms[k] + ")";
    return acc;
  }

  std::string ring_objective() const {
    std::string acc = "(+";
    for (int i = 0; i < n; ++i) acc += " " + term(i, i - 1, spec.size_bytes);
    return acc + ")";
  }

  std::string hd_objective() const {
    std::string acc = "(+";
    const int rounds = ilog(n, 2);
    for (int i = 0; i < rounds; ++i) {
      const double bytes = round_bytes(spec.size_bytes, 2, i);
      const int stride = 1 << i;
      std::vector<std::string> terms;
      if (spec.hd_pairing == HdPairing::PaperFormula) {
        for (int j = 0; j < n / 2; ++j) terms.push_back(term(j, j + stride, bytes));
      } else {
        for (int j = 0; j < n; ++j) terms.push_back(term(j, j ^ stride, bytes));
      }
      acc += " " + max_fold(terms);
    }
    return acc + ")";
  }

  std::string bcube_objective() const {
    std::string acc = "(+";
    const int b = spec.bcube_b;
    const int rounds = ilog(n, b);
    long long stride = 1;
    for (int i = 0; i < rounds; ++i) {
      const double bytes = round_bytes(spec.size_bytes, b, i);
      std::vector<std::string> terms;
      for (int j = 0; j < n / b; ++j)
        for (int k = 1; k < b; ++k)
          terms.push_back(term(j, static_cast<int>((j + k * stride) % n), bytes));
      acc += " " + max_fold(terms);
      stride *= b;
    }
    return acc + ")";
  }

  std::string dbt_objective() const {
    const double half = spec.size_bytes / 2.0;
    std::function<std::string(int, int, int)> tree = [&](int i, int j, int shift) -> std::string {
      if (i >= j) return "0.0";
      const int mid = (i + j) / 2;
      const std::string left =
          "(+ " + term(mid + shift, (3 * i + j) / 2 - 1 + shift, half) + " " + tree(i, mid - 1, shift) + ")";
      const std::string right =
          "(+ " + term(mid + shift, (i + 3 * j) / 2 + 1 + shift, half) + " " + tree(mid + 1, j, shift) + ")";
      return "(max2 " + left + " " + right + ")";
    };
    return "(max2 " + tree(0, n - 1, 0) + " " + tree(0, n - 1, -1) + ")";
  }
};

}  // namespace

std::string emit_smtlib(const CostMatrix& m, const CollectiveSpec& spec,
                        std::optional<double> upper_bound, int emission_cap) {
  validate(spec);
  validate(m);
  if (m.n() != spec.n) throw domain_error("matrix dimension does not match spec.n");
  const int n = spec.n;
  if ((spec.algorithm == Algorithm::DoubleBinaryTree || spec.algorithm == Algorithm::BCube) &&
      n > emission_cap)
    throw domain_error(std::string("refusing ") + to_string(spec.algorithm) + " emission for N=" +
                       std::to_string(n) + " > cap " + std::to_string(emission_cap) +
                       " (term blow-up); raise the cap to force");

  const Emitter e{m, spec, n};
  std::ostringstream out;
  out << "; rank-order cost minimization\n";
  out << "; algorithm=" << to_string(spec.algorithm) << " n=" << n
      << " size_bytes=" << real_literal(spec.size_bytes) << " mode=" << to_string(spec.cost_mode);
  if (spec.algorithm == Algorithm::BCube) out << " b=" << spec.bcube_b;
  if (spec.algorithm == Algorithm::HalvingDoubling) out << " pairing=" << to_string(spec.hd_pairing);
  out << "\n";
  out << "; solve with an optimizing solver, e.g.: z3 <file>\n";
  out << "(set-option :produce-models true)\n";
  if (spec.algorithm != Algorithm::Ring)
    out << "(define-fun max2 ((a Real) (b Real)) Real (ite (>= a b) a b))\n";

  // Flattened cost constants: c[i*N + j] = rtt[i][j].
  out << "(declare-const c (Array Int Real))\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      out << "(assert (= (select c " << (i * n + j) << ") " << real_literal(m.at(i, j)) << "))\n";

  for (int i = 0; i < n; ++i) out << "(declare-const r_" << i << " Int)\n";
  for (int i = 0; i < n; ++i)
    out << "(assert (and (>= r_" << i << " 0) (< r_" << i << " " << n << ")))\n";
  out << "(assert (distinct";
  for (int i = 0; i < n; ++i) out << " r_" << i;
  out << "))\n";

  out << "(define-fun sel ((i Int) (j Int)) Real (select c (+ (* " << n << " i) j)))\n";

  std::string objective;
  switch (spec.algorithm) {
    case Algorithm::Ring: objective = e.ring_objective(); break;
    case Algorithm::HalvingDoubling: objective = e.hd_objective(); break;
    case Algorithm::DoubleBinaryTree: objective = e.dbt_objective(); break;
    case Algorithm::BCube: objective = e.bcube_objective(); break;
  }
  out << "(define-fun cost () Real " << objective << ")\n";
  if (upper_bound) out << "(assert (< cost " << real_literal(*upper_bound) << "))\n";
  out << "(minimize cost)\n";
  out << "(check-sat)\n";
  out << "(get-objectives)\n";
  out << "(get-model)\n";
  return out.str();
}

RankOrder parse_model_file(const std::string& text, int n) {
  RankOrder order;
  order.perm.assign(static_cast<std::size_t>(n), -1);
  std::istringstream in(text);
  std::string line;
  int assigned = 0;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == ';' || line[first] == '#') continue;
    int idx = -1, value = -1, consumed = -1;
    if (std::sscanf(line.c_str(), " r_%d = %d %n", &idx, &value, &consumed) != 2 ||
        consumed < 0 || line.find_first_not_of(" \t\r", static_cast<std::size_t>(consumed)) != std::string::npos)
      throw domain_error("model line not of the form 'r_<i> = <int>': '" + line + "'");
    if (idx < 0 || idx >= n) throw domain_error("model assigns r_" + std::to_string(idx) +
                                                " outside [0, " + std::to_string(n) + ")");
    if (order.perm[static_cast<std::size_t>(idx)] != -1)
      throw domain_error("model assigns r_" + std::to_string(idx) + " twice");
    order.perm[static_cast<std::size_t>(idx)] = value;
    ++assigned;
  }
  if (assigned != n)
    throw domain_error("model assigns " + std::to_string(assigned) + " of " + std::to_string(n) +
                       " rank variables");
  validate(order, n);
  return order;
}

bool balanced_sexpr(const std::string& text) {
  long depth = 0;
  bool in_comment = false;
  for (char ch : text) {
    if (in_comment) {
      if (ch == '\n') in_comment = false;
      continue;
    }
    if (ch == ';') in_comment = true;
    else if (ch == '(') ++depth;
    else if (ch == ')') {
      if (--depth < 0) return false;
    }
  }
  return depth == 0;
}

}  // namespace rankweave
