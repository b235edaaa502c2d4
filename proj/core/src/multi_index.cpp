#include "polysos/multi_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace polysos {

MultiIndex MultiIndex::plus(const MultiIndex& o) const {
  if (size() != o.size()) throw std::invalid_argument("MultiIndex::plus: size mismatch");
  MultiIndex r;
  r.exponents.resize(exponents.size());
  for (size_t i = 0; i < exponents.size(); ++i) r.exponents[i] = exponents[i] + o.exponents[i];
  return r;
}

MultiIndex MultiIndex::doubled() const {
  MultiIndex r;
  r.exponents.resize(exponents.size());
  for (size_t i = 0; i < exponents.size(); ++i) r.exponents[i] = 2 * exponents[i];
  return r;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
  int da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  // Same grade: the monomial with the larger exponent on the earliest
  // differing indeterminate comes first (x1^2 before x1*x2 before x2^2).
  for (size_t i = 0; i < a.exponents.size(); ++i) {
    if (a.exponents[i] != b.exponents[i]) return a.exponents[i] > b.exponents[i];
  }
  return false;
}

IndeterminateSet::IndeterminateSet(std::vector<std::string> names) : names_(std::move(names)) {
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("IndeterminateSet: names must be distinct");
  for (const auto& n : names_)
    if (n.empty()) throw std::invalid_argument("IndeterminateSet: empty name");
}

int IndeterminateSet::index_of(const std::string& name) const {
  for (int i = 0; i < size(); ++i)
    if (names_[i] == name) return i;
  return -1;
}

DegreeRange::DegreeRange(int lo, int hi) : mindeg(lo), maxdeg(hi) {
  if (lo < 0 || hi < lo) throw std::invalid_argument("DegreeRange: need 0 <= mindeg <= maxdeg");
}

namespace {

void enumerate(int num_vars, int pos, int remaining_max, MultiIndex& current,
               std::vector<MultiIndex>& out, int mindeg) {
  if (pos == num_vars) {
    if (current.degree() >= mindeg) out.push_back(current);
    return;
  }
  for (int e = 0; e <= remaining_max; ++e) {
    current.exponents[pos] = e;
    enumerate(num_vars, pos + 1, remaining_max - e, current, out, mindeg);
  }
  current.exponents[pos] = 0;
}

}  // namespace

std::vector<MultiIndex> monomial_basis(int num_vars, const DegreeRange& range) {
  if (num_vars < 0) throw std::invalid_argument("monomial_basis: num_vars < 0");
  std::vector<MultiIndex> out;
  MultiIndex cur;
  cur.exponents.assign(num_vars, 0);
  if (num_vars == 0) {
    if (range.mindeg == 0) out.push_back(cur);
    return out;
  }
  enumerate(num_vars, 0, range.maxdeg, cur, out, range.mindeg);
  std::sort(out.begin(), out.end(), GradedLexLess{});
  return out;
}

std::vector<MultiIndex> monomial_basis(const IndeterminateSet& x, const DegreeRange& range) {
  return monomial_basis(x.size(), range);
}

}  // namespace polysos
