#pragma once

#include <string>
#include <vector>

namespace polysos {

/// Exponent tuple of a monomial in a fixed number of indeterminates.
/// The canonical global order is graded lexicographic: grade first (total
/// degree), ties broken so that within a grade the leading indeterminate's
/// exponent decreases (1, x1, x2, x1^2, x1*x2, x2^2, ...). All monomial
/// lists in this library are stored strictly increasing in this order.
struct MultiIndex {
  std::vector<int> exponents;

  MultiIndex() = default;
  explicit MultiIndex(std::vector<int> e) : exponents(std::move(e)) {}

  int size() const { return static_cast<int>(exponents.size()); }
  int degree() const {
    int d = 0;
    for (int e : exponents) d += e;
    return d;
  }
  bool is_constant() const { return degree() == 0; }

  MultiIndex plus(const MultiIndex& o) const;
  /// Doubled exponents (the diagonal Gram pairing of a monomial with itself).
  MultiIndex doubled() const;

  bool operator==(const MultiIndex& o) const { return exponents == o.exponents; }
  bool operator!=(const MultiIndex& o) const { return !(*this == o); }
};

/// Canonical order. Total: exactly one of a<b, a==b, b<a holds.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct GradedLexLess {
  bool operator()(const MultiIndex& a, const MultiIndex& b) const {
    return graded_lex_less(a, b);
  }
};

/// Ordered set of distinct indeterminate names; the order fixes exponent
/// positions for every MultiIndex over this set.
class IndeterminateSet {
 public:
  IndeterminateSet() = default;
  explicit IndeterminateSet(std::vector<std::string> names);

  int size() const { return static_cast<int>(names_.size()); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(int i) const { return names_.at(i); }
  /// Position of a name, or -1 if absent.
  int index_of(const std::string& name) const;

  bool operator==(const IndeterminateSet& o) const { return names_ == o.names_; }
  bool operator!=(const IndeterminateSet& o) const { return !(*this == o); }

 private:
  std::vector<std::string> names_;
};

struct DegreeRange {
  int mindeg = 0;
  int maxdeg = 0;
  DegreeRange() = default;
  DegreeRange(int lo, int hi);
};

/// All multi-indices over `num_vars` indeterminates with total degree in
/// `range`, in canonical order. For range [0,d] the count is C(l+d, d).
std::vector<MultiIndex> monomial_basis(int num_vars, const DegreeRange& range);
std::vector<MultiIndex> monomial_basis(const IndeterminateSet& x, const DegreeRange& range);

}  // namespace polysos
