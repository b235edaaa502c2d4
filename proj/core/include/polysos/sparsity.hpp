#pragma once

#include <vector>

#include "polysos/multi_index.hpp"

namespace polysos {

/// Monomial sparsity: maps each monomial of a matrix-valued polynomial to
/// the set of entries where it appears ("polynomials with binary
/// coefficients"). Serves as an indefinite basis for polynomial expressions
/// and as the definite basis that fixes the coordinate order of a polynomial.
///
/// Frozen coordinate order: monomials ascending in graded-lex order; within
/// a monomial, entries ascending by column-major linear index (col*rows+row).
/// The SDP relaxation depends on this order; do not change it.
class MonomialSparsity {
 public:
  MonomialSparsity() : rows_(0), cols_(0) {}
  /// Canonicalizes: sorts monomials, sorts/dedups entries, drops monomials
  /// with empty incidence.
  MonomialSparsity(IndeterminateSet vars, int rows, int cols,
                   std::vector<MultiIndex> monomials,
                   std::vector<std::vector<int>> entries_per_monomial);

  /// Scalar pattern containing the given monomials at entry (0,0).
  static MonomialSparsity scalar(IndeterminateSet vars, std::vector<MultiIndex> monomials);
  /// Dense column pattern: every listed monomial present in every row.
  static MonomialSparsity dense_column(IndeterminateSet vars, int rows,
                                       const std::vector<MultiIndex>& monomials);
  /// Empty pattern of the given shape.
  static MonomialSparsity empty(IndeterminateSet vars, int rows, int cols);

  const IndeterminateSet& indeterminates() const { return vars_; }
  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_scalar_shape() const { return rows_ == 1 && cols_ == 1; }

  int num_monomials() const { return static_cast<int>(monomials_.size()); }
  const std::vector<MultiIndex>& monomials() const { return monomials_; }
  const MultiIndex& monomial(int m) const { return monomials_.at(m); }
  /// Column-major linear entry indices where monomial m appears, sorted.
  const std::vector<int>& incidence(int m) const { return entries_.at(m); }

  /// Total incidence count == number of coordinate slots.
  int nnz() const { return offsets_.empty() ? 0 : offsets_.back(); }
  /// Coordinate slot of (monomial index, position within its entry list).
  int slot(int m, int pos) const { return offsets_.at(m) + pos; }
  /// Inverse of slot: (monomial index, entry linear index).
  std::pair<int, int> slot_info(int s) const;

  /// Index of a monomial in the list, or -1.
  int find_monomial(const MultiIndex& alpha) const;
  /// Slot of (monomial, entry linear index), or -1 if absent.
  int find_slot(const MultiIndex& alpha, int entry) const;

  DegreeRange degree_range() const;  // of an empty pattern: [0, 0]

  /// Restriction to a single entry, as a scalar pattern.
  MonomialSparsity entry_pattern(int row, int col) const;

  bool operator==(const MonomialSparsity& o) const;
  bool operator!=(const MonomialSparsity& o) const { return !(*this == o); }

  /// True if every (monomial, entry) pair of this pattern appears in `other`
  /// (same shape and indeterminates required).
  bool subset_of(const MonomialSparsity& other) const;

 private:
  IndeterminateSet vars_;
  int rows_, cols_;
  std::vector<MultiIndex> monomials_;
  std::vector<std::vector<int>> entries_;
  std::vector<int> offsets_;  // size num_monomials()+1

  void rebuild_offsets();
};

/// Monomial-wise union of incidences. Shapes and indeterminates must match.
MonomialSparsity sparsity_union(const MonomialSparsity& a, const MonomialSparsity& b);

/// Product pattern under matrix-multiplication semantics (scalar operands
/// broadcast): monomials are pairwise exponent sums; entry (i,k) receives
/// alpha+beta whenever a has alpha at (i,j) and b has beta at (j,k).
MonomialSparsity sparsity_product(const MonomialSparsity& a, const MonomialSparsity& b);

/// Stacks patterns vertically into a single column-block pattern. All inputs
/// must share indeterminates and have a single column.
MonomialSparsity sparsity_vstack(const std::vector<MonomialSparsity>& blocks);

}  // namespace polysos
