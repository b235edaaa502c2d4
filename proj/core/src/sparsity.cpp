#include "polysos/sparsity.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace polysos {

MonomialSparsity::MonomialSparsity(IndeterminateSet vars, int rows, int cols,
                                   std::vector<MultiIndex> monomials,
                                   std::vector<std::vector<int>> entries_per_monomial)
    : vars_(std::move(vars)), rows_(rows), cols_(cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("MonomialSparsity: negative shape");
  if (monomials.size() != entries_per_monomial.size())
    throw std::invalid_argument("MonomialSparsity: monomial/incidence count mismatch");

  std::map<MultiIndex, std::set<int>, GradedLexLess> merged;
  for (size_t i = 0; i < monomials.size(); ++i) {
    if (monomials[i].size() != vars_.size())
      throw std::invalid_argument("MonomialSparsity: exponent tuple length mismatch");
    for (int e : entries_per_monomial[i]) {
      if (e < 0 || e >= rows * cols)
        throw std::invalid_argument("MonomialSparsity: entry index out of bounds");
      merged[monomials[i]].insert(e);
    }
  }
  for (auto& [alpha, ents] : merged) {
    if (ents.empty()) continue;
    monomials_.push_back(alpha);
    entries_.emplace_back(ents.begin(), ents.end());
  }
  rebuild_offsets();
}

void MonomialSparsity::rebuild_offsets() {
  offsets_.assign(monomials_.size() + 1, 0);
  for (size_t m = 0; m < monomials_.size(); ++m)
    offsets_[m + 1] = offsets_[m] + static_cast<int>(entries_[m].size());
}

MonomialSparsity MonomialSparsity::scalar(IndeterminateSet vars,
                                          std::vector<MultiIndex> monomials) {
  std::vector<std::vector<int>> inc(monomials.size(), std::vector<int>{0});
  return MonomialSparsity(std::move(vars), 1, 1, std::move(monomials), std::move(inc));
}

MonomialSparsity MonomialSparsity::dense_column(IndeterminateSet vars, int rows,
                                                const std::vector<MultiIndex>& monomials) {
  std::vector<int> all(rows);
  for (int i = 0; i < rows; ++i) all[i] = i;
  std::vector<std::vector<int>> inc(monomials.size(), all);
  return MonomialSparsity(std::move(vars), rows, 1, monomials, std::move(inc));
}

MonomialSparsity MonomialSparsity::empty(IndeterminateSet vars, int rows, int cols) {
  return MonomialSparsity(std::move(vars), rows, cols, {}, {});
}

std::pair<int, int> MonomialSparsity::slot_info(int s) const {
  if (s < 0 || s >= nnz()) throw std::out_of_range("MonomialSparsity::slot_info");
  auto it = std::upper_bound(offsets_.begin(), offsets_.end(), s);
  int m = static_cast<int>(it - offsets_.begin()) - 1;
  return {m, entries_[m][s - offsets_[m]]};
}

int MonomialSparsity::find_monomial(const MultiIndex& alpha) const {
  auto it = std::lower_bound(monomials_.begin(), monomials_.end(), alpha, GradedLexLess{});
  if (it != monomials_.end() && *it == alpha)
    return static_cast<int>(it - monomials_.begin());
  return -1;
}

int MonomialSparsity::find_slot(const MultiIndex& alpha, int entry) const {
  int m = find_monomial(alpha);
  if (m < 0) return -1;
  const auto& ents = entries_[m];
  auto it = std::lower_bound(ents.begin(), ents.end(), entry);
  if (it != ents.end() && *it == entry)
    return offsets_[m] + static_cast<int>(it - ents.begin());
  return -1;
}

DegreeRange MonomialSparsity::degree_range() const {
  if (monomials_.empty()) return DegreeRange(0, 0);
  return DegreeRange(monomials_.front().degree(), monomials_.back().degree());
}

MonomialSparsity MonomialSparsity::entry_pattern(int row, int col) const {
  int lin = col * rows_ + row;
  std::vector<MultiIndex> monos;
  for (int m = 0; m < num_monomials(); ++m)
    if (std::binary_search(entries_[m].begin(), entries_[m].end(), lin))
      monos.push_back(monomials_[m]);
  return MonomialSparsity::scalar(vars_, std::move(monos));
}

bool MonomialSparsity::operator==(const MonomialSparsity& o) const {
  return vars_ == o.vars_ && rows_ == o.rows_ && cols_ == o.cols_ &&
         monomials_ == o.monomials_ && entries_ == o.entries_;
}

bool MonomialSparsity::subset_of(const MonomialSparsity& other) const {
  if (vars_ != other.vars_ || rows_ != other.rows_ || cols_ != other.cols_) return false;
  for (int m = 0; m < num_monomials(); ++m) {
    int om = other.find_monomial(monomials_[m]);
    if (om < 0) return false;
    const auto& oe = other.entries_[om];
    for (int e : entries_[m])
      if (!std::binary_search(oe.begin(), oe.end(), e)) return false;
  }
  return true;
}

MonomialSparsity sparsity_union(const MonomialSparsity& a, const MonomialSparsity& b) {
  if (a.indeterminates() != b.indeterminates())
    throw std::invalid_argument("sparsity_union: indeterminate sets differ");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("sparsity_union: shape mismatch");
  std::vector<MultiIndex> monos;
  std::vector<std::vector<int>> inc;
  for (int m = 0; m < a.num_monomials(); ++m) {
    monos.push_back(a.monomial(m));
    inc.push_back(a.incidence(m));
  }
  for (int m = 0; m < b.num_monomials(); ++m) {
    monos.push_back(b.monomial(m));
    inc.push_back(b.incidence(m));
  }
  return MonomialSparsity(a.indeterminates(), a.rows(), a.cols(), std::move(monos),
                          std::move(inc));
}

MonomialSparsity sparsity_product(const MonomialSparsity& a, const MonomialSparsity& b) {
  if (a.indeterminates() != b.indeterminates())
    throw std::invalid_argument("sparsity_product: indeterminate sets differ");
  const bool a_scalar = a.is_scalar_shape();
  const bool b_scalar = b.is_scalar_shape();
  int rows, cols, inner;
  if (a_scalar) {
    rows = b.rows(); cols = b.cols(); inner = 0;
  } else if (b_scalar) {
    rows = a.rows(); cols = a.cols(); inner = 0;
  } else if (a.cols() == b.rows()) {
    rows = a.rows(); cols = b.cols(); inner = a.cols();
  } else {
    throw std::invalid_argument("sparsity_product: shape mismatch");
  }

  std::vector<MultiIndex> monos;
  std::vector<std::vector<int>> inc;
  for (int ma = 0; ma < a.num_monomials(); ++ma) {
    for (int mb = 0; mb < b.num_monomials(); ++mb) {
      MultiIndex sum = a.monomial(ma).plus(b.monomial(mb));
      std::vector<int> ents;
      if (a_scalar || b_scalar) {
        const auto& other = a_scalar ? b.incidence(mb) : a.incidence(ma);
        ents = other;
      } else {
        for (int ea : a.incidence(ma)) {
          int i = ea % a.rows(), j = ea / a.rows();
          for (int eb : b.incidence(mb)) {
            int j2 = eb % b.rows(), k = eb / b.rows();
            if (j == j2) ents.push_back(k * rows + i);
          }
        }
        (void)inner;
      }
      if (!ents.empty()) {
        monos.push_back(std::move(sum));
        inc.push_back(std::move(ents));
      }
    }
  }
  return MonomialSparsity(a.indeterminates(), rows, cols, std::move(monos), std::move(inc));
}

MonomialSparsity sparsity_vstack(const std::vector<MonomialSparsity>& blocks) {
  if (blocks.empty()) throw std::invalid_argument("sparsity_vstack: no blocks");
  const IndeterminateSet& vars = blocks.front().indeterminates();
  int total_rows = 0;
  for (const auto& blk : blocks) {
    if (blk.indeterminates() != vars)
      throw std::invalid_argument("sparsity_vstack: indeterminate sets differ");
    if (blk.cols() != 1) throw std::invalid_argument("sparsity_vstack: blocks must be columns");
    total_rows += blk.rows();
  }
  std::vector<MultiIndex> monos;
  std::vector<std::vector<int>> inc;
  int row0 = 0;
  for (const auto& blk : blocks) {
    for (int m = 0; m < blk.num_monomials(); ++m) {
      monos.push_back(blk.monomial(m));
      std::vector<int> ents;
      for (int e : blk.incidence(m)) ents.push_back(row0 + e);
      inc.push_back(std::move(ents));
    }
    row0 += blk.rows();
  }
  return MonomialSparsity(vars, total_rows, 1, std::move(monos), std::move(inc));
}

}  // namespace polysos
