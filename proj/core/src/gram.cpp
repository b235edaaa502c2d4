#include "polysos/gram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "polysos/errors.hpp"

namespace polysos {

GramBasis gram_basis_for(const MonomialSparsity& target) {
  if (!target.is_scalar_shape())
    throw std::invalid_argument("gram_basis_for: target must be scalar-shaped");
  if (target.num_monomials() == 0)
    throw NotSosRepresentableError("gram_basis_for: empty target");

  DegreeRange range = target.degree_range();
  int half_lo = (range.mindeg + 1) / 2;
  int half_hi = range.maxdeg / 2;
  if (half_lo > half_hi)
    throw NotSosRepresentableError("gram_basis_for: no admissible half-basis degree window");

  std::vector<MultiIndex> candidates =
      monomial_basis(target.indeterminates(), DegreeRange(half_lo, half_hi));

  auto in_target = [&](const MultiIndex& gamma) { return target.find_monomial(gamma) >= 0; };

  // Drop candidates that pair with nothing in the target; removing one can
  // orphan another, so iterate to a fixpoint.
  std::vector<bool> keep(candidates.size(), true);
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < candidates.size(); ++i) {
      if (!keep[i]) continue;
      bool pairs = false;
      for (size_t j = 0; j < candidates.size() && !pairs; ++j) {
        if (!keep[j]) continue;
        if (in_target(candidates[i].plus(candidates[j]))) pairs = true;
      }
      if (!pairs) {
        keep[i] = false;
        changed = true;
      }
    }
  }

  GramBasis g;
  for (size_t i = 0; i < candidates.size(); ++i)
    if (keep[i]) g.half.push_back(candidates[i]);
  if (g.half.empty())
    throw NotSosRepresentableError(
        "gram_basis_for: every half-basis candidate pairs outside the target");

  std::map<MultiIndex, std::vector<std::pair<int, int>>, GradedLexLess> sums;
  for (int j = 0; j < g.half_size(); ++j)
    for (int i = 0; i <= j; ++i) sums[g.half[i].plus(g.half[j])].push_back({i, j});

  for (auto& [gamma, pairs] : sums) {
    g.full.push_back(gamma);
    g.full_pairs.push_back(pairs);
  }
  g.pair_to_full.assign(g.triangle_size(), -1);
  for (int f = 0; f < g.full_size(); ++f)
    for (auto [i, j] : g.full_pairs[f]) g.pair_to_full[triangle_index(i, j)] = f;
  return g;
}

Polynomial gram_to_polynomial(const GramBasis& g, const Eigen::MatrixXd& q,
                              const IndeterminateSet& vars) {
  if (q.rows() != g.half_size() || q.cols() != g.half_size())
    throw std::invalid_argument("gram_to_polynomial: matrix size mismatch");
  std::vector<MultiIndex> monos;
  std::vector<ScalarExpr> coords;
  for (int f = 0; f < g.full_size(); ++f) {
    double c = 0.0;
    for (auto [i, j] : g.full_pairs[f]) c += (i == j) ? q(i, i) : q(i, j) + q(j, i);
    if (c == 0.0) continue;
    monos.push_back(g.full[f]);
    coords.push_back(ScalarExpr::constant(c));
  }
  return Polynomial(MonomialSparsity::scalar(vars, std::move(monos)), std::move(coords));
}

Eigen::MatrixXd moment_matrix(const PolyDual& y, const GramBasis& half) {
  if (!y.basis().is_scalar_shape())
    throw std::invalid_argument("moment_matrix: covector basis must be scalar-shaped");
  Eigen::VectorXd vals = y.constant_coefficients();
  const int h = half.half_size();
  Eigen::MatrixXd m(h, h);
  for (int j = 0; j < h; ++j) {
    for (int i = 0; i <= j; ++i) {
      MultiIndex gamma = half.half[i].plus(half.half[j]);
      int slot = y.basis().find_slot(gamma, 0);
      if (slot < 0)
        throw std::invalid_argument("moment_matrix: missing moment for a pairwise sum");
      m(i, j) = m(j, i) = vals[slot];
    }
  }
  return m;
}

Eigen::VectorXd svec(const Eigen::MatrixXd& x) {
  const int k = static_cast<int>(x.rows());
  if (x.cols() != k) throw std::invalid_argument("svec: matrix must be square");
  static const double kSqrt2 = std::sqrt(2.0);
  Eigen::VectorXd v(k * (k + 1) / 2);
  int idx = 0;
  for (int j = 0; j < k; ++j)
    for (int i = 0; i <= j; ++i) v[idx++] = (i == j) ? x(i, i) : kSqrt2 * x(i, j);
  return v;
}

int smat_dim(int n) {
  int k = static_cast<int>(std::round((std::sqrt(8.0 * n + 1.0) - 1.0) / 2.0));
  if (k * (k + 1) / 2 != n) throw std::invalid_argument("smat: not a triangle length");
  return k;
}

Eigen::MatrixXd smat(const Eigen::VectorXd& v) {
  const int k = smat_dim(static_cast<int>(v.size()));
  static const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
  Eigen::MatrixXd x(k, k);
  int idx = 0;
  for (int j = 0; j < k; ++j) {
    for (int i = 0; i <= j; ++i) {
      double val = (i == j) ? v[idx] : kInvSqrt2 * v[idx];
      x(i, j) = x(j, i) = val;
      ++idx;
    }
  }
  return x;
}

}  // namespace polysos
