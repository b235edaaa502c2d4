#pragma once

#include <Eigen/Core>
#include <vector>

#include "polysos/operators.hpp"

namespace polysos {

/// Gram basis of a scalar polynomial target: the half basis z of monomials
/// whose pairwise products cover the target, the full basis of those
/// products, and the pairing maps between them. A symmetric matrix Q on the
/// half basis maps to the polynomial with coefficient
///   c_gamma = sum over alpha+beta == gamma of Q_{alpha,beta}.
struct GramBasis {
  std::vector<MultiIndex> half;
  std::vector<MultiIndex> full;  // sorted, no duplicates
  /// Upper-triangle pair (i<=j, column-major triangle order) -> full index.
  std::vector<int> pair_to_full;
  /// Per full monomial: the list of (i,j), i<=j, half pairs summing to it.
  std::vector<std::vector<std::pair<int, int>>> full_pairs;

  int half_size() const { return static_cast<int>(half.size()); }
  int full_size() const { return static_cast<int>(full.size()); }
  int triangle_size() const { return half_size() * (half_size() + 1) / 2; }
};

/// Builds the Gram basis for a scalar target pattern. Half-basis candidates
/// are the monomials with total degree in [ceil(mindeg/2), floor(maxdeg/2)];
/// candidates that pair into no target monomial are dropped (iterated to a
/// fixpoint). Throws NotSosRepresentableError when no candidate survives
/// (e.g. a target of odd-degree monomials only).
GramBasis gram_basis_for(const MonomialSparsity& target);

/// Polynomial Z(Q) over the full basis for a symmetric matrix Q on the half
/// basis (the Gram-to-polynomial mapping).
Polynomial gram_to_polynomial(const GramBasis& g, const Eigen::MatrixXd& q,
                              const IndeterminateSet& vars);

/// Moment matrix of a covector: entry (alpha, beta) is y_{alpha+beta} over
/// the half basis. The covector's basis must be scalar and cover every
/// pairwise sum; a missing moment is an invalid-argument error.
Eigen::MatrixXd moment_matrix(const PolyDual& y, const GramBasis& half);

/// Column-major upper-triangle index of (i,j), i <= j.
inline int triangle_index(int i, int j) { return j * (j + 1) / 2 + i; }

/// Scaled upper-triangle vectorization: diagonal entries as-is, off-diagonal
/// entries times sqrt(2), so that <X,Y> equals the dot product of the
/// vectorizations and the PSD cone is self-dual in these coordinates.
Eigen::VectorXd svec(const Eigen::MatrixXd& x);
Eigen::MatrixXd smat(const Eigen::VectorXd& v);
/// Matrix dimension k with k(k+1)/2 == triangle length n (throws otherwise).
int smat_dim(int n);

}  // namespace polysos
