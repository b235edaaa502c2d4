#pragma once

#include <Eigen/Core>

#include "polysos/polynomial.hpp"

namespace polysos {

/// Linear form over a polynomial space: a covector over the coordinate slots
/// of a basis pattern. The pairing with a polynomial is the dot product of
/// the covector and the polynomial's coordinates embedded into the basis.
/// Coefficients may be symbolic (e.g. parameter-dependent gradients).
class PolyDual {
 public:
  PolyDual() = default;
  PolyDual(MonomialSparsity basis, std::vector<ScalarExpr> coefficients);
  static PolyDual zero(MonomialSparsity basis);
  static PolyDual from_values(MonomialSparsity basis, const Eigen::VectorXd& values);

  const MonomialSparsity& basis() const { return basis_; }
  const std::vector<ScalarExpr>& coefficients() const { return coeffs_; }
  bool is_constant() const;
  Eigen::VectorXd constant_coefficients() const;

  /// <phi, p>; p must embed into the basis. Symbolic if either side is.
  ScalarExpr pair(const Polynomial& p) const;
  double pair_value(const Polynomial& p) const;

 private:
  MonomialSparsity basis_;
  std::vector<ScalarExpr> coeffs_;
};

/// Linear operator between polynomial spaces: input and output bases plus a
/// coordinate matrix mapping the nonzero input coordinates onto the nonzero
/// output coordinates. The matrix may carry symbolic entries (operators
/// produced by differentiating expressions at an unbound point); such
/// operators are bound to numeric form before a conic solve.
class PolyLinearOp {
 public:
  PolyLinearOp() = default;
  PolyLinearOp(MonomialSparsity in_basis, MonomialSparsity out_basis, ExprMatrix matrix);

  static PolyLinearOp identity(const MonomialSparsity& basis);
  static PolyLinearOp zero(MonomialSparsity in_basis, MonomialSparsity out_basis);

  const MonomialSparsity& in_basis() const { return in_; }
  const MonomialSparsity& out_basis() const { return out_; }
  const ExprMatrix& matrix() const { return mat_; }
  bool is_constant() const { return mat_.is_constant(); }

  /// Applies to a polynomial whose sparsity embeds into the input basis.
  Polynomial apply(const Polynomial& p) const;

  /// Adjoint action on a covector over the output basis; requires a constant
  /// matrix (bind symbolic operators first). <L* lam, p> == <lam, L p>.
  PolyDual apply_adjoint(const PolyDual& lambda) const;

  /// The adjoint as data: swapped bases, transposed matrix. Its apply_adjoint
  /// is this operator's forward action on duals.
  PolyLinearOp adjoint() const;

  /// Substitutes symbols in the matrix (e.g. binding a linearization point).
  PolyLinearOp bind(const std::map<std::string, ScalarExpr>& subs) const;

 private:
  MonomialSparsity in_, out_;
  ExprMatrix mat_;
};

/// L2 after L1. L1's output basis must embed into L2's input basis (or
/// exactly match); otherwise BasisMismatchError.
PolyLinearOp op_compose(const PolyLinearOp& l2, const PolyLinearOp& l1);

/// Sum; bases are unified by union embedding on both sides.
PolyLinearOp op_add(const PolyLinearOp& a, const PolyLinearOp& b);

PolyLinearOp op_scale(const PolyLinearOp& l, const ScalarExpr& c);
inline PolyLinearOp op_scale(const PolyLinearOp& l, double c) {
  return op_scale(l, ScalarExpr::constant(c));
}

/// Derivative with respect to all indeterminates, stacked: maps a scalar
/// polynomial over `basis` to the l x 1 column of its partials. Matrix
/// entries are the power-rule integers.
PolyLinearOp deriv_operator(const MonomialSparsity& basis);

/// Evaluation at a point: single-row matrix [a^alpha] over the basis slots,
/// mapping a scalar polynomial to the constant polynomial of its value.
PolyLinearOp eval_operator(const Eigen::VectorXd& a, const MonomialSparsity& basis);

/// Gradient of a polynomial expression g with respect to a symbolic-basis
/// polynomial xi: input basis = sparsity(xi), output basis = sparsity(g),
/// matrix = Jacobian of g's coordinates in xi's coordinate symbols (possibly
/// symbolic when g is nonlinear in xi).
PolyLinearOp gradient_of(const Polynomial& g, const Polynomial& xi);

}  // namespace polysos
