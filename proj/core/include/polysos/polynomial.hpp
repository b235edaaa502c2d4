#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "polysos/expr.hpp"
#include "polysos/sparsity.hpp"

namespace polysos {

/// Matrix-valued polynomial: a monomial sparsity pattern plus one coordinate
/// scalar per (monomial, entry) incidence pair, in the pattern's frozen slot
/// order. Coordinates are scalar expressions; a polynomial is "constant" if
/// every coordinate is a constant and "symbolic-basis" if every coordinate is
/// a distinct pure symbol (the form required of decision variables).
///
/// Construction canonicalizes: coordinates that fold to the exact constant 0
/// are structurally removed (the sparsity shrinks with them); symbolic
/// coordinates are never removed.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(MonomialSparsity sp, std::vector<ScalarExpr> coords);

  static Polynomial zero(IndeterminateSet vars, int rows = 1, int cols = 1);
  /// Scalar constant c (empty if c == 0).
  static Polynomial constant(IndeterminateSet vars, double c);
  /// Constant matrix; `values` column-major, zeros dropped.
  static Polynomial constant_matrix(IndeterminateSet vars, int rows, int cols,
                                    const std::vector<double>& values);
  /// The indeterminate `name` as a scalar polynomial.
  static Polynomial indeterminate(IndeterminateSet vars, const std::string& name);
  /// c * x^alpha as a scalar polynomial.
  static Polynomial monomial(IndeterminateSet vars, MultiIndex alpha, double c = 1.0);
  /// Symbolic-basis polynomial over `sp` with coordinates prefix_0, ...
  static Polynomial symbols(const std::string& prefix, MonomialSparsity sp);

  const MonomialSparsity& sparsity() const { return sp_; }
  const std::vector<ScalarExpr>& coords() const { return coords_; }
  const ScalarExpr& coord(int slot) const { return coords_.at(slot); }
  int rows() const { return sp_.rows(); }
  int cols() const { return sp_.cols(); }
  const IndeterminateSet& indeterminates() const { return sp_.indeterminates(); }
  bool is_zero() const { return coords_.empty(); }
  bool is_scalar_shape() const { return sp_.is_scalar_shape(); }
  int degree() const { return sp_.degree_range().maxdeg; }

  bool is_constant_poly() const;
  bool is_symbolic_basis() const;
  /// Numeric coordinate vector; requires a constant polynomial.
  Eigen::VectorXd constant_coords() const;
  /// Coordinate symbol names in slot order; requires symbolic basis.
  std::vector<std::string> coord_symbols() const;

  /// Scalar polynomial at entry (row, col).
  Polynomial entry(int row, int col) const;

  /// Replaces symbolic coordinates by expressions (e.g. numeric values).
  Polynomial bind(const std::map<std::string, ScalarExpr>& subs) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double c, const Polynomial& p);

 private:
  MonomialSparsity sp_;
  std::vector<ScalarExpr> coords_;
};

/// Sum; shapes must match, or one operand may be 1x1 (broadcast onto every
/// entry of the other).
Polynomial poly_add(const Polynomial& a, const Polynomial& b);

/// Product. Shapes decide the variant: scalar*matrix if either operand is
/// 1x1, else matrix product (inner dimensions must agree). Coefficients
/// multiply as expressions, so the result may be nonlinear in symbols.
Polynomial poly_mul(const Polynomial& a, const Polynomial& b);

/// Entrywise product; shapes must match.
Polynomial poly_mul_elementwise(const Polynomial& a, const Polynomial& b);

/// Term-wise partial derivative with respect to the named indeterminate.
Polynomial poly_diff(const Polynomial& p, const std::string& xi);

/// Term-wise anti-derivative (zero constant of integration).
Polynomial poly_integrate(const Polynomial& p, const std::string& xi);

/// Substitutes the named indeterminate by a scalar polynomial (same
/// indeterminate set, or a constant), expanding and canonicalizing.
Polynomial poly_subs(const Polynomial& p, const std::string& xi, const Polynomial& q);

/// (sparsity, coordinate vector) of p; inverse of reconstruct.
std::pair<MonomialSparsity, std::vector<ScalarExpr>> coords_of(const Polynomial& p);
Polynomial reconstruct(const MonomialSparsity& sp, const std::vector<ScalarExpr>& coords);
Polynomial reconstruct(const MonomialSparsity& sp, const Eigen::VectorXd& coords);

/// Coordinates of p embedded into a covering basis (missing slots are zero).
/// Throws BasisMismatchError if p's sparsity is not a subset of `basis`.
std::vector<ScalarExpr> embed_coords(const Polynomial& p, const MonomialSparsity& basis);
Eigen::VectorXd embed_constant_coords(const Polynomial& p, const MonomialSparsity& basis);

/// Compiled evaluator mapping (symbol bindings, point a in R^l) to the
/// numeric value of the polynomial. Polynomials themselves are not meant to
/// be evaluated in their indeterminates; convert once, evaluate many times.
class PointFunction {
 public:
  explicit PointFunction(const Polynomial& p);

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  Eigen::MatrixXd eval(const Eigen::VectorXd& point, const Bindings& bindings = {}) const;
  /// Points given as l x N columns; one result matrix per column.
  std::vector<Eigen::MatrixXd> eval_batch(const Eigen::MatrixXd& points,
                                          const Bindings& bindings = {}) const;
  /// Scalar-shaped convenience.
  double eval_scalar(const Eigen::VectorXd& point, const Bindings& bindings = {}) const;
  /// Scalar-shaped batch: one value per point column.
  Eigen::VectorXd eval_scalar_batch(const Eigen::MatrixXd& points,
                                    const Bindings& bindings = {}) const;

 private:
  Eigen::VectorXd coord_values(const Bindings& bindings) const;

  int rows_, cols_, num_vars_;
  struct Slot {
    MultiIndex alpha;
    int entry;
  };
  std::vector<Slot> slots_;
  std::vector<std::string> symbols_;  // tape input order
  ExprTape tape_;
  bool constant_ = true;
  Eigen::VectorXd const_coords_;
};

PointFunction to_point_function(const Polynomial& p);

}  // namespace polysos
