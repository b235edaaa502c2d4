#include "polysos/operators.hpp"

#include <stdexcept>

#include "polysos/errors.hpp"

namespace polysos {

PolyDual::PolyDual(MonomialSparsity basis, std::vector<ScalarExpr> coefficients)
    : basis_(std::move(basis)), coeffs_(std::move(coefficients)) {
  if (static_cast<int>(coeffs_.size()) != basis_.nnz())
    throw std::invalid_argument("PolyDual: coefficient count must equal basis slot count");
}

PolyDual PolyDual::zero(MonomialSparsity basis) {
  int n = basis.nnz();
  return PolyDual(std::move(basis), std::vector<ScalarExpr>(n, ScalarExpr::constant(0.0)));
}

PolyDual PolyDual::from_values(MonomialSparsity basis, const Eigen::VectorXd& values) {
  if (values.size() != basis.nnz())
    throw std::invalid_argument("PolyDual::from_values: size mismatch");
  std::vector<ScalarExpr> c;
  c.reserve(values.size());
  for (Eigen::Index i = 0; i < values.size(); ++i) c.push_back(ScalarExpr::constant(values[i]));
  return PolyDual(std::move(basis), std::move(c));
}

bool PolyDual::is_constant() const {
  for (const auto& c : coeffs_)
    if (!c.is_constant()) return false;
  return true;
}

Eigen::VectorXd PolyDual::constant_coefficients() const {
  Eigen::VectorXd v(coeffs_.size());
  for (size_t i = 0; i < coeffs_.size(); ++i) {
    if (!coeffs_[i].is_constant())
      throw std::invalid_argument("PolyDual: symbolic coefficient");
    v[static_cast<Eigen::Index>(i)] = coeffs_[i].constant_value();
  }
  return v;
}

ScalarExpr PolyDual::pair(const Polynomial& p) const {
  std::vector<ScalarExpr> pc = embed_coords(p, basis_);
  ScalarExpr acc = ScalarExpr::constant(0.0);
  for (size_t i = 0; i < pc.size(); ++i) acc = acc + coeffs_[i] * pc[i];
  return acc;
}

double PolyDual::pair_value(const Polynomial& p) const {
  ScalarExpr e = pair(p);
  if (!e.is_constant()) throw std::invalid_argument("PolyDual::pair_value: symbolic pairing");
  return e.constant_value();
}

PolyLinearOp::PolyLinearOp(MonomialSparsity in_basis, MonomialSparsity out_basis,
                           ExprMatrix matrix)
    : in_(std::move(in_basis)), out_(std::move(out_basis)), mat_(std::move(matrix)) {
  if (mat_.rows() != out_.nnz() || mat_.cols() != in_.nnz())
    throw std::invalid_argument(
        "PolyLinearOp: matrix shape must be out-slots x in-slots");
}

PolyLinearOp PolyLinearOp::identity(const MonomialSparsity& basis) {
  return PolyLinearOp(basis, basis, ExprMatrix::identity(basis.nnz()));
}

PolyLinearOp PolyLinearOp::zero(MonomialSparsity in_basis, MonomialSparsity out_basis) {
  ExprMatrix m(out_basis.nnz(), in_basis.nnz());
  return PolyLinearOp(std::move(in_basis), std::move(out_basis), std::move(m));
}

Polynomial PolyLinearOp::apply(const Polynomial& p) const {
  std::vector<ScalarExpr> x = embed_coords(p, in_);
  ExprMatrix col = ExprMatrix::dense(static_cast<int>(x.size()), 1, x);
  ExprMatrix y = mat_ * col;
  std::vector<ScalarExpr> out(out_.nnz(), ScalarExpr::constant(0.0));
  for (const auto& e : y.entries()) out[e.row] = e.value;
  return Polynomial(out_, std::move(out));
}

PolyDual PolyLinearOp::apply_adjoint(const PolyDual& lambda) const {
  if (!is_constant())
    throw std::invalid_argument("apply_adjoint: operator matrix must be constant");
  if (!(lambda.basis() == out_))
    throw BasisMismatchError("apply_adjoint: covector basis must equal the output basis");
  ExprMatrix col = ExprMatrix::dense(static_cast<int>(lambda.coefficients().size()), 1,
                                     lambda.coefficients());
  ExprMatrix y = mat_.transposed() * col;
  std::vector<ScalarExpr> out(in_.nnz(), ScalarExpr::constant(0.0));
  for (const auto& e : y.entries()) out[e.row] = e.value;
  return PolyDual(in_, std::move(out));
}

PolyLinearOp PolyLinearOp::adjoint() const {
  if (!is_constant())
    throw std::invalid_argument("adjoint: operator matrix must be constant");
  return PolyLinearOp(out_, in_, mat_.transposed());
}

PolyLinearOp PolyLinearOp::bind(const std::map<std::string, ScalarExpr>& subs) const {
  std::vector<ExprMatrix::Entry> entries;
  entries.reserve(mat_.entries().size());
  for (const auto& e : mat_.entries()) {
    ScalarExpr v = substitute(e.value, subs);
    if (!v.is_zero()) entries.push_back({e.row, e.col, v});
  }
  return PolyLinearOp(in_, out_, ExprMatrix(mat_.rows(), mat_.cols(), std::move(entries)));
}

namespace {

// Injection matrix embedding `sub` coordinates into `super` coordinates.
ExprMatrix embedding_matrix(const MonomialSparsity& sub, const MonomialSparsity& super) {
  if (!sub.subset_of(super))
    throw BasisMismatchError("embedding: basis is not a subset of the target basis");
  std::vector<ExprMatrix::Entry> entries;
  for (int m = 0; m < sub.num_monomials(); ++m) {
    const auto& ents = sub.incidence(m);
    for (size_t k = 0; k < ents.size(); ++k) {
      int to = super.find_slot(sub.monomial(m), ents[k]);
      entries.push_back({to, sub.slot(m, static_cast<int>(k)), ScalarExpr::constant(1.0)});
    }
  }
  return ExprMatrix(super.nnz(), sub.nnz(), std::move(entries));
}

}  // namespace

PolyLinearOp op_compose(const PolyLinearOp& l2, const PolyLinearOp& l1) {
  if (l1.out_basis() == l2.in_basis())
    return PolyLinearOp(l1.in_basis(), l2.out_basis(), l2.matrix() * l1.matrix());
  // Allow composition when l1's outputs form a sub-basis of l2's inputs.
  ExprMatrix e = embedding_matrix(l1.out_basis(), l2.in_basis());
  return PolyLinearOp(l1.in_basis(), l2.out_basis(), l2.matrix() * (e * l1.matrix()));
}

PolyLinearOp op_add(const PolyLinearOp& a, const PolyLinearOp& b) {
  if (a.in_basis() == b.in_basis() && a.out_basis() == b.out_basis())
    return PolyLinearOp(a.in_basis(), a.out_basis(), a.matrix() + b.matrix());
  MonomialSparsity in_u = sparsity_union(a.in_basis(), b.in_basis());
  MonomialSparsity out_u = sparsity_union(a.out_basis(), b.out_basis());
  ExprMatrix ea_in = embedding_matrix(a.in_basis(), in_u);
  ExprMatrix eb_in = embedding_matrix(b.in_basis(), in_u);
  ExprMatrix ea_out = embedding_matrix(a.out_basis(), out_u);
  ExprMatrix eb_out = embedding_matrix(b.out_basis(), out_u);
  ExprMatrix m = ea_out * a.matrix() * ea_in.transposed() +
                 eb_out * b.matrix() * eb_in.transposed();
  return PolyLinearOp(std::move(in_u), std::move(out_u), std::move(m));
}

PolyLinearOp op_scale(const PolyLinearOp& l, const ScalarExpr& c) {
  return PolyLinearOp(l.in_basis(), l.out_basis(), l.matrix().scaled(c));
}

PolyLinearOp deriv_operator(const MonomialSparsity& basis) {
  if (!basis.is_scalar_shape())
    throw std::invalid_argument("deriv_operator: basis must be scalar-shaped");
  const IndeterminateSet& vars = basis.indeterminates();
  const int l = vars.size();

  std::vector<MultiIndex> out_monos;
  std::vector<std::vector<int>> out_inc;
  for (int m = 0; m < basis.num_monomials(); ++m) {
    const MultiIndex& alpha = basis.monomial(m);
    for (int i = 0; i < l; ++i) {
      if (alpha.exponents[i] == 0) continue;
      MultiIndex beta = alpha;
      beta.exponents[i] -= 1;
      out_monos.push_back(beta);
      out_inc.push_back({i});
    }
  }
  MonomialSparsity out(vars, l, 1, std::move(out_monos), std::move(out_inc));

  std::vector<ExprMatrix::Entry> entries;
  for (int m = 0; m < basis.num_monomials(); ++m) {
    const MultiIndex& alpha = basis.monomial(m);
    int in_slot = basis.slot(m, 0);
    for (int i = 0; i < l; ++i) {
      if (alpha.exponents[i] == 0) continue;
      MultiIndex beta = alpha;
      beta.exponents[i] -= 1;
      int out_slot = out.find_slot(beta, i);
      entries.push_back(
          {out_slot, in_slot, ScalarExpr::constant(static_cast<double>(alpha.exponents[i]))});
    }
  }
  return PolyLinearOp(basis, out, ExprMatrix(out.nnz(), basis.nnz(), std::move(entries)));
}

PolyLinearOp eval_operator(const Eigen::VectorXd& a, const MonomialSparsity& basis) {
  if (!basis.is_scalar_shape())
    throw std::invalid_argument("eval_operator: basis must be scalar-shaped");
  if (a.size() != basis.indeterminates().size())
    throw std::invalid_argument("eval_operator: point dimension mismatch");
  MultiIndex one;
  one.exponents.assign(basis.indeterminates().size(), 0);
  MonomialSparsity out = MonomialSparsity::scalar(basis.indeterminates(), {one});

  std::vector<ExprMatrix::Entry> entries;
  for (int m = 0; m < basis.num_monomials(); ++m) {
    const MultiIndex& alpha = basis.monomial(m);
    double v = 1.0;
    for (int i = 0; i < alpha.size(); ++i)
      for (int k = 0; k < alpha.exponents[i]; ++k) v *= a[i];
    if (v != 0.0) entries.push_back({0, basis.slot(m, 0), ScalarExpr::constant(v)});
  }
  return PolyLinearOp(basis, out, ExprMatrix(out.nnz(), basis.nnz(), std::move(entries)));
}

PolyLinearOp gradient_of(const Polynomial& g, const Polynomial& xi) {
  if (!xi.is_symbolic_basis())
    throw std::invalid_argument("gradient_of: xi must be symbolic-basis");
  std::vector<std::string> names = xi.coord_symbols();

  std::vector<ExprMatrix::Entry> entries;
  for (int s = 0; s < static_cast<int>(g.coords().size()); ++s) {
    std::vector<ScalarExpr> grad = gradient(g.coord(s), names);
    for (int j = 0; j < static_cast<int>(grad.size()); ++j)
      if (!grad[j].is_zero()) entries.push_back({s, j, grad[j]});
  }
  return PolyLinearOp(xi.sparsity(), g.sparsity(),
                      ExprMatrix(g.sparsity().nnz(), xi.sparsity().nnz(), std::move(entries)));
}

}  // namespace polysos
