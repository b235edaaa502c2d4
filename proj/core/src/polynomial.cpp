#include "polysos/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "polysos/errors.hpp"

namespace polysos {

namespace {

// Accumulator keyed by (monomial, column-major entry index).
using CoeffMap = std::map<MultiIndex, std::map<int, ScalarExpr>, GradedLexLess>;

Polynomial from_coeff_map(const IndeterminateSet& vars, int rows, int cols, CoeffMap&& acc) {
  std::vector<MultiIndex> monos;
  std::vector<std::vector<int>> inc;
  std::vector<ScalarExpr> coords;
  for (auto& [alpha, by_entry] : acc) {
    std::vector<int> ents;
    for (auto& [e, v] : by_entry) {
      if (v.is_zero()) continue;
      ents.push_back(e);
    }
    if (ents.empty()) continue;
    monos.push_back(alpha);
    inc.push_back(ents);
    for (int e : ents) coords.push_back(by_entry.at(e));
  }
  return Polynomial(MonomialSparsity(vars, rows, cols, std::move(monos), std::move(inc)),
                    std::move(coords));
}

}  // namespace

Polynomial::Polynomial(MonomialSparsity sp, std::vector<ScalarExpr> coords) {
  if (static_cast<int>(coords.size()) != sp.nnz())
    throw std::invalid_argument("Polynomial: coordinate count must equal incidence count");
  // Canonicalize: drop slots whose coordinate folded to the constant 0.
  bool any_zero = false;
  for (const auto& c : coords)
    if (c.is_zero()) {
      any_zero = true;
      break;
    }
  if (!any_zero) {
    sp_ = std::move(sp);
    coords_ = std::move(coords);
    return;
  }
  std::vector<MultiIndex> monos;
  std::vector<std::vector<int>> inc;
  std::vector<ScalarExpr> kept;
  for (int m = 0; m < sp.num_monomials(); ++m) {
    std::vector<int> ents;
    std::vector<ScalarExpr> vals;
    const auto& e = sp.incidence(m);
    for (size_t k = 0; k < e.size(); ++k) {
      const ScalarExpr& v = coords[sp.slot(m, static_cast<int>(k))];
      if (v.is_zero()) continue;
      ents.push_back(e[k]);
      vals.push_back(v);
    }
    if (ents.empty()) continue;
    monos.push_back(sp.monomial(m));
    inc.push_back(std::move(ents));
    for (auto& v : vals) kept.push_back(std::move(v));
  }
  sp_ = MonomialSparsity(sp.indeterminates(), sp.rows(), sp.cols(), std::move(monos),
                         std::move(inc));
  coords_ = std::move(kept);
}

Polynomial Polynomial::zero(IndeterminateSet vars, int rows, int cols) {
  return Polynomial(MonomialSparsity::empty(std::move(vars), rows, cols), {});
}

Polynomial Polynomial::constant(IndeterminateSet vars, double c) {
  if (c == 0.0) return zero(std::move(vars));
  MultiIndex one;
  one.exponents.assign(vars.size(), 0);
  return Polynomial(MonomialSparsity::scalar(std::move(vars), {one}),
                    {ScalarExpr::constant(c)});
}

Polynomial Polynomial::constant_matrix(IndeterminateSet vars, int rows, int cols,
                                       const std::vector<double>& values) {
  if (static_cast<int>(values.size()) != rows * cols)
    throw std::invalid_argument("constant_matrix: value count mismatch");
  MultiIndex one;
  one.exponents.assign(vars.size(), 0);
  std::vector<int> ents;
  std::vector<ScalarExpr> coords;
  for (int e = 0; e < rows * cols; ++e) {
    if (values[e] == 0.0) continue;
    ents.push_back(e);
  }
  for (int e : ents) coords.push_back(ScalarExpr::constant(values[e]));
  if (ents.empty()) return zero(std::move(vars), rows, cols);
  return Polynomial(MonomialSparsity(std::move(vars), rows, cols, {one}, {ents}),
                    std::move(coords));
}

Polynomial Polynomial::indeterminate(IndeterminateSet vars, const std::string& name) {
  int i = vars.index_of(name);
  if (i < 0) throw std::invalid_argument("indeterminate: unknown name '" + name + "'");
  MultiIndex alpha;
  alpha.exponents.assign(vars.size(), 0);
  alpha.exponents[i] = 1;
  return monomial(std::move(vars), std::move(alpha));
}

Polynomial Polynomial::monomial(IndeterminateSet vars, MultiIndex alpha, double c) {
  if (alpha.size() != vars.size())
    throw std::invalid_argument("monomial: exponent tuple length mismatch");
  if (c == 0.0) return zero(std::move(vars));
  return Polynomial(MonomialSparsity::scalar(std::move(vars), {std::move(alpha)}),
                    {ScalarExpr::constant(c)});
}

Polynomial Polynomial::symbols(const std::string& prefix, MonomialSparsity sp) {
  std::vector<ScalarExpr> coords;
  coords.reserve(sp.nnz());
  for (int s = 0; s < sp.nnz(); ++s)
    coords.push_back(ScalarExpr::symbol(prefix + "_" + std::to_string(s)));
  return Polynomial(std::move(sp), std::move(coords));
}

bool Polynomial::is_constant_poly() const {
  for (const auto& c : coords_)
    if (!c.is_constant()) return false;
  return true;
}

bool Polynomial::is_symbolic_basis() const {
  std::vector<std::string> names;
  for (const auto& c : coords_) {
    if (!c.is_symbol()) return false;
    names.push_back(c.symbol_name());
  }
  std::sort(names.begin(), names.end());
  return std::adjacent_find(names.begin(), names.end()) == names.end();
}

Eigen::VectorXd Polynomial::constant_coords() const {
  Eigen::VectorXd v(coords_.size());
  for (size_t i = 0; i < coords_.size(); ++i) {
    if (!coords_[i].is_constant())
      throw std::invalid_argument("constant_coords: polynomial has symbolic coordinates");
    v[static_cast<Eigen::Index>(i)] = coords_[i].constant_value();
  }
  return v;
}

std::vector<std::string> Polynomial::coord_symbols() const {
  if (!is_symbolic_basis())
    throw std::invalid_argument("coord_symbols: polynomial is not symbolic-basis");
  std::vector<std::string> names;
  names.reserve(coords_.size());
  for (const auto& c : coords_) names.push_back(c.symbol_name());
  return names;
}

Polynomial Polynomial::entry(int row, int col) const {
  if (row < 0 || row >= rows() || col < 0 || col >= cols())
    throw std::out_of_range("Polynomial::entry");
  int lin = col * rows() + row;
  std::vector<MultiIndex> monos;
  std::vector<ScalarExpr> coords;
  for (int m = 0; m < sp_.num_monomials(); ++m) {
    const auto& ents = sp_.incidence(m);
    auto it = std::lower_bound(ents.begin(), ents.end(), lin);
    if (it != ents.end() && *it == lin) {
      monos.push_back(sp_.monomial(m));
      coords.push_back(coords_[sp_.slot(m, static_cast<int>(it - ents.begin()))]);
    }
  }
  return Polynomial(MonomialSparsity::scalar(indeterminates(), std::move(monos)),
                    std::move(coords));
}

Polynomial Polynomial::bind(const std::map<std::string, ScalarExpr>& subs) const {
  std::vector<ScalarExpr> coords;
  coords.reserve(coords_.size());
  for (const auto& c : coords_) coords.push_back(substitute(c, subs));
  return Polynomial(sp_, std::move(coords));
}

Polynomial poly_add(const Polynomial& a, const Polynomial& b) {
  if (a.indeterminates() != b.indeterminates())
    throw std::invalid_argument("poly_add: indeterminate sets differ");
  const bool a_scalar = a.is_scalar_shape(), b_scalar = b.is_scalar_shape();
  int rows, cols;
  if (a.rows() == b.rows() && a.cols() == b.cols()) {
    rows = a.rows();
    cols = a.cols();
  } else if (a_scalar || b_scalar) {
    rows = a_scalar ? b.rows() : a.rows();
    cols = a_scalar ? b.cols() : a.cols();
  } else {
    throw std::invalid_argument("poly_add: shape mismatch");
  }

  CoeffMap acc;
  auto add_broadcast = [&](const Polynomial& p) {
    const auto& sp = p.sparsity();
    bool broadcast = p.is_scalar_shape() && !(rows == 1 && cols == 1);
    for (int m = 0; m < sp.num_monomials(); ++m) {
      const auto& ents = sp.incidence(m);
      for (size_t k = 0; k < ents.size(); ++k) {
        const ScalarExpr& v = p.coord(sp.slot(m, static_cast<int>(k)));
        if (broadcast) {
          for (int e = 0; e < rows * cols; ++e) {
            auto& cell = acc[sp.monomial(m)][e];
            cell = cell + v;
          }
        } else {
          auto& cell = acc[sp.monomial(m)][ents[k]];
          cell = cell + v;
        }
      }
    }
  };
  add_broadcast(a);
  add_broadcast(b);
  return from_coeff_map(a.indeterminates(), rows, cols, std::move(acc));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) { return poly_add(a, b); }

Polynomial operator-(const Polynomial& a) {
  std::vector<ScalarExpr> coords;
  coords.reserve(a.coords().size());
  for (const auto& c : a.coords()) coords.push_back(-c);
  return Polynomial(a.sparsity(), std::move(coords));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return poly_add(a, -b); }

Polynomial operator*(double c, const Polynomial& p) {
  std::vector<ScalarExpr> coords;
  coords.reserve(p.coords().size());
  for (const auto& v : p.coords()) coords.push_back(ScalarExpr::constant(c) * v);
  return Polynomial(p.sparsity(), std::move(coords));
}

Polynomial poly_mul(const Polynomial& a, const Polynomial& b) {
  if (a.indeterminates() != b.indeterminates())
    throw std::invalid_argument("poly_mul: indeterminate sets differ");
  const bool a_scalar = a.is_scalar_shape(), b_scalar = b.is_scalar_shape();
  int rows, cols;
  if (a_scalar) {
    rows = b.rows();
    cols = b.cols();
  } else if (b_scalar) {
    rows = a.rows();
    cols = a.cols();
  } else if (a.cols() == b.rows()) {
    rows = a.rows();
    cols = b.cols();
  } else {
    throw std::invalid_argument("poly_mul: shape mismatch");
  }

  CoeffMap acc;
  const auto& sa = a.sparsity();
  const auto& sb = b.sparsity();
  for (int ma = 0; ma < sa.num_monomials(); ++ma) {
    const auto& ea = sa.incidence(ma);
    for (size_t ka = 0; ka < ea.size(); ++ka) {
      const ScalarExpr& va = a.coord(sa.slot(ma, static_cast<int>(ka)));
      for (int mb = 0; mb < sb.num_monomials(); ++mb) {
        MultiIndex gamma = sa.monomial(ma).plus(sb.monomial(mb));
        const auto& eb = sb.incidence(mb);
        for (size_t kb = 0; kb < eb.size(); ++kb) {
          const ScalarExpr& vb = b.coord(sb.slot(mb, static_cast<int>(kb)));
          int entry;
          if (a_scalar) {
            entry = eb[kb];
          } else if (b_scalar) {
            entry = ea[ka];
          } else {
            int i = ea[ka] % sa.rows(), j = ea[ka] / sa.rows();
            int j2 = eb[kb] % sb.rows(), k = eb[kb] / sb.rows();
            if (j != j2) continue;
            entry = k * rows + i;
          }
          auto& cell = acc[gamma][entry];
          cell = cell + va * vb;
        }
      }
    }
  }
  return from_coeff_map(a.indeterminates(), rows, cols, std::move(acc));
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) { return poly_mul(a, b); }

Polynomial poly_mul_elementwise(const Polynomial& a, const Polynomial& b) {
  if (a.indeterminates() != b.indeterminates())
    throw std::invalid_argument("poly_mul_elementwise: indeterminate sets differ");
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("poly_mul_elementwise: shape mismatch");
  CoeffMap acc;
  const auto& sa = a.sparsity();
  const auto& sb = b.sparsity();
  for (int ma = 0; ma < sa.num_monomials(); ++ma) {
    const auto& ea = sa.incidence(ma);
    for (size_t ka = 0; ka < ea.size(); ++ka) {
      const ScalarExpr& va = a.coord(sa.slot(ma, static_cast<int>(ka)));
      for (int mb = 0; mb < sb.num_monomials(); ++mb) {
        int slot_b = sb.find_slot(sb.monomial(mb), ea[ka]);
        // find_slot over the same monomial index is a lookup by entry only.
        if (slot_b < 0) continue;
        auto& cell = acc[sa.monomial(ma).plus(sb.monomial(mb))][ea[ka]];
        cell = cell + va * b.coord(slot_b);
      }
    }
  }
  return from_coeff_map(a.indeterminates(), a.rows(), a.cols(), std::move(acc));
}

Polynomial poly_diff(const Polynomial& p, const std::string& xi) {
  int i = p.indeterminates().index_of(xi);
  if (i < 0) throw std::invalid_argument("poly_diff: unknown indeterminate '" + xi + "'");
  CoeffMap acc;
  const auto& sp = p.sparsity();
  for (int m = 0; m < sp.num_monomials(); ++m) {
    const MultiIndex& alpha = sp.monomial(m);
    int e_i = alpha.exponents[i];
    if (e_i == 0) continue;
    MultiIndex beta = alpha;
    beta.exponents[i] -= 1;
    const auto& ents = sp.incidence(m);
    for (size_t k = 0; k < ents.size(); ++k) {
      auto& cell = acc[beta][ents[k]];
      cell = cell + ScalarExpr::constant(e_i) * p.coord(sp.slot(m, static_cast<int>(k)));
    }
  }
  return from_coeff_map(p.indeterminates(), p.rows(), p.cols(), std::move(acc));
}

Polynomial poly_integrate(const Polynomial& p, const std::string& xi) {
  int i = p.indeterminates().index_of(xi);
  if (i < 0) throw std::invalid_argument("poly_integrate: unknown indeterminate '" + xi + "'");
  CoeffMap acc;
  const auto& sp = p.sparsity();
  for (int m = 0; m < sp.num_monomials(); ++m) {
    MultiIndex beta = sp.monomial(m);
    beta.exponents[i] += 1;
    double inv = 1.0 / beta.exponents[i];
    const auto& ents = sp.incidence(m);
    for (size_t k = 0; k < ents.size(); ++k) {
      auto& cell = acc[beta][ents[k]];
      cell = cell + ScalarExpr::constant(inv) * p.coord(sp.slot(m, static_cast<int>(k)));
    }
  }
  return from_coeff_map(p.indeterminates(), p.rows(), p.cols(), std::move(acc));
}

Polynomial poly_subs(const Polynomial& p, const std::string& xi, const Polynomial& q) {
  int i = p.indeterminates().index_of(xi);
  if (i < 0) throw std::invalid_argument("poly_subs: unknown indeterminate '" + xi + "'");
  if (!q.is_scalar_shape()) throw std::invalid_argument("poly_subs: q must be scalar");
  Polynomial qq = q;
  if (q.indeterminates() != p.indeterminates()) {
    // A constant replacement polynomial may live over any indeterminates.
    if (!q.is_constant_poly() || q.degree() != 0)
      throw std::invalid_argument("poly_subs: q must share p's indeterminates or be constant");
    double c = q.is_zero() ? 0.0 : q.coord(0).constant_value();
    qq = Polynomial::constant(p.indeterminates(), c);
  }

  int max_pow = 0;
  const auto& sp = p.sparsity();
  for (int m = 0; m < sp.num_monomials(); ++m)
    max_pow = std::max(max_pow, sp.monomial(m).exponents[i]);
  std::vector<Polynomial> q_pow;
  q_pow.push_back(Polynomial::constant(p.indeterminates(), 1.0));
  for (int k = 1; k <= max_pow; ++k) q_pow.push_back(poly_mul(q_pow.back(), qq));

  Polynomial result = Polynomial::zero(p.indeterminates(), p.rows(), p.cols());
  for (int m = 0; m < sp.num_monomials(); ++m) {
    MultiIndex rest = sp.monomial(m);
    int e_i = rest.exponents[i];
    rest.exponents[i] = 0;
    const auto& ents = sp.incidence(m);
    std::vector<ScalarExpr> coords;
    for (size_t k = 0; k < ents.size(); ++k)
      coords.push_back(p.coord(sp.slot(m, static_cast<int>(k))));
    Polynomial term(MonomialSparsity(p.indeterminates(), p.rows(), p.cols(), {rest}, {ents}),
                    std::move(coords));
    result = result + poly_mul(q_pow[e_i], term);
  }
  return result;
}

std::pair<MonomialSparsity, std::vector<ScalarExpr>> coords_of(const Polynomial& p) {
  return {p.sparsity(), p.coords()};
}

Polynomial reconstruct(const MonomialSparsity& sp, const std::vector<ScalarExpr>& coords) {
  if (static_cast<int>(coords.size()) != sp.nnz())
    throw std::invalid_argument("reconstruct: coordinate count mismatch");
  return Polynomial(sp, coords);
}

Polynomial reconstruct(const MonomialSparsity& sp, const Eigen::VectorXd& coords) {
  if (coords.size() != sp.nnz())
    throw std::invalid_argument("reconstruct: coordinate count mismatch");
  std::vector<ScalarExpr> c;
  c.reserve(coords.size());
  for (Eigen::Index i = 0; i < coords.size(); ++i)
    c.push_back(ScalarExpr::constant(coords[i]));
  return Polynomial(sp, std::move(c));
}

std::vector<ScalarExpr> embed_coords(const Polynomial& p, const MonomialSparsity& basis) {
  if (!p.sparsity().subset_of(basis))
    throw BasisMismatchError("embed_coords: polynomial sparsity is not a subset of the basis");
  std::vector<ScalarExpr> out(basis.nnz(), ScalarExpr::constant(0.0));
  const auto& sp = p.sparsity();
  for (int m = 0; m < sp.num_monomials(); ++m) {
    const auto& ents = sp.incidence(m);
    for (size_t k = 0; k < ents.size(); ++k) {
      int slot = basis.find_slot(sp.monomial(m), ents[k]);
      out[slot] = p.coord(sp.slot(m, static_cast<int>(k)));
    }
  }
  return out;
}

Eigen::VectorXd embed_constant_coords(const Polynomial& p, const MonomialSparsity& basis) {
  std::vector<ScalarExpr> e = embed_coords(p, basis);
  Eigen::VectorXd v(e.size());
  for (size_t i = 0; i < e.size(); ++i) {
    if (!e[i].is_constant())
      throw std::invalid_argument("embed_constant_coords: symbolic coordinate");
    v[static_cast<Eigen::Index>(i)] = e[i].constant_value();
  }
  return v;
}

PointFunction::PointFunction(const Polynomial& p)
    : rows_(p.rows()), cols_(p.cols()), num_vars_(p.indeterminates().size()) {
  const auto& sp = p.sparsity();
  for (int m = 0; m < sp.num_monomials(); ++m)
    for (int e : sp.incidence(m)) slots_.push_back({sp.monomial(m), e});

  constant_ = p.is_constant_poly();
  if (constant_) {
    const_coords_ = p.constant_coords();
  } else {
    for (const auto& c : p.coords()) collect_free_symbols(c, symbols_);
    std::sort(symbols_.begin(), symbols_.end());
    symbols_.erase(std::unique(symbols_.begin(), symbols_.end()), symbols_.end());
    tape_ = ExprTape::compile(p.coords(), symbols_);
  }
}

Eigen::VectorXd PointFunction::coord_values(const Bindings& bindings) const {
  if (constant_) return const_coords_;
  std::vector<double> in(symbols_.size());
  for (size_t i = 0; i < symbols_.size(); ++i) {
    auto it = bindings.find(symbols_[i]);
    if (it == bindings.end()) throw MissingBindingError(symbols_[i]);
    in[i] = it->second;
  }
  Eigen::VectorXd out(tape_.num_outputs());
  tape_.eval(in.data(), out.data());
  return out;
}

Eigen::MatrixXd PointFunction::eval(const Eigen::VectorXd& point, const Bindings& bindings) const {
  if (point.size() != num_vars_)
    throw std::invalid_argument("PointFunction::eval: point dimension mismatch");
  Eigen::VectorXd cv = coord_values(bindings);
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows_, cols_);
  for (size_t s = 0; s < slots_.size(); ++s) {
    double mono = 1.0;
    for (int i = 0; i < num_vars_; ++i)
      for (int k = 0; k < slots_[s].alpha.exponents[i]; ++k) mono *= point[i];
    out(slots_[s].entry % rows_, slots_[s].entry / rows_) +=
        cv[static_cast<Eigen::Index>(s)] * mono;
  }
  return out;
}

std::vector<Eigen::MatrixXd> PointFunction::eval_batch(const Eigen::MatrixXd& points,
                                                       const Bindings& bindings) const {
  if (points.rows() != num_vars_)
    throw std::invalid_argument("PointFunction::eval_batch: point dimension mismatch");
  Eigen::VectorXd cv = coord_values(bindings);
  std::vector<Eigen::MatrixXd> out(points.cols(), Eigen::MatrixXd::Zero(rows_, cols_));
  for (Eigen::Index n = 0; n < points.cols(); ++n) {
    for (size_t s = 0; s < slots_.size(); ++s) {
      double mono = 1.0;
      for (int i = 0; i < num_vars_; ++i)
        for (int k = 0; k < slots_[s].alpha.exponents[i]; ++k) mono *= points(i, n);
      out[n](slots_[s].entry % rows_, slots_[s].entry / rows_) +=
          cv[static_cast<Eigen::Index>(s)] * mono;
    }
  }
  return out;
}

double PointFunction::eval_scalar(const Eigen::VectorXd& point, const Bindings& bindings) const {
  if (rows_ != 1 || cols_ != 1)
    throw std::invalid_argument("PointFunction::eval_scalar: not scalar-shaped");
  return eval(point, bindings)(0, 0);
}

Eigen::VectorXd PointFunction::eval_scalar_batch(const Eigen::MatrixXd& points,
                                                 const Bindings& bindings) const {
  if (rows_ != 1 || cols_ != 1)
    throw std::invalid_argument("PointFunction::eval_scalar_batch: not scalar-shaped");
  Eigen::VectorXd cv = coord_values(bindings);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(points.cols());
  for (Eigen::Index n = 0; n < points.cols(); ++n) {
    double acc = 0.0;
    for (size_t s = 0; s < slots_.size(); ++s) {
      double mono = 1.0;
      for (int i = 0; i < num_vars_; ++i)
        for (int k = 0; k < slots_[s].alpha.exponents[i]; ++k) mono *= points(i, n);
      acc += cv[static_cast<Eigen::Index>(s)] * mono;
    }
    out[n] = acc;
  }
  return out;
}

PointFunction to_point_function(const Polynomial& p) { return PointFunction(p); }

}  // namespace polysos
