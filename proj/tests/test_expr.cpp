#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "polysos/expr.hpp"
#include "support/generators.hpp"

using namespace polysos;

TEST_CASE("make_symbols produces distinct named columns") {
  ExprMatrix c = make_symbols("c", 3);
  CHECK(c.rows() == 3);
  CHECK(c.cols() == 1);
  CHECK(c.at(0, 0).symbol_name() == "c_0");
  CHECK(c.at(1, 0).symbol_name() == "c_1");
  CHECK(c.at(2, 0).symbol_name() == "c_2");

  ExprMatrix empty = make_symbols("c", 0);
  CHECK(empty.rows() == 0);
  CHECK(empty.nnz() == 0);

  // Name identity: a second column with the same prefix is interchangeable.
  ExprMatrix q1 = make_symbols("q", 2), q2 = make_symbols("q", 2);
  for (int i = 0; i < 2; ++i)
    CHECK(q1.at(i, 0).symbol_name() == q2.at(i, 0).symbol_name());

  CHECK_THROWS_AS(make_symbols("", 1), std::invalid_argument);
}

TEST_CASE("eval computes arithmetic and reports missing bindings") {
  ExprMatrix c = make_symbols("c", 2);
  ScalarExpr e0 = c.at(0, 0) + ScalarExpr::constant(2.0);
  CHECK(eval(e0, {{"c_0", 3.0}}) == 5.0);

  ScalarExpr e1 = c.at(0, 0) * c.at(1, 0);
  CHECK(eval(e1, {{"c_0", 2.0}, {"c_1", -1.0}}) == -2.0);

  CHECK(eval(ScalarExpr::constant(7.0), {}) == 7.0);

  try {
    eval(e1, {{"c_0", 2.0}});
    FAIL("expected MissingBindingError");
  } catch (const MissingBindingError& err) {
    CHECK(err.symbol() == "c_1");
  }
}

TEST_CASE("constant folding keeps constant subgraphs constant") {
  ScalarExpr a = ScalarExpr::constant(2.0) * ScalarExpr::constant(3.0);
  CHECK(a.is_constant());
  CHECK(a.constant_value() == 6.0);
  ScalarExpr b = ScalarExpr::pow(ScalarExpr::constant(2.0), 5);
  CHECK(b.constant_value() == 32.0);
  ScalarExpr x = ScalarExpr::symbol("x");
  CHECK((x * ScalarExpr::constant(0.0)).is_zero());
  CHECK((x + ScalarExpr::constant(0.0)).is_symbol());
}

TEST_CASE("jacobian on closed forms") {
  ExprMatrix x = make_symbols("x", 2);
  ScalarExpr x0 = x.at(0, 0), x1 = x.at(1, 0);
  ExprMatrix f = ExprMatrix::dense(2, 1, {x0 * x0, x0 * x1});
  ExprMatrix j = jacobian(f, x);
  CHECK(j.rows() == 2);
  CHECK(j.cols() == 2);
  Bindings at{{"x_0", 1.5}, {"x_1", -2.0}};
  CHECK(eval(j.at(0, 0), at) == doctest::Approx(3.0));
  CHECK(j.at(0, 1).is_zero());  // structural: f_0 does not involve x_1
  CHECK(eval(j.at(1, 0), at) == doctest::Approx(-2.0));
  CHECK(eval(j.at(1, 1), at) == doctest::Approx(1.5));

  ExprMatrix c = ExprMatrix::dense(1, 1, {ScalarExpr::constant(5.0)});
  ExprMatrix jc = jacobian(c, x);
  CHECK(jc.nnz() == 0);

  ExprMatrix bad = ExprMatrix::dense(1, 1, {x0 + x1});
  CHECK_THROWS_AS(jacobian(f, bad), std::invalid_argument);
}

namespace {

// Random expression DAG of bounded depth over the given symbols.
ScalarExpr random_expr(polysos::test::Rng& rng, const std::vector<ScalarExpr>& syms,
                       int depth) {
  if (depth == 0 || rng.uniform(0, 1) < 0.25) {
    if (rng.uniform(0, 1) < 0.35) return ScalarExpr::constant(rng.uniform(-2, 2));
    return syms[static_cast<size_t>(rng.uniform_int(0, static_cast<int>(syms.size()) - 1))];
  }
  switch (rng.uniform_int(0, 4)) {
    case 0:
      return random_expr(rng, syms, depth - 1) + random_expr(rng, syms, depth - 1);
    case 1:
      return random_expr(rng, syms, depth - 1) - random_expr(rng, syms, depth - 1);
    case 2:
      return random_expr(rng, syms, depth - 1) * random_expr(rng, syms, depth - 1);
    case 3:
      return -random_expr(rng, syms, depth - 1);
    default:
      return ScalarExpr::pow(random_expr(rng, syms, depth - 1), rng.uniform_int(0, 3));
  }
}

double central_difference(const ScalarExpr& e, const Bindings& at, const std::string& sym,
                          double h) {
  Bindings up = at, dn = at;
  up[sym] += h;
  dn[sym] -= h;
  return (eval(e, up) - eval(e, dn)) / (2.0 * h);
}

}  // namespace

TEST_CASE("jacobian matches central finite differences on random DAGs") {
  polysos::test::Rng rng(42);
  std::vector<std::string> names{"x_0", "x_1", "x_2"};
  std::vector<ScalarExpr> syms;
  for (const auto& n : names) syms.push_back(ScalarExpr::symbol(n));

  int checked = 0;
  for (int trial = 0; trial < 60; ++trial) {
    ScalarExpr f = random_expr(rng, syms, 6);
    std::vector<ScalarExpr> grad = gradient(f, names);
    for (int rep = 0; rep < 10; ++rep) {
      Bindings at;
      for (const auto& n : names) at[n] = rng.uniform(-1.2, 1.2);
      for (size_t j = 0; j < names.size(); ++j) {
        double ad = eval(grad[j], at);
        double fd = central_difference(f, at, names[j], 1e-6);
        double scale = std::max({1.0, std::abs(ad), std::abs(fd)});
        CHECK(std::abs(ad - fd) / scale <= 1e-5);
        ++checked;
      }
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("jacobian is linear in the function") {
  polysos::test::Rng rng(7);
  std::vector<std::string> names{"x_0", "x_1"};
  std::vector<ScalarExpr> syms{ScalarExpr::symbol("x_0"), ScalarExpr::symbol("x_1")};
  for (int trial = 0; trial < 20; ++trial) {
    ScalarExpr f = random_expr(rng, syms, 4);
    ScalarExpr g = random_expr(rng, syms, 4);
    const double alpha = 0.5, beta = -2.0;  // exactly representable
    ScalarExpr combo = alpha * f + beta * g;
    auto gc = gradient(combo, names);
    auto gf = gradient(f, names);
    auto gg = gradient(g, names);
    Bindings at{{"x_0", rng.uniform(-1, 1)}, {"x_1", rng.uniform(-1, 1)}};
    for (size_t j = 0; j < names.size(); ++j) {
      CHECK(eval(gc[j], at) == doctest::Approx(alpha * eval(gf[j], at) + beta * eval(gg[j], at))
                                   .epsilon(1e-12));
    }
  }
}

TEST_CASE("evaluation is deterministic") {
  polysos::test::Rng rng(99);
  std::vector<ScalarExpr> syms{ScalarExpr::symbol("a"), ScalarExpr::symbol("b")};
  ScalarExpr f = random_expr(rng, syms, 6);
  Bindings at{{"a", 0.3141592653589793}, {"b", -1.7320508075688772}};
  double v1 = eval(f, at);
  double v2 = eval(f, at);
  CHECK(v1 == v2);  // bit-identical
}

TEST_CASE("substitute replaces symbols and folds") {
  ScalarExpr x = ScalarExpr::symbol("x"), y = ScalarExpr::symbol("y");
  ScalarExpr f = x * x + y;
  ScalarExpr g = substitute(f, {{"x", ScalarExpr::constant(3.0)}});
  CHECK(eval(g, {{"y", 1.0}}) == 10.0);
  ScalarExpr h = substitute(f, {{"x", y}});
  CHECK(eval(h, {{"y", 2.0}}) == 6.0);
}

TEST_CASE("tape evaluation matches graph evaluation") {
  polysos::test::Rng rng(1234);
  std::vector<std::string> names{"p_0", "p_1", "p_2"};
  std::vector<ScalarExpr> syms;
  for (const auto& n : names) syms.push_back(ScalarExpr::symbol(n));
  std::vector<ScalarExpr> outs;
  for (int i = 0; i < 12; ++i) outs.push_back(random_expr(rng, syms, 5));
  ExprTape tape = ExprTape::compile(outs, names);
  for (int rep = 0; rep < 20; ++rep) {
    std::vector<double> in = {rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
    Bindings at{{"p_0", in[0]}, {"p_1", in[1]}, {"p_2", in[2]}};
    std::vector<double> got = tape.eval(in);
    for (size_t i = 0; i < outs.size(); ++i) CHECK(got[i] == eval(outs[i], at));
  }

  CHECK_THROWS_AS(ExprTape::compile({syms[0]}, {"other"}), MissingBindingError);
}
