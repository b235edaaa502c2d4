#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>

#include "polysos/poly_io.hpp"
#include "polysos/polynomial.hpp"
#include "support/generators.hpp"

using namespace polysos;
using polysos::test::Rng;

namespace {

const IndeterminateSet kX1{std::vector<std::string>{"x"}};
const IndeterminateSet kX2{std::vector<std::string>{"x1", "x2"}};

Polynomial parse1(const std::string& s) { return parse_polynomial(s, kX1); }
Polynomial parse2(const std::string& s) { return parse_polynomial(s, kX2); }

bool poly_equal(const Polynomial& a, const Polynomial& b, double tol = 0.0) {
  Polynomial d = a - b;
  if (d.is_zero()) return true;
  if (tol == 0.0) return false;
  return d.constant_coords().lpNorm<Eigen::Infinity>() <= tol;
}

}  // namespace

TEST_CASE("graded lex order is total and matches the canonical listing") {
  std::vector<MultiIndex> basis = monomial_basis(2, DegreeRange(0, 2));
  REQUIRE(basis.size() == 6);
  // 1, x1, x2, x1^2, x1*x2, x2^2
  CHECK(basis[0].exponents == std::vector<int>{0, 0});
  CHECK(basis[1].exponents == std::vector<int>{1, 0});
  CHECK(basis[2].exponents == std::vector<int>{0, 1});
  CHECK(basis[3].exponents == std::vector<int>{2, 0});
  CHECK(basis[4].exponents == std::vector<int>{1, 1});
  CHECK(basis[5].exponents == std::vector<int>{0, 2});

  for (size_t i = 0; i < basis.size(); ++i) {
    for (size_t j = 0; j < basis.size(); ++j) {
      int cmp = graded_lex_less(basis[i], basis[j]) ? -1
                : graded_lex_less(basis[j], basis[i]) ? 1
                                                      : 0;
      CHECK(cmp == (i < j ? -1 : i > j ? 1 : 0));
    }
  }
}

TEST_CASE("monomial_basis counts") {
  CHECK(monomial_basis(1, DegreeRange(1, 1)).size() == 1);
  CHECK(monomial_basis(3, DegreeRange(0, 4)).size() == 35);  // C(7,4)

  // Exhaustive enumeration oracle for the count.
  int count = 0;
  for (int a = 0; a <= 4; ++a)
    for (int b = 0; b <= 4; ++b)
      for (int c = 0; c <= 4; ++c)
        if (a + b + c <= 4) ++count;
  CHECK(count == 35);
}

TEST_CASE("poly_add basics") {
  Polynomial p = parse1("1 + x^2") + parse1("x");
  CHECK(poly_equal(p, parse1("1 + x + x^2")));

  Polynomial q = parse1("3 + 2*x");
  CHECK(poly_equal(q + Polynomial::zero(kX1), q));
  CHECK((q + Polynomial::zero(kX1)).sparsity() == q.sparsity());

  Polynomial cancel = parse1("x^2") + parse1("-1*x^2");
  CHECK(cancel.is_zero());
  CHECK(cancel.sparsity().num_monomials() == 0);

  Polynomial m1 = Polynomial::constant_matrix(kX1, 2, 1, {1.0, 2.0});
  Polynomial m2 = Polynomial::constant_matrix(kX1, 3, 1, {1.0, 2.0, 3.0});
  CHECK_THROWS_AS(m1 + m2, std::invalid_argument);
}

TEST_CASE("poly_mul closed forms") {
  CHECK(poly_equal(parse1("1 + x") * parse1("1 - x"), parse1("1 - x^2")));
  CHECK(poly_equal(parse2("x1") * parse2("x2"), parse2("x1*x2")));
  Polynomial a = Polynomial::constant_matrix(kX1, 1, 2, {1.0, 2.0});
  Polynomial b = Polynomial::constant_matrix(kX1, 3, 1, {1.0, 2.0, 3.0});
  CHECK_THROWS_AS(poly_mul(a, b), std::invalid_argument);
}

TEST_CASE("poly_mul matches pointwise product oracle on random cubics") {
  Rng rng(5);
  for (int trial = 0; trial < 4; ++trial) {
    Polynomial p = polysos::test::random_polynomial(rng, kX2, 3);
    Polynomial q = polysos::test::random_polynomial(rng, kX2, 3);
    Polynomial pq = p * q;
    PointFunction fp(p), fq(q), fpq(pq);
    for (int k = 0; k < 20; ++k) {
      Eigen::VectorXd a = rng.vector(2, -2, 2);
      double expect = fp.eval_scalar(a) * fq.eval_scalar(a);
      double got = fpq.eval_scalar(a);
      CHECK(std::abs(got - expect) <= 1e-10 * std::max(1.0, std::abs(expect)));
    }
  }
}

TEST_CASE("ring distributivity at the evaluation level") {
  Rng rng(17);
  for (int trial = 0; trial < 6; ++trial) {
    Polynomial p = polysos::test::random_polynomial(rng, kX2, 2);
    Polynomial q = polysos::test::random_polynomial(rng, kX2, 2);
    Polynomial r = polysos::test::random_polynomial(rng, kX2, 2);
    Polynomial lhs = p * (q + r);
    Polynomial rhs = p * q + p * r;
    PointFunction fl(lhs), fr(rhs);
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd a = rng.vector(2, -1.5, 1.5);
      double vl = fl.eval_scalar(a), vr = fr.eval_scalar(a);
      CHECK(std::abs(vl - vr) <= 1e-10 * std::max(1.0, std::abs(vr)));
    }
  }
}

TEST_CASE("poly_diff closed forms") {
  CHECK(poly_equal(poly_diff(parse1("x^2"), "x"), parse1("2*x")));
  CHECK(poly_equal(poly_diff(parse2("x1*x2"), "x2"), parse2("x1")));
  CHECK(poly_diff(parse1("3"), "x").is_zero());
  CHECK_THROWS_AS(poly_diff(parse1("x"), "y"), std::invalid_argument);
}

TEST_CASE("poly_diff then poly_integrate recovers terms depending on the variable") {
  Rng rng(23);
  for (int trial = 0; trial < 5; ++trial) {
    // Build a polynomial whose every monomial contains x1.
    Polynomial p = parse2("x1") * polysos::test::random_polynomial(rng, kX2, 2);
    Polynomial back = poly_integrate(poly_diff(p, "x1"), "x1");
    CHECK(poly_equal(back, p, 1e-12));
  }
}

TEST_CASE("poly_subs") {
  CHECK(poly_equal(poly_subs(parse1("x^2"), "x", parse1("x + 1")), parse1("x^2 + 2*x + 1")));
  CHECK(poly_subs(parse2("x1*x2"), "x2", Polynomial::zero(kX2)).is_zero());
  CHECK_THROWS_AS(poly_subs(parse1("x"), "z", parse1("x")), std::invalid_argument);

  // Substitution at a constant agrees with evaluation on the remaining vars.
  Rng rng(31);
  for (int trial = 0; trial < 3; ++trial) {
    Polynomial p = polysos::test::random_polynomial(rng, kX2, 2);
    Polynomial sub = poly_subs(p, "x1", Polynomial::constant(kX2, 2.0));
    PointFunction fp(p), fs(sub);
    for (int k = 0; k < 10; ++k) {
      double x2 = rng.uniform(-2, 2);
      Eigen::VectorXd full(2), rest(2);
      full << 2.0, x2;
      rest << 0.0, x2;  // substituted polynomial no longer involves x1
      CHECK(fs.eval_scalar(rest) == doctest::Approx(fp.eval_scalar(full)).epsilon(1e-12));
    }
  }
}

TEST_CASE("to_point_function closed forms and batch oracle") {
  PointFunction f(parse1("1 + x^2"));
  Eigen::VectorXd two(1);
  two << 2.0;
  CHECK(f.eval_scalar(two) == 5.0);

  PointFunction g(parse2("x1*x2"));
  Eigen::VectorXd a(2);
  a << 3.0, -1.0;
  CHECK(g.eval_scalar(a) == -3.0);

  // Batch of 100 points vs a naive per-point Horner-style oracle.
  Rng rng(77);
  Polynomial p = polysos::test::random_polynomial(rng, kX2, 3);
  Eigen::MatrixXd pts = rng.matrix(2, 100, -2, 2);
  PointFunction fp(p);
  Eigen::VectorXd batch = fp.eval_scalar_batch(pts);
  const auto& sp = p.sparsity();
  for (int n = 0; n < 100; ++n) {
    double acc = 0.0;
    for (int m = 0; m < sp.num_monomials(); ++m) {
      double mono = 1.0;
      for (int i = 0; i < 2; ++i) mono *= std::pow(pts(i, n), sp.monomial(m).exponents[i]);
      acc += p.coord(sp.slot(m, 0)).constant_value() * mono;
    }
    CHECK(std::abs(batch[n] - acc) <= 1e-12 * std::max(1.0, std::abs(acc)));
  }

  // Symbolic coordinates require bindings at call time.
  Polynomial sym = Polynomial::symbols("c", MonomialSparsity::scalar(kX1, {MultiIndex({2})}));
  PointFunction fsym(sym);
  CHECK_THROWS_AS(fsym.eval_scalar(two), MissingBindingError);
  CHECK(fsym.eval_scalar(two, {{"c_0", 3.0}}) == 12.0);
}

TEST_CASE("sparsity union and product") {
  MonomialSparsity one = MonomialSparsity::scalar(kX1, {MultiIndex({0})});
  MonomialSparsity x = MonomialSparsity::scalar(kX1, {MultiIndex({1})});
  MonomialSparsity u = sparsity_union(one, x);
  CHECK(u.num_monomials() == 2);

  MonomialSparsity onex = MonomialSparsity::scalar(kX1, {MultiIndex({0}), MultiIndex({1})});
  MonomialSparsity prod = sparsity_product(onex, onex);
  CHECK(prod.num_monomials() == 3);  // 1, x, x^2

  // Product pattern equals the sparsity of poly_mul with all-ones coefficients.
  Rng rng(3);
  Polynomial p = polysos::test::random_matrix_polynomial(rng, kX2, 2, 2, 2);
  Polynomial q = polysos::test::random_matrix_polynomial(rng, kX2, 2, 2, 1);
  auto ones = [](const Polynomial& r) {
    std::vector<ScalarExpr> c(r.sparsity().nnz(), ScalarExpr::constant(1.0));
    return Polynomial(r.sparsity(), std::move(c));
  };
  MonomialSparsity sp_prod = sparsity_product(p.sparsity(), q.sparsity());
  Polynomial pq_ones = ones(p) * ones(q);
  // All-ones products cannot cancel; sparsity must coincide.
  CHECK(pq_ones.sparsity() == sp_prod);
}

TEST_CASE("coords_of and reconstruct round trip") {
  Polynomial p = parse1("3 + 2*x");
  auto [sp, coords] = coords_of(p);
  CHECK(sp.num_monomials() == 2);
  CHECK(coords[0].constant_value() == 3.0);
  CHECK(coords[1].constant_value() == 2.0);
  CHECK(poly_equal(reconstruct(sp, coords), p));

  Eigen::VectorXd v(2);
  v << 3.0, 2.0;
  CHECK(poly_equal(reconstruct(sp, v), p));
  CHECK_THROWS_AS(reconstruct(sp, Eigen::VectorXd::Zero(3)), std::invalid_argument);

  Rng rng(11);
  for (int trial = 0; trial < 100; ++trial) {
    Polynomial r = polysos::test::random_matrix_polynomial(rng, kX2, 2, 3, 2);
    auto [rs, rc] = coords_of(r);
    CHECK(poly_equal(reconstruct(rs, rc), r));
  }
}

TEST_CASE("polynomial text form round trips") {
  Polynomial p = parse2("3 + 2*x1*x2^2");
  CHECK(to_text(p) == "3 + 2*x1*x2^2");
  CHECK(poly_equal(parse_polynomial(to_text(p), kX2), p));

  Rng rng(13);
  for (int trial = 0; trial < 20; ++trial) {
    Polynomial r = polysos::test::random_polynomial(rng, kX2, 3);
    CHECK(poly_equal(parse_polynomial(to_text(r), kX2), r));
  }

  CHECK(to_text(Polynomial::zero(kX2)) == "0");
  CHECK(parse_polynomial("0", kX2).is_zero());
  CHECK_THROWS_AS(parse_polynomial("2 +", kX2), ParseError);
  CHECK_THROWS_AS(parse_polynomial("y", kX2), ParseError);
}

TEST_CASE("problem file round trips") {
  ProblemFile pf;
  pf.vars = kX2;
  pf.polys["A"] = parse2("2 + 2*x1^2");
  pf.polys["B"] = parse2("1 + x1^2");
  pf.scalars["gamma"] = 1.5;

  std::stringstream ss;
  write_problem_file(ss, pf);
  ProblemFile back = read_problem_file(ss);
  CHECK(back.vars == pf.vars);
  CHECK(back.scalars.at("gamma") == 1.5);
  CHECK(poly_equal(back.polys.at("A"), pf.polys.at("A")));
  CHECK(poly_equal(back.polys.at("B"), pf.polys.at("B")));

  std::stringstream bad("poly A 1 + x1\n");
  CHECK_THROWS_AS(read_problem_file(bad), ParseError);
}

TEST_CASE("symbolic basis and canonicalization rules") {
  MonomialSparsity sp = MonomialSparsity::scalar(kX1, {MultiIndex({0}), MultiIndex({1})});
  Polynomial xi = Polynomial::symbols("v", sp);
  CHECK(xi.is_symbolic_basis());
  CHECK_FALSE(xi.is_constant_poly());
  CHECK(xi.coord_symbols() == std::vector<std::string>{"v_0", "v_1"});

  // Symbolic coordinates are never canonicalized away.
  Polynomial diff = xi - xi;
  CHECK(diff.is_zero());  // exact symbolic cancellation does fold to zero
  std::map<std::string, ScalarExpr> zero_bind{{"v_0", ScalarExpr::constant(0.0)}};
  Polynomial half_bound = xi.bind(zero_bind);
  CHECK(half_bound.sparsity().num_monomials() == 1);  // constant slot dropped
}
