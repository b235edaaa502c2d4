#pragma once

#include <Eigen/Dense>
#include <random>
#include <vector>

#include "polysos/polynomial.hpp"

namespace polysos::test {

/// Deterministic RNG for property-style tests; all randomness derives from
/// an explicit seed so failures reproduce.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  double uniform(double lo, double hi) {
    // Fixed mapping (not std::uniform_real_distribution) so streams are
    // identical across standard libraries.
    const double u = static_cast<double>(gen_()) * 0x1p-64;
    return lo + (hi - lo) * u;
  }
  int uniform_int(int lo, int hi) {  // inclusive
    return lo + static_cast<int>(gen_() % static_cast<std::uint64_t>(hi - lo + 1));
  }
  std::mt19937_64& raw() { return gen_; }

  Eigen::VectorXd vector(int n, double lo = -1.0, double hi = 1.0) {
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = uniform(lo, hi);
    return v;
  }
  Eigen::MatrixXd matrix(int r, int c, double lo = -1.0, double hi = 1.0) {
    Eigen::MatrixXd m(r, c);
    for (int j = 0; j < c; ++j)
      for (int i = 0; i < r; ++i) m(i, j) = uniform(lo, hi);
    return m;
  }
  Eigen::MatrixXd symmetric(int n, double lo = -1.0, double hi = 1.0) {
    Eigen::MatrixXd m = matrix(n, n, lo, hi);
    return 0.5 * (m + m.transpose());
  }
  Eigen::MatrixXd psd(int n) {
    Eigen::MatrixXd f = matrix(n, n);
    return f * f.transpose();
  }

 private:
  std::mt19937_64 gen_;
};

/// Random constant scalar polynomial with all monomials up to `deg`.
inline Polynomial random_polynomial(Rng& rng, const IndeterminateSet& vars, int deg,
                                    double lo = -1.0, double hi = 1.0) {
  std::vector<MultiIndex> monos = monomial_basis(vars, DegreeRange(0, deg));
  std::vector<ScalarExpr> coords;
  coords.reserve(monos.size());
  for (size_t i = 0; i < monos.size(); ++i)
    coords.push_back(ScalarExpr::constant(rng.uniform(lo, hi)));
  return Polynomial(MonomialSparsity::scalar(vars, std::move(monos)), std::move(coords));
}

/// Random constant matrix polynomial with dense entries up to `deg`.
inline Polynomial random_matrix_polynomial(Rng& rng, const IndeterminateSet& vars, int rows,
                                           int cols, int deg) {
  std::vector<MultiIndex> monos = monomial_basis(vars, DegreeRange(0, deg));
  std::vector<std::vector<int>> inc;
  std::vector<ScalarExpr> coords;
  std::vector<MultiIndex> kept;
  for (const auto& alpha : monos) {
    std::vector<int> ents;
    for (int e = 0; e < rows * cols; ++e)
      if (rng.uniform(0, 1) < 0.7) ents.push_back(e);
    if (ents.empty()) continue;
    kept.push_back(alpha);
    for (size_t k = 0; k < ents.size(); ++k)
      coords.push_back(ScalarExpr::constant(rng.uniform(-1, 1)));
    inc.push_back(std::move(ents));
  }
  return Polynomial(MonomialSparsity(vars, rows, cols, std::move(kept), std::move(inc)),
                    std::move(coords));
}

}  // namespace polysos::test
