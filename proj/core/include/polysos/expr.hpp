#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "polysos/errors.hpp"

namespace polysos {

/// Immutable scalar expression DAG: constants, named symbols, +, -, *, and
/// nonnegative integer powers. This is the coefficient algebra for symbolic
/// polynomials; it is closed under the operations polynomial arithmetic needs
/// and supports differentiation with respect to symbols.
///
/// Expressions are value types wrapping shared nodes. Two symbols with the
/// same name are interchangeable everywhere (evaluation, differentiation).
class ScalarExpr {
 public:
  enum class Kind : std::uint8_t { kConstant, kSymbol, kAdd, kSub, kNeg, kMul, kPow };

  struct Node {
    Kind kind;
    double value = 0.0;        // kConstant
    std::string name;          // kSymbol
    std::shared_ptr<const Node> a, b;
    int exponent = 0;          // kPow
  };

  /// Default-constructs the constant 0.
  ScalarExpr();

  static ScalarExpr constant(double v);
  static ScalarExpr symbol(const std::string& name);
  /// Wraps an existing node; used when traversals need to re-enter the
  /// expression API mid-graph.
  static ScalarExpr wrap(std::shared_ptr<const Node> n) { return ScalarExpr(std::move(n)); }

  Kind kind() const { return node_->kind; }
  bool is_constant() const { return node_->kind == Kind::kConstant; }
  bool is_symbol() const { return node_->kind == Kind::kSymbol; }
  bool is_zero() const { return is_constant() && node_->value == 0.0; }
  bool is_one() const { return is_constant() && node_->value == 1.0; }
  /// Constant value; valid only for constant nodes.
  double constant_value() const;
  /// Symbol name; valid only for symbol nodes.
  const std::string& symbol_name() const;

  const std::shared_ptr<const Node>& node() const { return node_; }

  friend ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b);
  friend ScalarExpr operator-(const ScalarExpr& a);
  friend ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b);
  ScalarExpr& operator+=(const ScalarExpr& o) { return *this = *this + o; }
  ScalarExpr& operator-=(const ScalarExpr& o) { return *this = *this - o; }
  ScalarExpr& operator*=(const ScalarExpr& o) { return *this = *this * o; }

  /// e^k for integer k >= 0.
  static ScalarExpr pow(const ScalarExpr& e, int k);

 private:
  explicit ScalarExpr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

inline ScalarExpr operator+(double a, const ScalarExpr& b) { return ScalarExpr::constant(a) + b; }
inline ScalarExpr operator+(const ScalarExpr& a, double b) { return a + ScalarExpr::constant(b); }
inline ScalarExpr operator-(double a, const ScalarExpr& b) { return ScalarExpr::constant(a) - b; }
inline ScalarExpr operator-(const ScalarExpr& a, double b) { return a - ScalarExpr::constant(b); }
inline ScalarExpr operator*(double a, const ScalarExpr& b) { return ScalarExpr::constant(a) * b; }
inline ScalarExpr operator*(const ScalarExpr& a, double b) { return a * ScalarExpr::constant(b); }

using Bindings = std::map<std::string, double>;

/// Evaluates an expression under symbol bindings. Throws MissingBindingError
/// (naming the symbol) if a reachable symbol has no binding. Deterministic:
/// the same expression and bindings produce a bit-identical result.
double eval(const ScalarExpr& e, const Bindings& bindings);

/// Substitutes symbols by expressions (simultaneous), folding constants.
ScalarExpr substitute(const ScalarExpr& e, const std::map<std::string, ScalarExpr>& subs);

/// All distinct symbol names reachable from e, sorted.
std::vector<std::string> free_symbols(const ScalarExpr& e);
void collect_free_symbols(const ScalarExpr& e, std::vector<std::string>& out);

/// Partial derivatives of f with respect to each named symbol, as expressions.
/// Reverse-mode accumulation over the shared DAG; entries for symbols f does
/// not depend on are constant 0.
std::vector<ScalarExpr> gradient(const ScalarExpr& f, const std::vector<std::string>& symbols);

/// Sparse matrix of scalar expressions, stored as structurally nonzero
/// entries sorted column-major. A purely constant matrix evaluates to the
/// same numeric matrix regardless of bindings.
class ExprMatrix {
 public:
  struct Entry {
    int row, col;
    ScalarExpr value;
  };

  ExprMatrix() : rows_(0), cols_(0) {}
  ExprMatrix(int rows, int cols) : rows_(rows), cols_(cols) {}
  /// Builds from entries; merges duplicates by addition, drops fold-zeros.
  ExprMatrix(int rows, int cols, std::vector<Entry> entries);

  static ExprMatrix dense(int rows, int cols, const std::vector<ScalarExpr>& row_major);
  static ExprMatrix identity(int n);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  const std::vector<Entry>& entries() const { return entries_; }
  int nnz() const { return static_cast<int>(entries_.size()); }

  /// Entry (i,j), or constant 0 if structurally absent.
  ScalarExpr at(int i, int j) const;

  bool is_constant() const;

  ExprMatrix transposed() const;

  friend ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b);
  friend ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b);
  ExprMatrix scaled(const ScalarExpr& c) const;

 private:
  int rows_, cols_;
  std::vector<Entry> entries_;  // sorted by (col, row), unique
};

/// Column of `count` distinct symbols named prefix_0 .. prefix_{count-1}.
ExprMatrix make_symbols(const std::string& prefix, int count);

/// Numeric evaluation of every structural entry; absent entries are 0.
/// Result is rows*cols in column-major order.
std::vector<double> eval_matrix(const ExprMatrix& m, const Bindings& bindings);

/// Jacobian of an n x 1 expression column with respect to an m x 1 column of
/// pure, distinct symbols. Entry (i,j) is d f_i / d x_j; structural sparsity
/// reflects actual dependence.
ExprMatrix jacobian(const ExprMatrix& f, const ExprMatrix& x);

/// Flat evaluation program for a fixed set of output expressions over a fixed
/// input symbol order. Compiling once and evaluating many times avoids
/// per-call graph traversal; this is the fast path for binding parametrized
/// problem data.
class ExprTape {
 public:
  ExprTape() = default;

  /// Compiles outputs over the given input symbols. Throws
  /// MissingBindingError if an expression references a symbol not listed.
  static ExprTape compile(const std::vector<ScalarExpr>& outputs,
                          const std::vector<std::string>& inputs);

  int num_inputs() const { return num_inputs_; }
  int num_outputs() const { return static_cast<int>(output_slots_.size()); }

  /// Evaluates all outputs; `inputs` must have num_inputs() values in the
  /// compiled symbol order.
  void eval(const double* inputs, double* outputs) const;
  std::vector<double> eval(const std::vector<double>& inputs) const;

 private:
  enum class Op : std::uint8_t { kConst, kInput, kAdd, kSub, kNeg, kMul, kPow };
  struct Instr {
    Op op;
    int a = 0, b = 0;   // operand slots; for kInput, a = input index
    double value = 0.0; // kConst
  };
  std::vector<Instr> instrs_;
  std::vector<int> output_slots_;
  int num_inputs_ = 0;
};

}  // namespace polysos
