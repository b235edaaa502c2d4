#include "polysos/expr.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>
#include <unordered_set>

namespace polysos {

namespace {

using Node = ScalarExpr::Node;
using Kind = ScalarExpr::Kind;

std::shared_ptr<const Node> make_node(Node n) {
  return std::make_shared<const Node>(std::move(n));
}

const std::shared_ptr<const Node>& zero_node() {
  static const std::shared_ptr<const Node> z =
      make_node(Node{Kind::kConstant, 0.0, {}, nullptr, nullptr, 0});
  return z;
}

}  // namespace

ScalarExpr::ScalarExpr() : node_(zero_node()) {}

ScalarExpr ScalarExpr::constant(double v) {
  return ScalarExpr(make_node(Node{Kind::kConstant, v, {}, nullptr, nullptr, 0}));
}

ScalarExpr ScalarExpr::symbol(const std::string& name) {
  if (name.empty()) throw std::invalid_argument("symbol name must be nonempty");
  return ScalarExpr(make_node(Node{Kind::kSymbol, 0.0, name, nullptr, nullptr, 0}));
}

double ScalarExpr::constant_value() const {
  if (!is_constant()) throw std::invalid_argument("expression is not a constant");
  return node_->value;
}

const std::string& ScalarExpr::symbol_name() const {
  if (!is_symbol()) throw std::invalid_argument("expression is not a symbol");
  return node_->name;
}

ScalarExpr operator+(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_constant() && b.is_constant())
    return ScalarExpr::constant(a.constant_value() + b.constant_value());
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  return ScalarExpr(make_node(Node{Kind::kAdd, 0.0, {}, a.node_, b.node_, 0}));
}

ScalarExpr operator-(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_constant() && b.is_constant())
    return ScalarExpr::constant(a.constant_value() - b.constant_value());
  if (b.is_zero()) return a;
  if (a.is_zero()) return -b;
  return ScalarExpr(make_node(Node{Kind::kSub, 0.0, {}, a.node_, b.node_, 0}));
}

ScalarExpr operator-(const ScalarExpr& a) {
  if (a.is_constant()) return ScalarExpr::constant(-a.constant_value());
  if (a.kind() == Kind::kNeg) return ScalarExpr(a.node_->a);
  return ScalarExpr(make_node(Node{Kind::kNeg, 0.0, {}, a.node_, nullptr, 0}));
}

ScalarExpr operator*(const ScalarExpr& a, const ScalarExpr& b) {
  if (a.is_constant() && b.is_constant())
    return ScalarExpr::constant(a.constant_value() * b.constant_value());
  if (a.is_zero() || b.is_zero()) return ScalarExpr::constant(0.0);
  if (a.is_one()) return b;
  if (b.is_one()) return a;
  return ScalarExpr(make_node(Node{Kind::kMul, 0.0, {}, a.node_, b.node_, 0}));
}

ScalarExpr ScalarExpr::pow(const ScalarExpr& e, int k) {
  if (k < 0) throw std::invalid_argument("pow exponent must be nonnegative");
  if (k == 0) return ScalarExpr::constant(1.0);
  if (k == 1) return e;
  if (e.is_constant()) return ScalarExpr::constant(std::pow(e.constant_value(), k));
  return ScalarExpr(make_node(Node{Kind::kPow, 0.0, {}, e.node_, nullptr, k}));
}

namespace {

double eval_node(const Node* n, const Bindings& bindings,
                 std::unordered_map<const Node*, double>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  double v = 0.0;
  switch (n->kind) {
    case Kind::kConstant:
      v = n->value;
      break;
    case Kind::kSymbol: {
      auto b = bindings.find(n->name);
      if (b == bindings.end()) throw MissingBindingError(n->name);
      v = b->second;
      break;
    }
    case Kind::kAdd:
      v = eval_node(n->a.get(), bindings, cache) + eval_node(n->b.get(), bindings, cache);
      break;
    case Kind::kSub:
      v = eval_node(n->a.get(), bindings, cache) - eval_node(n->b.get(), bindings, cache);
      break;
    case Kind::kNeg:
      v = -eval_node(n->a.get(), bindings, cache);
      break;
    case Kind::kMul:
      v = eval_node(n->a.get(), bindings, cache) * eval_node(n->b.get(), bindings, cache);
      break;
    case Kind::kPow: {
      double base = eval_node(n->a.get(), bindings, cache);
      double r = 1.0;
      for (int i = 0; i < n->exponent; ++i) r *= base;
      v = r;
      break;
    }
  }
  cache.emplace(n, v);
  return v;
}

}  // namespace

double eval(const ScalarExpr& e, const Bindings& bindings) {
  std::unordered_map<const Node*, double> cache;
  return eval_node(e.node().get(), bindings, cache);
}

namespace {

ScalarExpr substitute_node(const std::shared_ptr<const Node>& n,
                           const std::map<std::string, ScalarExpr>& subs,
                           std::unordered_map<const Node*, ScalarExpr>& cache) {
  auto it = cache.find(n.get());
  if (it != cache.end()) return it->second;
  ScalarExpr r;
  switch (n->kind) {
    case Kind::kConstant:
      r = ScalarExpr::constant(n->value);
      break;
    case Kind::kSymbol: {
      auto s = subs.find(n->name);
      r = (s == subs.end()) ? ScalarExpr::symbol(n->name) : s->second;
      break;
    }
    case Kind::kAdd:
      r = substitute_node(n->a, subs, cache) + substitute_node(n->b, subs, cache);
      break;
    case Kind::kSub:
      r = substitute_node(n->a, subs, cache) - substitute_node(n->b, subs, cache);
      break;
    case Kind::kNeg:
      r = -substitute_node(n->a, subs, cache);
      break;
    case Kind::kMul:
      r = substitute_node(n->a, subs, cache) * substitute_node(n->b, subs, cache);
      break;
    case Kind::kPow:
      r = ScalarExpr::pow(substitute_node(n->a, subs, cache), n->exponent);
      break;
  }
  cache.emplace(n.get(), r);
  return r;
}

}  // namespace

ScalarExpr substitute(const ScalarExpr& e, const std::map<std::string, ScalarExpr>& subs) {
  std::unordered_map<const Node*, ScalarExpr> cache;
  return substitute_node(e.node(), subs, cache);
}

void collect_free_symbols(const ScalarExpr& e, std::vector<std::string>& out) {
  std::unordered_set<const Node*> seen;
  std::vector<const Node*> stack{e.node().get()};
  while (!stack.empty()) {
    const Node* n = stack.back();
    stack.pop_back();
    if (!seen.insert(n).second) continue;
    if (n->kind == Kind::kSymbol) out.push_back(n->name);
    if (n->a) stack.push_back(n->a.get());
    if (n->b) stack.push_back(n->b.get());
  }
}

std::vector<std::string> free_symbols(const ScalarExpr& e) {
  std::vector<std::string> out;
  collect_free_symbols(e, out);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

// Topological order (children before parents) of the DAG under `root`.
std::vector<const Node*> topo_order(const Node* root) {
  std::vector<const Node*> order;
  std::unordered_map<const Node*, int> state;  // 0 new, 1 open, 2 done
  std::vector<const Node*> stack{root};
  while (!stack.empty()) {
    const Node* n = stack.back();
    int& st = state[n];
    if (st == 2) {
      stack.pop_back();
      continue;
    }
    if (st == 0) {
      st = 1;
      if (n->a && state[n->a.get()] != 2) stack.push_back(n->a.get());
      if (n->b && state[n->b.get()] != 2) stack.push_back(n->b.get());
    } else {
      st = 2;
      order.push_back(n);
      stack.pop_back();
    }
  }
  return order;
}

}  // namespace

std::vector<ScalarExpr> gradient(const ScalarExpr& f, const std::vector<std::string>& symbols) {
  const Node* root = f.node().get();
  std::vector<const Node*> order = topo_order(root);
  std::unordered_map<const Node*, ScalarExpr> adj;
  adj[root] = ScalarExpr::constant(1.0);

  auto expr_of = [](const std::shared_ptr<const Node>& n) -> ScalarExpr {
    return ScalarExpr::wrap(n);
  };

  std::map<std::string, ScalarExpr> by_symbol;
  // Reverse sweep: propagate adjoints from outputs to leaves.
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    const Node* n = *it;
    auto a_it = adj.find(n);
    if (a_it == adj.end()) continue;  // unreachable from output adjoint
    const ScalarExpr& g = a_it->second;
    if (g.is_zero()) continue;
    switch (n->kind) {
      case Kind::kConstant:
        break;
      case Kind::kSymbol: {
        auto [sit, inserted] = by_symbol.try_emplace(n->name, g);
        if (!inserted) sit->second = sit->second + g;
        break;
      }
      case Kind::kAdd:
        adj[n->a.get()] = adj.count(n->a.get()) ? adj[n->a.get()] + g : g;
        adj[n->b.get()] = adj.count(n->b.get()) ? adj[n->b.get()] + g : g;
        break;
      case Kind::kSub: {
        adj[n->a.get()] = adj.count(n->a.get()) ? adj[n->a.get()] + g : g;
        ScalarExpr mg = -g;
        adj[n->b.get()] = adj.count(n->b.get()) ? adj[n->b.get()] + mg : mg;
        break;
      }
      case Kind::kNeg: {
        ScalarExpr mg = -g;
        adj[n->a.get()] = adj.count(n->a.get()) ? adj[n->a.get()] + mg : mg;
        break;
      }
      case Kind::kMul: {
        ScalarExpr ga = g * expr_of(n->b);
        ScalarExpr gb = g * expr_of(n->a);
        adj[n->a.get()] = adj.count(n->a.get()) ? adj[n->a.get()] + ga : ga;
        adj[n->b.get()] = adj.count(n->b.get()) ? adj[n->b.get()] + gb : gb;
        break;
      }
      case Kind::kPow: {
        ScalarExpr base = expr_of(n->a);
        ScalarExpr ga = g * (ScalarExpr::constant(n->exponent) *
                             ScalarExpr::pow(base, n->exponent - 1));
        adj[n->a.get()] = adj.count(n->a.get()) ? adj[n->a.get()] + ga : ga;
        break;
      }
    }
  }

  std::vector<ScalarExpr> out;
  out.reserve(symbols.size());
  for (const auto& s : symbols) {
    auto it = by_symbol.find(s);
    out.push_back(it == by_symbol.end() ? ScalarExpr::constant(0.0) : it->second);
  }
  return out;
}

ExprMatrix::ExprMatrix(int rows, int cols, std::vector<Entry> entries)
    : rows_(rows), cols_(cols) {
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= rows || e.col < 0 || e.col >= cols)
      throw std::invalid_argument("ExprMatrix entry out of bounds");
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    return std::pair(a.col, a.row) < std::pair(b.col, b.row);
  });
  for (auto& e : entries) {
    if (!entries_.empty() && entries_.back().row == e.row && entries_.back().col == e.col) {
      entries_.back().value = entries_.back().value + e.value;
    } else {
      entries_.push_back(std::move(e));
    }
  }
  entries_.erase(std::remove_if(entries_.begin(), entries_.end(),
                                [](const Entry& e) { return e.value.is_zero(); }),
                 entries_.end());
}

ExprMatrix ExprMatrix::dense(int rows, int cols, const std::vector<ScalarExpr>& row_major) {
  if (static_cast<int>(row_major.size()) != rows * cols)
    throw std::invalid_argument("dense: size mismatch");
  std::vector<Entry> entries;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j)
      if (!row_major[i * cols + j].is_zero()) entries.push_back({i, j, row_major[i * cols + j]});
  return ExprMatrix(rows, cols, std::move(entries));
}

ExprMatrix ExprMatrix::identity(int n) {
  std::vector<Entry> entries;
  entries.reserve(n);
  for (int i = 0; i < n; ++i) entries.push_back({i, i, ScalarExpr::constant(1.0)});
  return ExprMatrix(n, n, std::move(entries));
}

ScalarExpr ExprMatrix::at(int i, int j) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), std::pair(j, i),
                             [](const Entry& e, const std::pair<int, int>& key) {
                               return std::pair(e.col, e.row) < key;
                             });
  if (it != entries_.end() && it->col == j && it->row == i) return it->value;
  return ScalarExpr::constant(0.0);
}

bool ExprMatrix::is_constant() const {
  for (const auto& e : entries_)
    if (!e.value.is_constant()) return false;
  return true;
}

ExprMatrix ExprMatrix::transposed() const {
  std::vector<Entry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) entries.push_back({e.col, e.row, e.value});
  return ExprMatrix(cols_, rows_, std::move(entries));
}

ExprMatrix operator+(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw std::invalid_argument("ExprMatrix add: shape mismatch");
  std::vector<ExprMatrix::Entry> entries = a.entries();
  entries.insert(entries.end(), b.entries().begin(), b.entries().end());
  return ExprMatrix(a.rows(), a.cols(), std::move(entries));
}

ExprMatrix operator*(const ExprMatrix& a, const ExprMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("ExprMatrix mul: shape mismatch");
  // Group a's entries by column for the sparse product.
  std::vector<std::vector<const ExprMatrix::Entry*>> a_by_col(a.cols());
  for (const auto& e : a.entries()) a_by_col[e.col].push_back(&e);
  std::vector<ExprMatrix::Entry> out;
  for (const auto& be : b.entries()) {
    for (const auto* ae : a_by_col[be.row]) {
      ScalarExpr v = ae->value * be.value;
      if (!v.is_zero()) out.push_back({ae->row, be.col, v});
    }
  }
  return ExprMatrix(a.rows(), b.cols(), std::move(out));
}

ExprMatrix ExprMatrix::scaled(const ScalarExpr& c) const {
  std::vector<Entry> entries;
  entries.reserve(entries_.size());
  for (const auto& e : entries_) {
    ScalarExpr v = e.value * c;
    if (!v.is_zero()) entries.push_back({e.row, e.col, v});
  }
  return ExprMatrix(rows_, cols_, std::move(entries));
}

ExprMatrix make_symbols(const std::string& prefix, int count) {
  if (prefix.empty()) throw std::invalid_argument("make_symbols: prefix must be nonempty");
  if (count < 0) throw std::invalid_argument("make_symbols: count must be >= 0");
  std::vector<ExprMatrix::Entry> entries;
  entries.reserve(count);
  for (int i = 0; i < count; ++i)
    entries.push_back({i, 0, ScalarExpr::symbol(prefix + "_" + std::to_string(i))});
  return ExprMatrix(count, 1, std::move(entries));
}

std::vector<double> eval_matrix(const ExprMatrix& m, const Bindings& bindings) {
  std::vector<double> out(static_cast<size_t>(m.rows()) * m.cols(), 0.0);
  for (const auto& e : m.entries())
    out[static_cast<size_t>(e.col) * m.rows() + e.row] = eval(e.value, bindings);
  return out;
}

ExprMatrix jacobian(const ExprMatrix& f, const ExprMatrix& x) {
  if (f.cols() != 1 || x.cols() != 1)
    throw std::invalid_argument("jacobian: f and x must be column matrices");
  std::vector<std::string> names;
  names.reserve(x.rows());
  {
    int expected_row = 0;
    for (const auto& e : x.entries()) {
      if (!e.value.is_symbol())
        throw std::invalid_argument("jacobian: x entries must be pure symbols");
      if (e.row != expected_row++)
        throw std::invalid_argument("jacobian: x must be a dense symbol column");
      names.push_back(e.value.symbol_name());
    }
    if (expected_row != x.rows())
      throw std::invalid_argument("jacobian: x must be a dense symbol column");
    std::vector<std::string> sorted = names;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw std::invalid_argument("jacobian: x symbols must be distinct");
  }

  std::vector<ExprMatrix::Entry> entries;
  for (const auto& fe : f.entries()) {
    std::vector<ScalarExpr> g = gradient(fe.value, names);
    for (int j = 0; j < static_cast<int>(g.size()); ++j)
      if (!g[j].is_zero()) entries.push_back({fe.row, j, g[j]});
  }
  return ExprMatrix(f.rows(), x.rows(), std::move(entries));
}

ExprTape ExprTape::compile(const std::vector<ScalarExpr>& outputs,
                           const std::vector<std::string>& inputs) {
  ExprTape tape;
  tape.num_inputs_ = static_cast<int>(inputs.size());
  std::unordered_map<std::string, int> input_slot;
  for (int i = 0; i < static_cast<int>(inputs.size()); ++i) input_slot[inputs[i]] = i;

  std::unordered_map<const Node*, int> slot_of;
  for (const auto& out : outputs) {
    for (const Node* n : topo_order(out.node().get())) {
      if (slot_of.count(n)) continue;
      Instr ins;
      switch (n->kind) {
        case Kind::kConstant:
          ins = {Op::kConst, 0, 0, n->value};
          break;
        case Kind::kSymbol: {
          auto it = input_slot.find(n->name);
          if (it == input_slot.end()) throw MissingBindingError(n->name);
          ins = {Op::kInput, it->second, 0, 0.0};
          break;
        }
        case Kind::kAdd:
          ins = {Op::kAdd, slot_of.at(n->a.get()), slot_of.at(n->b.get()), 0.0};
          break;
        case Kind::kSub:
          ins = {Op::kSub, slot_of.at(n->a.get()), slot_of.at(n->b.get()), 0.0};
          break;
        case Kind::kNeg:
          ins = {Op::kNeg, slot_of.at(n->a.get()), 0, 0.0};
          break;
        case Kind::kMul:
          ins = {Op::kMul, slot_of.at(n->a.get()), slot_of.at(n->b.get()), 0.0};
          break;
        case Kind::kPow:
          ins = {Op::kPow, slot_of.at(n->a.get()), n->exponent, 0.0};
          break;
      }
      slot_of[n] = static_cast<int>(tape.instrs_.size());
      tape.instrs_.push_back(ins);
    }
    tape.output_slots_.push_back(slot_of.at(out.node().get()));
  }
  return tape;
}

void ExprTape::eval(const double* inputs, double* outputs) const {
  std::vector<double> regs(instrs_.size());
  for (size_t i = 0; i < instrs_.size(); ++i) {
    const Instr& ins = instrs_[i];
    switch (ins.op) {
      case Op::kConst:
        regs[i] = ins.value;
        break;
      case Op::kInput:
        regs[i] = inputs[ins.a];
        break;
      case Op::kAdd:
        regs[i] = regs[ins.a] + regs[ins.b];
        break;
      case Op::kSub:
        regs[i] = regs[ins.a] - regs[ins.b];
        break;
      case Op::kNeg:
        regs[i] = -regs[ins.a];
        break;
      case Op::kMul:
        regs[i] = regs[ins.a] * regs[ins.b];
        break;
      case Op::kPow: {
        double r = 1.0, base = regs[ins.a];
        for (int k = 0; k < ins.b; ++k) r *= base;
        regs[i] = r;
        break;
      }
    }
  }
  for (size_t i = 0; i < output_slots_.size(); ++i) outputs[i] = regs[output_slots_[i]];
}

std::vector<double> ExprTape::eval(const std::vector<double>& inputs) const {
  if (static_cast<int>(inputs.size()) != num_inputs_)
    throw std::invalid_argument("ExprTape eval: wrong input count");
  std::vector<double> out(output_slots_.size());
  eval(inputs.data(), out.data());
  return out;
}

}  // namespace polysos
