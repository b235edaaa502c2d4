#include "polysos/poly_io.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "polysos/errors.hpp"

namespace polysos {

namespace {

std::string format_double(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string format_monomial(const MultiIndex& alpha, const IndeterminateSet& vars) {
  std::string s;
  for (int i = 0; i < alpha.size(); ++i) {
    if (alpha.exponents[i] == 0) continue;
    if (!s.empty()) s += "*";
    s += vars.name(i);
    if (alpha.exponents[i] > 1) s += "^" + std::to_string(alpha.exponents[i]);
  }
  return s;
}

}  // namespace

std::string to_text(const Polynomial& p) {
  if (!p.is_scalar_shape()) throw std::invalid_argument("to_text: polynomial must be scalar");
  if (!p.is_constant_poly())
    throw std::invalid_argument("to_text: polynomial must have constant coefficients");
  if (p.is_zero()) return "0";

  const auto& sp = p.sparsity();
  std::string out;
  for (int m = 0; m < sp.num_monomials(); ++m) {
    double c = p.coord(sp.slot(m, 0)).constant_value();
    std::string mono = format_monomial(sp.monomial(m), p.indeterminates());
    bool negative = std::signbit(c) && c != 0.0;
    double a = std::abs(c);
    std::string term;
    if (mono.empty()) {
      term = format_double(a);
    } else if (a == 1.0) {
      term = mono;
    } else {
      term = format_double(a) + "*" + mono;
    }
    if (out.empty()) {
      out = negative ? "-" + term : term;
    } else {
      out += negative ? " - " + term : " + " + term;
    }
  }
  return out;
}

namespace {

struct Lexer {
  const std::string& s;
  size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= s.size();
  }
  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }
  bool accept(char c) {
    if (peek() == c) {
      ++pos;
      return true;
    }
    return false;
  }
  double number() {
    skip_ws();
    size_t end = pos;
    try {
      double v = std::stod(s.substr(pos), &end);
      pos += end;
      return v;
    } catch (const std::exception&) {
      throw ParseError("expected a number at '" + s.substr(pos, 12) + "'");
    }
  }
  std::string identifier() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() &&
           (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) {
      ++pos;
    }
    if (pos == start) throw ParseError("expected an identifier at '" + s.substr(pos, 12) + "'");
    return s.substr(start, pos - start);
  }
};

}  // namespace

Polynomial parse_polynomial(const std::string& text, const IndeterminateSet& vars) {
  Lexer lex{text};
  Polynomial result = Polynomial::zero(vars);
  bool first = true;
  while (!lex.done()) {
    double sign = 1.0;
    if (lex.accept('+')) {
      sign = 1.0;
    } else if (lex.accept('-')) {
      sign = -1.0;
    } else if (!first) {
      throw ParseError("expected '+' or '-' between terms");
    }
    first = false;

    double coeff = sign;
    MultiIndex alpha;
    alpha.exponents.assign(vars.size(), 0);
    bool saw_factor = false;
    bool expect_factor = true;
    while (expect_factor) {
      char c = lex.peek();
      if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
        coeff *= lex.number();
        saw_factor = true;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::string name = lex.identifier();
        int idx = vars.index_of(name);
        if (idx < 0) throw ParseError("unknown indeterminate '" + name + "'");
        int exp = 1;
        if (lex.accept('^')) exp = static_cast<int>(lex.number());
        if (exp < 0) throw ParseError("negative exponent");
        alpha.exponents[idx] += exp;
        saw_factor = true;
      } else {
        throw ParseError("expected a coefficient or indeterminate");
      }
      expect_factor = lex.accept('*');
    }
    if (!saw_factor) throw ParseError("empty term");
    result = result + Polynomial::monomial(vars, alpha, coeff);
  }
  return result;
}

ProblemFile read_problem_file(std::istream& in) {
  ProblemFile pf;
  std::string line;
  int lineno = 0;
  bool have_vars = false;
  while (std::getline(in, line)) {
    ++lineno;
    size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    if (key == "vars") {
      std::vector<std::string> names;
      std::string n;
      while (ls >> n) names.push_back(n);
      if (names.empty()) throw ParseError("vars line names no indeterminates", lineno);
      pf.vars = IndeterminateSet(std::move(names));
      have_vars = true;
    } else if (key == "poly") {
      if (!have_vars) throw ParseError("poly before vars", lineno);
      std::string name;
      if (!(ls >> name)) throw ParseError("poly line missing a name", lineno);
      std::string rest;
      std::getline(ls, rest);
      try {
        pf.polys[name] = parse_polynomial(rest, pf.vars);
      } catch (const ParseError& e) {
        throw ParseError(std::string(e.what()), lineno);
      }
    } else if (key == "scalar") {
      std::string name;
      double v;
      if (!(ls >> name >> v)) throw ParseError("scalar line needs a name and value", lineno);
      pf.scalars[name] = v;
    } else {
      throw ParseError("unknown directive '" + key + "'", lineno);
    }
  }
  if (!have_vars) throw ParseError("problem file has no vars line");
  return pf;
}

ProblemFile read_problem_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  return read_problem_file(in);
}

void write_problem_file(std::ostream& out, const ProblemFile& pf) {
  out << "vars";
  for (const auto& n : pf.vars.names()) out << " " << n;
  out << "\n";
  for (const auto& [name, value] : pf.scalars)
    out << "scalar " << name << " " << std::setprecision(17) << value << "\n";
  for (const auto& [name, p] : pf.polys) out << "poly " << name << " " << to_text(p) << "\n";
}

void write_problem_file(const std::string& path, const ProblemFile& pf) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_problem_file(out, pf);
}

}  // namespace polysos
