#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "polysos/polynomial.hpp"

namespace polysos {

/// Text form of a scalar constant polynomial, e.g. "3 + 2*x1*x2^2".
/// Terms appear in canonical monomial order; coefficients print with enough
/// digits to round-trip exactly through parse_polynomial.
std::string to_text(const Polynomial& p);

/// Parses the text form over the given indeterminates. Accepts sums and
/// differences of terms `coeff*var^k*...`; throws ParseError on bad input.
Polynomial parse_polynomial(const std::string& text, const IndeterminateSet& vars);

/// Line-oriented problem file: '#' comments, a 'vars' line naming the
/// indeterminates, then 'poly <name> <text>' and 'scalar <name> <value>'
/// lines. Writing then reading is the identity on the stored values.
struct ProblemFile {
  IndeterminateSet vars;
  std::map<std::string, Polynomial> polys;
  std::map<std::string, double> scalars;
};

ProblemFile read_problem_file(std::istream& in);
ProblemFile read_problem_file(const std::string& path);
void write_problem_file(std::ostream& out, const ProblemFile& pf);
void write_problem_file(const std::string& path, const ProblemFile& pf);

}  // namespace polysos
