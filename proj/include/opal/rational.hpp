#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace opal {

// All arithmetic in this library is exact; Rational is an arbitrary-precision
// fraction kept in lowest terms by GMP.
using Rational = mpq_class;

// Base class for every error thrown by the library.
struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Error for text that fails to lex/parse; carries a 1-based position.
struct parse_error : error {
  int line;
  int column;
  parse_error(const std::string& msg, int line_, int column_)
      : error(msg + " (line " + std::to_string(line_) + ", column " +
              std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

// Error for well-formed input that violates a documented precondition.
struct semantic_error : error {
  using error::error;
};

// Parses "p" or "p/q" with optional sign; q must be nonzero.
Rational rational_from_string(const std::string& text);

// Renders in lowest terms as "p" or "p/q" (q > 0).
std::string rational_to_string(const Rational& value);

// (-1)^e for any integer e (negative exponents allowed).
inline int parity_sign(long long e) { return (e % 2 == 0) ? 1 : -1; }

}  // namespace opal
