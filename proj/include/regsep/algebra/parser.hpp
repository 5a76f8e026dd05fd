#pragma once

// Expression parser and printer for polynomials.
//
// Grammar (whitespace insignificant):
//   expr   := ('+'|'-')? term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := base ('^' uint)?
//   base   := var | number | '(' expr ')'
//   number := float ('i')? | float ('+'|'-') float 'i'
//
// Complex literals such as `3+4i` bind as a single number inside a factor.
// Printing emits a canonical subset of the grammar and round-trips exactly:
// parse_poly(to_expression_string(p, names), names) == p.

#include <string>
#include <vector>

#include "regsep/algebra/poly.hpp"
#include "regsep/util/error.hpp"

namespace regsep::algebra {

class ParseError : public Error {
public:
    ParseError(std::size_t position, const std::string& message)
        : Error("parse error at position " + std::to_string(position) + ": " + message),
          position_(position) {}

    std::size_t position() const { return position_; }

private:
    std::size_t position_;
};

// Parses `text` into a Poly over the ordered variable list `variables`.
Poly parse_poly(const std::string& text, const std::vector<std::string>& variables);

// Canonical expression string; "0" for the zero polynomial.
std::string to_expression_string(const Poly& p, const std::vector<std::string>& variables);

// Default variable names x1..xn.
std::vector<std::string> default_variables(int n);

}  // namespace regsep::algebra
