#pragma once

// Truncated Taylor expansions (jets) of polynomials.
//
// A Jet stores monomial-basis coefficients of a polynomial recentred at a
// point, truncated to total degree K: coefficient(alpha) is the coefficient
// of t^alpha in p(center + t). Recentring at the origin is the identity on
// coefficients of degree <= K.

#include <span>
#include <vector>

#include "regsep/algebra/poly.hpp"

namespace regsep::algebra {

// Default truncation degree used by callers that need "enough" jet.
inline constexpr int kDefaultJetDegree = 12;

class Jet {
public:
    Jet(int num_vars, int truncation_degree, std::vector<Term> coefficients);

    int num_vars() const { return num_vars_; }
    int truncation_degree() const { return truncation_degree_; }

    // Stored nonzero coefficients in graded-lexicographic order.
    const std::vector<Term>& coefficients() const { return coefficients_; }

    // Zero when alpha is not stored.
    Complex coefficient(const MultiIndex& alpha) const;

private:
    int num_vars_;
    int truncation_degree_;
    std::vector<Term> coefficients_;
};

// Coefficients of p recentred at `center`, truncated to total degree K.
Jet taylor_jet(const Poly& p, std::span<const Complex> center, int truncation_degree);

}  // namespace regsep::algebra
