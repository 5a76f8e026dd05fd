#pragma once

// Sparse multivariate polynomials over complex double coefficients.
//
// Terms are kept in ascending graded-lexicographic order with duplicates
// merged, so structural equality coincides with polynomial equality and the
// lowest-degree homogeneous part is a prefix of the term list. Coefficients
// whose modulus falls below a drop tolerance after arithmetic are removed;
// exactness claims are about term bookkeeping, not coefficient rounding.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "regsep/util/error.hpp"

namespace regsep::algebra {

using Complex = std::complex<double>;
using MultiIndex = std::vector<int>;

// Default threshold below which a coefficient is treated as rounding debris.
inline constexpr double kCoefficientDropTolerance = 1e-14;

int total_degree(const MultiIndex& alpha);

// Ascending graded-lexicographic order: first by total degree, ties broken
// lexicographically on the exponent tuple.
bool graded_lex_less(const MultiIndex& a, const MultiIndex& b);

struct Term {
    MultiIndex alpha;
    Complex coef;
};

class Poly {
public:
    // Zero polynomial in `num_vars` variables.
    explicit Poly(int num_vars);

    // From an arbitrary term list; merges duplicates, sorts canonically and
    // drops coefficients with modulus below `drop_tol`.
    Poly(int num_vars, std::vector<Term> terms,
         double drop_tol = kCoefficientDropTolerance);

    static Poly constant(int num_vars, Complex value);
    static Poly variable(int num_vars, int index);
    static Poly monomial(int num_vars, MultiIndex alpha, Complex coef);

    int num_vars() const { return num_vars_; }
    const std::vector<Term>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    // Maximal total degree; -1 for the zero polynomial.
    int degree() const;

    // Minimal total degree among stored terms; -1 for the zero polynomial.
    int order() const;

    Complex coefficient(const MultiIndex& alpha) const;

    Complex eval(std::span<const Complex> point) const;

    Poly operator-() const;
    Poly& operator+=(const Poly& rhs);
    Poly& operator-=(const Poly& rhs);
    Poly& operator*=(const Poly& rhs);
    Poly& operator*=(Complex scalar);

    friend Poly operator+(Poly lhs, const Poly& rhs) { return lhs += rhs; }
    friend Poly operator-(Poly lhs, const Poly& rhs) { return lhs -= rhs; }
    friend Poly operator*(Poly lhs, const Poly& rhs) { return lhs *= rhs; }
    friend Poly operator*(Poly lhs, Complex scalar) { return lhs *= scalar; }
    friend Poly operator*(Complex scalar, Poly rhs) { return rhs *= scalar; }

    Poly pow(int exponent) const;

    // Structural equality; canonical ordering makes it polynomial equality.
    friend bool operator==(const Poly& lhs, const Poly& rhs) {
        if (lhs.num_vars_ != rhs.num_vars_ || lhs.terms_.size() != rhs.terms_.size()) return false;
        for (std::size_t i = 0; i < lhs.terms_.size(); ++i) {
            if (lhs.terms_[i].alpha != rhs.terms_[i].alpha) return false;
            if (lhs.terms_[i].coef != rhs.terms_[i].coef) return false;
        }
        return true;
    }
    friend bool operator!=(const Poly& lhs, const Poly& rhs) { return !(lhs == rhs); }

private:
    void normalize(double drop_tol);

    int num_vars_;
    std::vector<Term> terms_;
};

// Formal partial derivative with respect to variable `var_index`.
Poly partial_derivative(const Poly& p, int var_index);

// Lowest-degree homogeneous part of a nonzero polynomial:
// returns (r, F) with r the minimal total degree and F the sum of all
// degree-r terms. Throws on the zero polynomial.
std::pair<int, Poly> leading_form(const Poly& p);

}  // namespace regsep::algebra
