#include "regsep/algebra/poly.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace regsep::algebra {

int total_degree(const MultiIndex& alpha) {
    int d = 0;
    for (int e : alpha) d += e;
    return d;
}

bool graded_lex_less(const MultiIndex& a, const MultiIndex& b) {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

Poly::Poly(int num_vars) : num_vars_(num_vars) {
    if (num_vars < 1) throw DimensionError("Poly: num_vars must be positive");
}

Poly::Poly(int num_vars, std::vector<Term> terms, double drop_tol)
    : num_vars_(num_vars), terms_(std::move(terms)) {
    if (num_vars < 1) throw DimensionError("Poly: num_vars must be positive");
    for (const Term& t : terms_) {
        if (static_cast<int>(t.alpha.size()) != num_vars_)
            throw DimensionError("Poly: multi-index length does not match num_vars");
        for (int e : t.alpha)
            if (e < 0) throw Error("Poly: negative exponent in multi-index");
    }
    normalize(drop_tol);
}

Poly Poly::constant(int num_vars, Complex value) {
    return Poly(num_vars, {Term{MultiIndex(num_vars, 0), value}});
}

Poly Poly::variable(int num_vars, int index) {
    if (index < 0 || index >= num_vars) throw DimensionError("Poly::variable: index out of range");
    MultiIndex alpha(num_vars, 0);
    alpha[index] = 1;
    return Poly(num_vars, {Term{std::move(alpha), Complex(1.0)}});
}

Poly Poly::monomial(int num_vars, MultiIndex alpha, Complex coef) {
    return Poly(num_vars, {Term{std::move(alpha), coef}});
}

int Poly::degree() const {
    return terms_.empty() ? -1 : total_degree(terms_.back().alpha);
}

int Poly::order() const {
    return terms_.empty() ? -1 : total_degree(terms_.front().alpha);
}

Complex Poly::coefficient(const MultiIndex& alpha) const {
    const auto it = std::lower_bound(
        terms_.begin(), terms_.end(), alpha,
        [](const Term& t, const MultiIndex& a) { return graded_lex_less(t.alpha, a); });
    if (it != terms_.end() && it->alpha == alpha) return it->coef;
    return Complex(0.0);
}

Complex Poly::eval(std::span<const Complex> point) const {
    if (static_cast<int>(point.size()) != num_vars_)
        throw DimensionError("Poly::eval: point length does not match num_vars");
    if (terms_.empty()) return Complex(0.0);

    // Powers of each coordinate are built once by repeated multiplication and
    // shared across terms.
    std::vector<int> max_exp(num_vars_, 0);
    for (const Term& t : terms_)
        for (int v = 0; v < num_vars_; ++v) max_exp[v] = std::max(max_exp[v], t.alpha[v]);

    std::vector<std::vector<Complex>> powers(num_vars_);
    for (int v = 0; v < num_vars_; ++v) {
        powers[v].resize(max_exp[v] + 1);
        powers[v][0] = Complex(1.0);
        for (int e = 1; e <= max_exp[v]; ++e) powers[v][e] = powers[v][e - 1] * point[v];
    }

    Complex acc(0.0);
    for (const Term& t : terms_) {
        Complex m = t.coef;
        for (int v = 0; v < num_vars_; ++v)
            if (t.alpha[v] > 0) m *= powers[v][t.alpha[v]];
        acc += m;
    }
    return acc;
}

Poly Poly::operator-() const {
    Poly out(*this);
    for (Term& t : out.terms_) t.coef = -t.coef;
    return out;
}

Poly& Poly::operator+=(const Poly& rhs) {
    if (rhs.num_vars_ != num_vars_) throw DimensionError("Poly: num_vars mismatch in addition");
    std::vector<Term> merged;
    merged.reserve(terms_.size() + rhs.terms_.size());
    merged.insert(merged.end(), terms_.begin(), terms_.end());
    merged.insert(merged.end(), rhs.terms_.begin(), rhs.terms_.end());
    terms_ = std::move(merged);
    normalize(kCoefficientDropTolerance);
    return *this;
}

Poly& Poly::operator-=(const Poly& rhs) {
    return *this += -rhs;
}

Poly& Poly::operator*=(const Poly& rhs) {
    if (rhs.num_vars_ != num_vars_) throw DimensionError("Poly: num_vars mismatch in multiplication");
    std::vector<Term> prod;
    prod.reserve(terms_.size() * rhs.terms_.size());
    for (const Term& a : terms_) {
        for (const Term& b : rhs.terms_) {
            MultiIndex alpha(num_vars_);
            for (int v = 0; v < num_vars_; ++v) alpha[v] = a.alpha[v] + b.alpha[v];
            prod.push_back(Term{std::move(alpha), a.coef * b.coef});
        }
    }
    terms_ = std::move(prod);
    normalize(kCoefficientDropTolerance);
    return *this;
}

Poly& Poly::operator*=(Complex scalar) {
    for (Term& t : terms_) t.coef *= scalar;
    normalize(kCoefficientDropTolerance);
    return *this;
}

Poly Poly::pow(int exponent) const {
    if (exponent < 0) throw Error("Poly::pow: negative exponent");
    Poly result = Poly::constant(num_vars_, Complex(1.0));
    Poly base(*this);
    int e = exponent;
    while (e > 0) {
        if (e & 1) result *= base;
        e >>= 1;
        if (e > 0) base *= base;
    }
    return result;
}

void Poly::normalize(double drop_tol) {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return graded_lex_less(a.alpha, b.alpha); });
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (Term& t : terms_) {
        if (!out.empty() && out.back().alpha == t.alpha) {
            out.back().coef += t.coef;
        } else {
            out.push_back(std::move(t));
        }
    }
    std::erase_if(out, [drop_tol](const Term& t) { return std::abs(t.coef) < drop_tol || t.coef == Complex(0.0); });
    terms_ = std::move(out);
}

Poly partial_derivative(const Poly& p, int var_index) {
    if (var_index < 0 || var_index >= p.num_vars())
        throw DimensionError("partial_derivative: variable index out of range");
    std::vector<Term> out;
    out.reserve(p.terms().size());
    for (const Term& t : p.terms()) {
        const int e = t.alpha[var_index];
        if (e == 0) continue;
        MultiIndex alpha = t.alpha;
        alpha[var_index] = e - 1;
        out.push_back(Term{std::move(alpha), t.coef * static_cast<double>(e)});
    }
    return Poly(p.num_vars(), std::move(out));
}

std::pair<int, Poly> leading_form(const Poly& p) {
    if (p.is_zero()) throw Error("leading_form: zero polynomial has no leading form");
    const int r = total_degree(p.terms().front().alpha);
    std::vector<Term> out;
    for (const Term& t : p.terms()) {
        if (total_degree(t.alpha) != r) break;  // canonical order: prefix scan
        out.push_back(t);
    }
    return {r, Poly(p.num_vars(), std::move(out))};
}

}  // namespace regsep::algebra
