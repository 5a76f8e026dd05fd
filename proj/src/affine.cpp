#include "regsep/algebra/affine.hpp"

#include "regsep/algebra/jet.hpp"

#include <algorithm>

namespace regsep::algebra {

AffineMap::AffineMap(Eigen::MatrixXcd linear_part, Eigen::VectorXcd translation_part)
    : linear(std::move(linear_part)), translation(std::move(translation_part)) {
    if (linear.rows() != translation.size())
        throw DimensionError("AffineMap: linear part and translation dimensions differ");
    if (linear.rows() < 1 || linear.cols() < 1)
        throw DimensionError("AffineMap: dimensions must be positive");
}

Eigen::VectorXcd AffineMap::operator()(const Eigen::VectorXcd& t) const {
    if (t.size() != linear.cols()) throw DimensionError("AffineMap: argument dimension mismatch");
    return linear * t + translation;
}

AffineMap AffineMap::identity(int dim) {
    return AffineMap(Eigen::MatrixXcd::Identity(dim, dim), Eigen::VectorXcd::Zero(dim));
}

AffineMap AffineMap::shift(const Eigen::VectorXcd& offset) {
    const int dim = static_cast<int>(offset.size());
    return AffineMap(Eigen::MatrixXcd::Identity(dim, dim), offset);
}

Poly compose_affine(const Poly& p, const AffineMap& a) {
    if (a.codomain_dim() != p.num_vars())
        throw DimensionError("compose_affine: map codomain does not match polynomial variables");
    const int domain = a.domain_dim();

    // Degree-1 image of each polynomial variable under the map.
    std::vector<Poly> images;
    images.reserve(p.num_vars());
    for (int j = 0; j < p.num_vars(); ++j) {
        Poly img = Poly::constant(domain, a.translation[j]);
        for (int i = 0; i < domain; ++i) {
            const Complex c = a.linear(j, i);
            if (c != Complex(0.0)) img += c * Poly::variable(domain, i);
        }
        images.push_back(std::move(img));
    }

    // Powers of each image are cached up to the maximal exponent appearing.
    std::vector<int> max_exp(p.num_vars(), 0);
    for (const Term& t : p.terms())
        for (int v = 0; v < p.num_vars(); ++v) max_exp[v] = std::max(max_exp[v], t.alpha[v]);
    std::vector<std::vector<Poly>> powers(p.num_vars());
    for (int v = 0; v < p.num_vars(); ++v) {
        powers[v].reserve(max_exp[v] + 1);
        powers[v].push_back(Poly::constant(domain, Complex(1.0)));
        for (int e = 1; e <= max_exp[v]; ++e) powers[v].push_back(powers[v].back() * images[v]);
    }

    Poly out(domain);
    for (const Term& t : p.terms()) {
        Poly m = Poly::constant(domain, t.coef);
        for (int v = 0; v < p.num_vars(); ++v)
            if (t.alpha[v] > 0) m *= powers[v][t.alpha[v]];
        out += m;
    }
    return out;
}

Jet taylor_jet(const Poly& p, std::span<const Complex> center, int truncation_degree) {
    if (static_cast<int>(center.size()) != p.num_vars())
        throw DimensionError("taylor_jet: center length does not match num_vars");
    if (truncation_degree < 0) throw Error("taylor_jet: truncation degree must be non-negative");

    Eigen::VectorXcd offset(p.num_vars());
    for (int i = 0; i < p.num_vars(); ++i) offset[i] = center[i];
    const Poly shifted = compose_affine(p, AffineMap::shift(offset));

    std::vector<Term> coeffs;
    for (const Term& t : shifted.terms()) {
        if (total_degree(t.alpha) > truncation_degree) break;  // graded order
        coeffs.push_back(t);
    }
    return Jet(p.num_vars(), truncation_degree, std::move(coeffs));
}

Jet::Jet(int num_vars, int truncation_degree, std::vector<Term> coefficients)
    : num_vars_(num_vars), truncation_degree_(truncation_degree),
      coefficients_(std::move(coefficients)) {
    if (num_vars < 1) throw DimensionError("Jet: num_vars must be positive");
    if (truncation_degree < 0) throw Error("Jet: truncation degree must be non-negative");
    for (const Term& t : coefficients_) {
        if (static_cast<int>(t.alpha.size()) != num_vars_)
            throw DimensionError("Jet: multi-index length does not match num_vars");
        if (total_degree(t.alpha) > truncation_degree_)
            throw Error("Jet: multi-index beyond truncation degree");
    }
    std::sort(coefficients_.begin(), coefficients_.end(),
              [](const Term& a, const Term& b) { return graded_lex_less(a.alpha, b.alpha); });
}

Complex Jet::coefficient(const MultiIndex& alpha) const {
    const auto it = std::lower_bound(
        coefficients_.begin(), coefficients_.end(), alpha,
        [](const Term& t, const MultiIndex& a) { return graded_lex_less(t.alpha, a); });
    if (it != coefficients_.end() && it->alpha == alpha) return it->coef;
    return Complex(0.0);
}

}  // namespace regsep::algebra
