#include "regsep/tangency/tangency.hpp"

#include <cmath>

#include "regsep/util/rng.hpp"

namespace regsep::tangency {

using algebra::Complex;
using algebra::MultiIndex;
using algebra::Poly;

TangencyReport order_of_tangency(const std::vector<Poly>& f, const std::vector<Poly>& g,
                                 std::span<const Complex> center, int truncation, double tol) {
    if (f.empty() || f.size() != g.size())
        throw DimensionError("order_of_tangency: component counts differ");
    if (truncation < 1) throw Error("order_of_tangency: truncation degree must be at least 1");
    const int p = f.front().num_vars();
    for (std::size_t i = 0; i < f.size(); ++i)
        if (f[i].num_vars() != p || g[i].num_vars() != p)
            throw DimensionError("order_of_tangency: parameter counts differ");

    TangencyReport report;
    report.truncation = truncation;

    int best_degree = truncation + 1;
    for (std::size_t i = 0; i < f.size(); ++i) {
        const Poly diff = f[i] - g[i];
        const algebra::Jet jet = taylor_jet(diff, center, truncation);
        for (const algebra::Term& t : jet.coefficients()) {
            if (std::abs(t.coef) <= tol) continue;
            const int deg = algebra::total_degree(t.alpha);
            if (deg < best_degree) {
                best_degree = deg;
                report.witness_alpha = t.alpha;
                report.witness_modulus = std::abs(t.coef);
            }
            break;  // graded order: first surviving coefficient is minimal
        }
    }
    if (best_degree <= truncation) {
        report.s_prime = best_degree;
        report.s = best_degree - 1;
    }
    return report;
}

ExponentLowerBound exponent_lower_bound(const TangencyReport& report) {
    ExponentLowerBound out;
    if (report.finite()) {
        out.bounded = true;
        out.value = static_cast<double>(*report.s_prime);
    } else {
        out.bounded = false;
        out.value = static_cast<double>(report.truncation + 1);
    }
    return out;
}

std::optional<int> line_vanishing_order(const Poly& p, std::span<const Complex> direction,
                                        int truncation, double tol) {
    if (static_cast<int>(direction.size()) != p.num_vars())
        throw DimensionError("line_vanishing_order: direction dimension mismatch");
    double dir_norm = 0.0;
    for (const Complex& c : direction) dir_norm += std::norm(c);
    if (dir_norm < 1e-28) throw Error("line_vanishing_order: zero direction");

    // Univariate coefficients of t -> p(t * direction), by total degree.
    std::vector<Complex> coeffs(truncation + 1, Complex(0.0));
    for (const algebra::Term& t : p.terms()) {
        const int deg = algebra::total_degree(t.alpha);
        if (deg > truncation) break;  // graded order
        Complex value = t.coef;
        for (int v = 0; v < p.num_vars(); ++v)
            for (int e = 0; e < t.alpha[v]; ++e) value *= direction[v];
        coeffs[deg] += value;
    }
    for (int d = 0; d <= truncation; ++d)
        if (std::abs(coeffs[d]) > tol) return d;
    return std::nullopt;
}

int generic_line_order(const Poly& p, int trials, std::uint64_t seed, int truncation, double tol) {
    if (p.is_zero()) throw Error("generic_line_order: zero polynomial");
    if (trials < 3) throw Error("generic_line_order: needs at least 3 trials");
    util::Rng rng(seed);
    std::optional<int> best;
    for (int i = 0; i < trials; ++i) {
        const Eigen::VectorXcd dir = rng.unit_vector(p.num_vars());
        const auto order = line_vanishing_order(
            p, {dir.data(), static_cast<std::size_t>(dir.size())}, truncation, tol);
        if (order && (!best || *order < *best)) best = order;
    }
    if (!best)
        throw Error("generic_line_order: all trials exceeded the truncation degree");
    return *best;
}

util::Json TangencyReport::to_json() const {
    util::Json j;
    j["K"] = truncation;
    if (s_prime) {
        j["s_prime"] = *s_prime;
        j["s"] = *s;
        j["witness_alpha"] = witness_alpha;
        j["witness_modulus"] = witness_modulus;
    } else {
        j["s_prime"] = "exceeds K";
        j["s"] = nullptr;
    }
    return j;
}

}  // namespace regsep::tangency
