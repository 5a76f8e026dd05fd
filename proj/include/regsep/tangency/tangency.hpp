#pragma once

// Order of tangency of graph pairs via truncated jets.
//
// For graphs q(u) = (u, f(u)) and q'(u) = (u, g(u)) over a shared parameter
// space, the order of tangency is s = s' - 1 where s' is the smallest total
// degree with a nonvanishing jet coefficient of any component of f - g at
// the center (the pair (f, g) reduces to (f - g, 0)). When every coefficient
// up to the truncation degree vanishes, only "order at least K" is known.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "regsep/algebra/jet.hpp"
#include "regsep/algebra/poly.hpp"
#include "regsep/util/json_convert.hpp"

namespace regsep::tangency {

// Coefficients with modulus at or below this are treated as zero; jets of
// polynomial inputs are exact up to rounding, the threshold only guards
// composed or recentred inputs.
inline constexpr double kJetZeroTolerance = 1e-10;

struct TangencyReport {
    int truncation = 0;               // K
    std::optional<int> s_prime;       // absent: exceeds K
    std::optional<int> s;             // s_prime - 1 when finite
    algebra::MultiIndex witness_alpha;
    double witness_modulus = 0.0;

    bool finite() const { return s_prime.has_value(); }

    util::Json to_json() const;
};

// Jets of all components of f - g at `center` to degree K; s' is the minimal
// total degree carrying a coefficient with modulus above tol.
TangencyReport order_of_tangency(const std::vector<algebra::Poly>& f,
                                 const std::vector<algebra::Poly>& g,
                                 std::span<const algebra::Complex> center, int truncation,
                                 double tol = kJetZeroTolerance);

struct ExponentLowerBound {
    bool bounded = false;
    double value = 0.0;  // s' when bounded; the certified floor K + 1 otherwise
};

// The separation exponent of a tangent pair of equal-dimensional graph
// manifolds is at least s + 1 = s'; an infinite-order report only certifies
// the floor K + 1.
ExponentLowerBound exponent_lower_bound(const TangencyReport& report);

// Order of vanishing at 0 of t -> p(t * direction): the smallest degree with
// a coefficient of modulus above tol in the univariate restriction, up to K.
std::optional<int> line_vanishing_order(const algebra::Poly& p,
                                        std::span<const algebra::Complex> direction, int truncation,
                                        double tol = kJetZeroTolerance);

// Minimum of line_vanishing_order over `trials` random unit directions; for
// a nonzero polynomial this equals the leading-form degree except on a
// measure-zero set of directions. Throws when every trial exceeds the
// truncation (inconsistent with p != 0 of degree <= K).
int generic_line_order(const algebra::Poly& p, int trials, std::uint64_t seed, int truncation,
                       double tol = kJetZeroTolerance);

}  // namespace regsep::tangency
