// Polynomial arithmetic, parsing, jets and affine composition.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regsep/algebra/affine.hpp"
#include "regsep/algebra/jet.hpp"
#include "regsep/algebra/parser.hpp"
#include "regsep/algebra/poly.hpp"
#include "regsep/util/rng.hpp"

using namespace regsep;
using algebra::Complex;
using algebra::MultiIndex;
using algebra::Poly;

namespace {

std::vector<Complex> random_point(util::Rng& rng, int n, double scale = 1.0) {
    std::vector<Complex> pt(n);
    for (int i = 0; i < n; ++i) pt[i] = scale * rng.complex_gaussian();
    return pt;
}

Poly random_poly(util::Rng& rng, int n, int max_degree, int terms) {
    std::vector<algebra::Term> t;
    for (int i = 0; i < terms; ++i) {
        MultiIndex alpha(n, 0);
        int budget = static_cast<int>(rng.uniform(0, max_degree + 1));
        for (int v = 0; v < n && budget > 0; ++v) {
            const int e = static_cast<int>(rng.uniform(0, budget + 1));
            alpha[v] = e;
            budget -= e;
        }
        t.push_back({alpha, rng.complex_gaussian()});
    }
    return Poly(n, std::move(t));
}

}  // namespace

TEST_CASE("parse examples") {
    const std::vector<std::string> vars = {"x1", "x2"};

    SUBCASE("direct transcription") {
        const Poly p = algebra::parse_poly("x2 - x1^2", vars);
        CHECK(p.coefficient({0, 1}) == Complex(1.0));
        CHECK(p.coefficient({2, 0}) == Complex(-1.0));
        CHECK(p.terms().size() == 2);
    }
    SUBCASE("zero polynomial") {
        const Poly p = algebra::parse_poly("0", {"x1"});
        CHECK(p.is_zero());
    }
    SUBCASE("expansion matches repeated distribution and evaluation") {
        const Poly parsed = algebra::parse_poly("(x1+x2)^2", vars);
        CHECK(parsed.coefficient({2, 0}) == Complex(1.0));
        CHECK(parsed.coefficient({1, 1}) == Complex(2.0));
        CHECK(parsed.coefficient({0, 2}) == Complex(1.0));

        // Independent route: distribute (x1+x2)*(x1+x2) by hand.
        const Poly sum = Poly::variable(2, 0) + Poly::variable(2, 1);
        CHECK(parsed == sum * sum);

        util::Rng rng(31);
        for (int i = 0; i < 5; ++i) {
            const auto z = random_point(rng, 2);
            const Complex direct = (z[0] + z[1]) * (z[0] + z[1]);
            CHECK(std::abs(parsed.eval(z) - direct) < 1e-12 * std::max(1.0, std::abs(direct)));
        }
    }
}

TEST_CASE("parse complex literals and precedence") {
    const std::vector<std::string> vars = {"x1"};
    CHECK(algebra::parse_poly("1+2i", vars).coefficient({0}) == Complex(1.0, 2.0));
    CHECK(algebra::parse_poly("2i", vars).coefficient({0}) == Complex(0.0, 2.0));
    CHECK(algebra::parse_poly("1.5e-3", vars).coefficient({0}) == Complex(1.5e-3));
    // The complex literal binds as one factor.
    const Poly p = algebra::parse_poly("1+2i*x1", vars);
    CHECK(p.coefficient({1}) == Complex(1.0, 2.0));
    // With whitespace the sum splits at the expression level.
    const Poly q = algebra::parse_poly("1 + 2i*x1", vars);
    CHECK(q.coefficient({0}) == Complex(1.0));
    CHECK(q.coefficient({1}) == Complex(0.0, 2.0));
    CHECK(algebra::parse_poly(" x1 ^ 2 ", vars) == algebra::parse_poly("x1^2", vars));
}

TEST_CASE("parse errors carry positions") {
    const std::vector<std::string> vars = {"x1", "x2"};
    CHECK_THROWS_AS(algebra::parse_poly("x1 + ", vars), algebra::ParseError);
    CHECK_THROWS_AS(algebra::parse_poly("x3 + 1", vars), algebra::ParseError);
    CHECK_THROWS_AS(algebra::parse_poly("x1^-2", vars), algebra::ParseError);
    CHECK_THROWS_AS(algebra::parse_poly("x1^1.5", vars), algebra::ParseError);
    CHECK_THROWS_AS(algebra::parse_poly("(x1", vars), algebra::ParseError);
    try {
        algebra::parse_poly("x1 + @", vars);
        FAIL("expected ParseError");
    } catch (const algebra::ParseError& e) {
        CHECK(e.position() == 5);
    }
}

TEST_CASE("eval") {
    const std::vector<std::string> vars = {"x1", "x2"};
    const Poly parabola = algebra::parse_poly("x2 - x1^2", vars);
    CHECK(std::abs(parabola.eval(std::vector<Complex>{2.0, 4.0})) == 0.0);
    CHECK(Poly(2).eval(std::vector<Complex>{1.0, 1.0}) == Complex(0.0));
    const Poly square = algebra::parse_poly("(x1+x2)^2", vars);
    CHECK(square.eval(std::vector<Complex>{1.0, 2.0}) == Complex(9.0));
    CHECK_THROWS_AS(parabola.eval(std::vector<Complex>{1.0}), DimensionError);
}

TEST_CASE("partial derivative") {
    const std::vector<std::string> vars = {"x1", "x2"};
    CHECK(partial_derivative(algebra::parse_poly("x1^2", vars), 0) ==
          algebra::parse_poly("2*x1", vars));
    CHECK(partial_derivative(algebra::parse_poly("x2", vars), 0).is_zero());

    const Poly p = algebra::parse_poly("x1^3*x2", vars);
    const Poly dd = partial_derivative(partial_derivative(p, 0), 0);
    CHECK(dd == algebra::parse_poly("6*x1*x2", vars));

    // Difference-quotient cross-check of the second derivative.
    util::Rng rng(5);
    const double h = 1e-4;
    for (int i = 0; i < 3; ++i) {
        const auto z = random_point(rng, 2);
        auto at = [&](Complex dx) {
            return p.eval(std::vector<Complex>{z[0] + dx, z[1]});
        };
        const Complex numeric = (at(h) - 2.0 * at(0.0) + at(-h)) / (h * h);
        const Complex exact = dd.eval(z);
        CHECK(std::abs(numeric - exact) < 1e-6 * std::max(1.0, std::abs(exact)));
    }
    CHECK_THROWS_AS(partial_derivative(p, 2), DimensionError);
}

TEST_CASE("taylor jet") {
    const std::vector<std::string> vars = {"x1"};
    const Poly p = algebra::parse_poly("x1^2", vars);

    SUBCASE("at the origin the jet carries the coefficients") {
        const auto jet = taylor_jet(p, std::vector<Complex>{0.0}, 3);
        CHECK(jet.coefficient({2}) == Complex(1.0));
        CHECK(jet.coefficient({0}) == Complex(0.0));
        CHECK(jet.coefficient({1}) == Complex(0.0));
        CHECK(jet.coefficient({3}) == Complex(0.0));
    }
    SUBCASE("binomial recentring at 1") {
        const auto jet = taylor_jet(p, std::vector<Complex>{1.0}, 2);
        CHECK(std::abs(jet.coefficient({0}) - 1.0) < 1e-14);
        CHECK(std::abs(jet.coefficient({1}) - 2.0) < 1e-14);
        CHECK(std::abs(jet.coefficient({2}) - 1.0) < 1e-14);

        // Evaluation cross-check: p(1 + t) equals the jet polynomial in t.
        util::Rng rng(9);
        for (int i = 0; i < 5; ++i) {
            const Complex t = rng.complex_gaussian();
            const Complex lhs = p.eval(std::vector<Complex>{1.0 + t});
            const Complex rhs =
                jet.coefficient({0}) + jet.coefficient({1}) * t + jet.coefficient({2}) * t * t;
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(lhs)));
        }
    }
    SUBCASE("K at least the degree keeps every term") {
        util::Rng rng(12);
        const Poly q = random_poly(rng, 2, 4, 6);
        const auto jet = taylor_jet(q, std::vector<Complex>{0.0, 0.0}, 8);
        for (const auto& term : q.terms()) CHECK(jet.coefficient(term.alpha) == term.coef);
    }
}

TEST_CASE("jet of a derivative is the factorial-shifted jet") {
    util::Rng rng(77);
    const int k = 6;
    for (int rep = 0; rep < 10; ++rep) {
        const Poly p = random_poly(rng, 2, 5, 8);
        const int var = rep % 2;
        const Poly dp = partial_derivative(p, var);
        const auto jet_p = taylor_jet(p, std::vector<Complex>{0.0, 0.0}, k + 1);
        const auto jet_dp = taylor_jet(dp, std::vector<Complex>{0.0, 0.0}, k);
        for (const auto& term : jet_dp.coefficients()) {
            MultiIndex shifted = term.alpha;
            shifted[var] += 1;
            const Complex expected =
                jet_p.coefficient(shifted) * static_cast<double>(shifted[var]);
            CHECK(std::abs(term.coef - expected) < 1e-12 * std::max(1.0, std::abs(expected)));
        }
    }
}

TEST_CASE("compose affine") {
    const std::vector<std::string> vars2 = {"x1", "x2"};
    const std::vector<std::string> vars3 = {"x1", "x2", "x3"};

    SUBCASE("axis restriction") {
        const Poly p = algebra::parse_poly("x2 - x1^2", vars2);
        Eigen::MatrixXcd lin(2, 1);
        lin << Complex(1.0), Complex(0.0);
        const algebra::AffineMap axis(lin, Eigen::VectorXcd::Zero(2));
        const Poly q = compose_affine(p, axis);
        CHECK(q == algebra::parse_poly("-x1^2", {"x1"}));
    }
    SUBCASE("identity") {
        const Poly p = algebra::parse_poly("x1^2*x2 + x2", vars2);
        CHECK(compose_affine(p, algebra::AffineMap::identity(2)) == p);
    }
    SUBCASE("hyperplane substitution") {
        const Poly p = algebra::parse_poly("x3 - x1^2", vars3);
        Eigen::MatrixXcd lin(3, 2);
        lin << Complex(1.0), Complex(0.0), Complex(0.0), Complex(1.0), Complex(1.0), Complex(1.0);
        const algebra::AffineMap map(lin, Eigen::VectorXcd::Zero(3));
        const Poly q = compose_affine(p, map);
        CHECK(q == algebra::parse_poly("x1 + x2 - x1^2", vars2));

        util::Rng rng(3);
        for (int i = 0; i < 5; ++i) {
            const Eigen::VectorXcd t = rng.complex_gaussian_vector(2);
            const Eigen::VectorXcd image = map(t);
            const Complex lhs = q.eval(std::vector<Complex>{t[0], t[1]});
            const Complex rhs = p.eval(std::vector<Complex>{image[0], image[1], image[2]});
            CHECK(std::abs(lhs - rhs) < 1e-12 * std::max(1.0, std::abs(rhs)));
        }
    }
    SUBCASE("evaluation respected on random maps") {
        util::Rng rng(21);
        for (int rep = 0; rep < 20; ++rep) {
            const Poly p = random_poly(rng, 3, 4, 6);
            Eigen::MatrixXcd lin(3, 2);
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 2; ++c) lin(r, c) = rng.complex_gaussian();
            const algebra::AffineMap map(lin, rng.complex_gaussian_vector(3));
            const Poly q = compose_affine(p, map);
            CHECK(q.degree() <= p.degree());
            for (int i = 0; i < 5; ++i) {
                const Eigen::VectorXcd t = rng.complex_gaussian_vector(2);
                const Eigen::VectorXcd z = map(t);
                const Complex lhs = q.eval(std::vector<Complex>{t[0], t[1]});
                const Complex rhs = p.eval(std::vector<Complex>{z[0], z[1], z[2]});
                CHECK(std::abs(lhs - rhs) < 1e-10 * std::max(1.0, std::abs(rhs)));
            }
        }
    }
    SUBCASE("evaluation at zero returns the translation") {
        util::Rng rng(4);
        const Eigen::VectorXcd tr = rng.complex_gaussian_vector(3);
        Eigen::MatrixXcd lin = Eigen::MatrixXcd::Random(3, 2);
        const algebra::AffineMap map(lin, tr);
        CHECK((map(Eigen::VectorXcd::Zero(2)) - tr).norm() == 0.0);
    }
}

TEST_CASE("leading form") {
    const std::vector<std::string> vars = {"x1", "x2"};
    SUBCASE("examples") {
        auto [r1, f1] = leading_form(algebra::parse_poly("x1^2 + x1^3", {"x1"}));
        CHECK(r1 == 2);
        CHECK(f1 == algebra::parse_poly("x1^2", {"x1"}));

        auto [r2, f2] = leading_form(algebra::parse_poly("x1*x2 + x1^3", vars));
        CHECK(r2 == 2);
        CHECK(f2 == algebra::parse_poly("x1*x2", vars));

        auto [r3, f3] = leading_form(algebra::parse_poly("5", {"x1"}));
        CHECK(r3 == 0);
        CHECK(f3 == Poly::constant(1, Complex(5.0)));
    }
    SUBCASE("zero polynomial throws") { CHECK_THROWS_AS(leading_form(Poly(2)), Error); }
    SUBCASE("degree split") {
        util::Rng rng(8);
        for (int rep = 0; rep < 20; ++rep) {
            const Poly p = random_poly(rng, 2, 5, 7);
            if (p.is_zero()) continue;
            auto [r, f] = leading_form(p);
            for (const auto& term : f.terms()) CHECK(algebra::total_degree(term.alpha) == r);
            const Poly rest = p - f;
            if (!rest.is_zero()) CHECK(rest.order() > r);
        }
    }
}

TEST_CASE("parser round-trip is exact") {
    util::Rng rng(123);
    const std::vector<std::string> vars = {"x1", "x2", "x3"};
    for (int rep = 0; rep < 100; ++rep) {
        const Poly p = random_poly(rng, 3, 5, 8);
        const std::string text = algebra::to_expression_string(p, vars);
        const Poly back = algebra::parse_poly(text, vars);
        CHECK(back == p);
    }
    CHECK(algebra::parse_poly(algebra::to_expression_string(Poly(3), vars), vars).is_zero());
}

TEST_CASE("product evaluation is multiplicative") {
    util::Rng rng(55);
    for (int rep = 0; rep < 100; ++rep) {
        const Poly p = random_poly(rng, 2, 4, 5);
        const Poly q = random_poly(rng, 2, 4, 5);
        const Poly pq = p * q;
        const auto z = random_point(rng, 2);
        const Complex lhs = pq.eval(z);
        const Complex rhs = p.eval(z) * q.eval(z);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::max(1.0, std::abs(rhs)));
    }
}
