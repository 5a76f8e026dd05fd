// Variety specs, membership, distance oracles, sampling, intersections and
// hyperplane sections.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "regsep/variety/distance.hpp"
#include "regsep/variety/sampling.hpp"
#include "regsep/variety/spec.hpp"
#include "regsep/util/rng.hpp"

using namespace regsep;
using algebra::Complex;
using algebra::Poly;
using variety::DistanceOptions;
using variety::VarietySpec;
using Eigen::VectorXcd;

namespace {

const std::vector<std::string> kVars2 = {"x1", "x2"};
const std::vector<std::string> kVars3 = {"x1", "x2", "x3"};

VarietySpec parabola_graph() {
    return VarietySpec::graph(2, VectorXcd::Zero(2),
                              {algebra::parse_poly("x1^2", {"x1"})});
}

VarietySpec line_graph() {
    return VarietySpec::graph(2, VectorXcd::Zero(2), {Poly(1)});
}

VarietySpec origin_point(int m) {
    return VarietySpec::finite(m, VectorXcd::Zero(m), {VectorXcd::Zero(m)});
}

VectorXcd cvec(std::initializer_list<Complex> values) {
    VectorXcd v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (const Complex& z : values) v[i++] = z;
    return v;
}

}  // namespace

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(VarietySpec::graph(2, VectorXcd::Zero(2),
                                       {algebra::parse_poly("x1 + 1", {"x1"})}),
                    Error);  // does not vanish at 0
    CHECK_THROWS_AS(VarietySpec::implicit(2, VectorXcd::Ones(2),
                                          {algebra::parse_poly("x1", kVars2)}),
                    Error);  // base point off the set
    CHECK_NOTHROW(VarietySpec::implicit(2, VectorXcd::Zero(2),
                                        {algebra::parse_poly("x1*x2", kVars2)}));
}

TEST_CASE("membership") {
    CHECK(membership(parabola_graph(), cvec({2.0, 4.0}), 1e-9));
    CHECK_FALSE(membership(parabola_graph(), cvec({2.0, 4.0 + 1e-6}), 1e-9));
    CHECK_FALSE(membership(origin_point(2), cvec({1.0, 0.0}), 1e-9));
    const VarietySpec axes =
        VarietySpec::implicit(2, VectorXcd::Zero(2), {algebra::parse_poly("x1*x2", kVars2)});
    CHECK(membership(axes, cvec({0.0, 5.0}), 1e-9));
    CHECK_FALSE(membership(axes, cvec({1.0, 1.0}), 1e-9));
}

TEST_CASE("distance to linear sets is exact") {
    // Line {x2 = 0}: orthogonal projection.
    const VarietySpec line = line_graph();
    const auto res = distance(line, cvec({0.0, Complex(3.0, 4.0)}));
    CHECK(res.distance == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(res.certified);
    CHECK(res.method == "linear-projection");

    // Finite set: exact scan.
    const auto res2 = distance(origin_point(2), cvec({3.0, 4.0}));
    CHECK(res2.distance == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(res2.certified);

    // Implicit linear set {x2 = x3 = 0} in C^3.
    const VarietySpec axis3 = VarietySpec::implicit(
        3, VectorXcd::Zero(3),
        {algebra::parse_poly("x2", kVars3), algebra::parse_poly("x3", kVars3)});
    const auto res3 = distance(axis3, cvec({7.0, 3.0, 4.0}));
    CHECK(res3.distance == doctest::Approx(5.0).epsilon(1e-12));
    CHECK(res3.certified);
}

TEST_CASE("graph distance matches the brute-force oracle") {
    const VarietySpec parabola = parabola_graph();
    const auto gn = distance(parabola, cvec({1.0, 0.0}));
    const auto bf = distance_bruteforce(parabola, cvec({1.0, 0.0}), 2.0, 10000);
    CHECK(gn.distance == doctest::Approx(bf.distance).epsilon(1e-2));
    CHECK(membership(parabola, gn.foot_point, 1e-9));
    CHECK(gn.stationarity < 1e-8);
}

TEST_CASE("oracle consistency on random queries") {
    util::Rng rng(404);
    const VarietySpec parabola = parabola_graph();
    for (int i = 0; i < 100; ++i) {
        const VectorXcd x = rng.complex_gaussian_vector(2);
        const double gn = distance(parabola, x).distance;
        const double bf = distance_bruteforce(parabola, x, 3.0, 4000).distance;
        CHECK(std::abs(gn - bf) <= 1e-2 * std::max(bf, 1e-12));
    }
}

TEST_CASE("brute-force oracle examples") {
    // Parametric axis t -> (t, 0): distance from (3, 4) is 4.
    const VarietySpec axis = VarietySpec::parametric(
        2, VectorXcd::Zero(2),
        {algebra::parse_poly("x1", {"x1"}), Poly(1)});
    const auto res = distance_bruteforce(axis, cvec({3.0, 4.0}), 5.0, 10000);
    CHECK(res.distance == doctest::Approx(4.0).epsilon(1e-6));

    // Finite form: identical to the exact oracle.
    const auto exact = distance(origin_point(2), cvec({1.0, 2.0}));
    const auto brute = distance_bruteforce(origin_point(2), cvec({1.0, 2.0}), 1.0, 1000);
    CHECK(brute.distance == exact.distance);

    CHECK_THROWS_AS(distance_bruteforce(
                        VarietySpec::implicit(2, VectorXcd::Zero(2),
                                              {algebra::parse_poly("x1", kVars2)}),
                        cvec({1.0, 0.0}), 1.0, 1000),
                    Error);
    CHECK_THROWS_AS(distance_bruteforce(axis, cvec({3.0, 4.0}), 5.0, 10), Error);
}

TEST_CASE("implicit distance via penalty projection") {
    // Distance to the parabola as an implicit set matches the graph oracle.
    const VarietySpec implicit_parabola = VarietySpec::implicit(
        2, VectorXcd::Zero(2), {algebra::parse_poly("x2 - x1^2", kVars2)});
    util::Rng rng(7);
    for (int i = 0; i < 20; ++i) {
        const VectorXcd x = rng.complex_gaussian_vector(2);
        const auto pen = distance(implicit_parabola, x);
        const auto gn = distance(parabola_graph(), x);
        CHECK(pen.distance == doctest::Approx(gn.distance).epsilon(1e-6));
        CHECK(pen.residual < 1e-9);
        CHECK(membership(implicit_parabola, pen.foot_point, 1e-8));
    }
}

TEST_CASE("distance is zero exactly on the set") {
    const VarietySpec parabola = parabola_graph();
    const auto on = sample_on_variety(parabola, 1.0, 50, 99);
    for (const auto& x : on) {
        CHECK(distance(parabola, x).distance < 1e-8);
        CHECK(membership(parabola, x, 1e-8));
    }
    util::Rng rng(31);
    for (const auto& x : on) {
        const VectorXcd off = x + 1e-3 * rng.unit_vector(2);
        const double d = distance(parabola, off).distance;
        if (!membership(parabola, off, 1e-8)) CHECK(d > 1e-9);
    }
}

TEST_CASE("triangle sanity: oracle never beats a witness point") {
    const VarietySpec parabola = parabola_graph();
    util::Rng rng(812);
    const auto samples = sample_on_variety(parabola, 2.0, 100, 5);
    for (int i = 0; i < 1000; ++i) {
        const VectorXcd x = rng.complex_gaussian_vector(2);
        const double d = distance(parabola, x).distance;
        const VectorXcd& witness = samples[i % samples.size()];
        CHECK(d <= (x - witness).norm() + 1e-9);
    }
}

TEST_CASE("sample_on_variety") {
    SUBCASE("graph samples satisfy the equation exactly and hit radii") {
        const auto pts = sample_on_variety(parabola_graph(), 1.0, 100, 3);
        CHECK(pts.size() == 100);
        for (const auto& x : pts) {
            CHECK(std::abs(x[1] - x[0] * x[0]) == 0.0);
            const double r = x.norm();
            CHECK(r <= 1.0 + 1e-9);
            CHECK(r >= std::pow(2.0, -14) * (1.0 - 1e-9));
        }
    }
    SUBCASE("deterministic per seed") {
        const auto a = sample_on_variety(parabola_graph(), 1.0, 10, 3);
        const auto b = sample_on_variety(parabola_graph(), 1.0, 10, 3);
        for (std::size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).norm() == 0.0);
    }
    SUBCASE("finite form returns its points") {
        const auto pts = sample_on_variety(origin_point(2), 1.0, 5, 1);
        CHECK(pts.size() == 1);
        CHECK(pts[0].norm() == 0.0);
    }
    SUBCASE("implicit samples project onto the set") {
        const VarietySpec axes =
            VarietySpec::implicit(2, VectorXcd::Zero(2), {algebra::parse_poly("x1*x2", kVars2)});
        const auto pts = sample_on_variety(axes, 1.0, 50, 17);
        CHECK(pts.size() == 50);
        for (const auto& x : pts) {
            const double resid = std::abs(x[0] * x[1]);
            CHECK(resid < 1e-9);
            CHECK(std::min(std::abs(x[0]), std::abs(x[1])) < 1e-4);
        }
    }
}

TEST_CASE("intersect") {
    SUBCASE("transversal axes meet at the origin") {
        const VarietySpec x_axis = line_graph();
        const VarietySpec y_axis =
            VarietySpec::implicit(2, VectorXcd::Zero(2), {algebra::parse_poly("x1", kVars2)});
        const VarietySpec both = intersect(x_axis, y_axis);
        CHECK(both.is_implicit());
        util::Rng rng(5);
        for (int i = 0; i < 10; ++i) {
            const Complex t = rng.complex_gaussian();
            const auto res = distance(both, cvec({t, 0.0}));
            CHECK(res.distance == doctest::Approx(std::abs(t)).epsilon(1e-9));
        }
    }
    SUBCASE("parabola meets the line only at the origin") {
        const VarietySpec meet = intersect(parabola_graph(), line_graph());
        util::Rng rng(6);
        for (int i = 0; i < 10; ++i) {
            const VectorXcd x = 0.1 * rng.unit_vector(2);
            const auto res = distance(meet, x);
            CHECK(res.distance == doctest::Approx(x.norm()).epsilon(1e-5));
        }
        CHECK(membership(meet, VectorXcd::Zero(2), 1e-10));
        CHECK_FALSE(membership(meet, cvec({0.5, 0.25}), 1e-6));
    }
    SUBCASE("idempotence: X cap X has the same membership as X") {
        const VarietySpec meet = intersect(parabola_graph(), parabola_graph());
        util::Rng rng(7);
        for (int i = 0; i < 20; ++i) {
            const VectorXcd x = rng.complex_gaussian_vector(2);
            CHECK(membership(meet, x, 1e-8) == membership(parabola_graph(), x, 1e-8));
        }
    }
    SUBCASE("monotonicity: intersecting never shrinks distances") {
        const VarietySpec a = parabola_graph();
        const VarietySpec b = line_graph();
        const VarietySpec meet = intersect(a, b);
        util::Rng rng(8);
        for (int i = 0; i < 50; ++i) {
            const VectorXcd x = rng.complex_gaussian_vector(2);
            const double d_meet = distance(meet, x).distance;
            const double d_a = distance(a, x).distance;
            const double d_b = distance(b, x).distance;
            CHECK(d_meet >= std::max(d_a, d_b) - 1e-9);
        }
    }
    SUBCASE("finite part filters candidates") {
        const VarietySpec pts = VarietySpec::finite(
            2, VectorXcd::Zero(2), {VectorXcd::Zero(2), cvec({1.0, 1.0}), cvec({1.0, 0.0})});
        const VarietySpec meet = intersect(pts, line_graph());
        const auto res = distance(meet, cvec({0.9, 0.0}));
        CHECK(res.certified);
        CHECK(res.distance == doctest::Approx(0.1).epsilon(1e-12));  // (1,0) survives, (1,1) not
    }
    SUBCASE("mismatched base points throw") {
        const VarietySpec shifted = VarietySpec::finite(2, VectorXcd::Ones(2), {VectorXcd::Ones(2)});
        CHECK_THROWS_AS(intersect(parabola_graph(), shifted), Error);
    }
}

TEST_CASE("section") {
    SUBCASE("plane {x3=0} sectioned by {x2=0} is a line in hyperplane coordinates") {
        const VarietySpec plane = VarietySpec::implicit(3, VectorXcd::Zero(3),
                                                        {algebra::parse_poly("x3", kVars3)});
        VectorXcd n(3);
        n << Complex(0.0), Complex(1.0), Complex(0.0);
        const geometry::Hyperplane h(VectorXcd::Zero(3), n);
        const auto frame = geometry::orthonormal_frame(h, 5);
        const VarietySpec sec = section(plane, frame);
        CHECK(sec.ambient_dim() == 2);
        CHECK(sec.is_implicit());
        // The section is a complex line through 0: distance from t equals the
        // ambient distance of the corresponding hyperplane point to the plane.
        const auto param = parametrization(frame);
        util::Rng rng(9);
        for (int i = 0; i < 20; ++i) {
            const VectorXcd t = rng.complex_gaussian_vector(2);
            const double d_sec = distance(sec, t).distance;
            const double d_amb = std::abs(param(t)[2]);  // distance to {x3=0}
            CHECK(d_sec <= d_amb + 1e-9);
        }
    }
    SUBCASE("graph sectioned by a generic hyperplane stays anchored at the base point") {
        const VarietySpec graph3 = VarietySpec::graph(3, VectorXcd::Zero(3),
                                                      {algebra::parse_poly("x1^2", kVars2)});
        const auto h = geometry::sample_generic_hyperplane(3, VectorXcd::Zero(3), 77);
        const VarietySpec sec = section(graph3, h, 78);
        CHECK(sec.ambient_dim() == 2);
        CHECK(membership(sec, VectorXcd::Zero(2), 1e-10));
        const auto pts = sample_on_variety(sec, 0.5, 20, 79);
        for (const auto& t : pts) CHECK(distance(sec, t).distance < 1e-8);
    }
    SUBCASE("containment: a set inside the hyperplane sections isometrically") {
        const VarietySpec axis3 = VarietySpec::implicit(
            3, VectorXcd::Zero(3),
            {algebra::parse_poly("x2", kVars3), algebra::parse_poly("x3", kVars3)});
        VectorXcd n(3);
        n << Complex(0.0), Complex(1.0), Complex(0.0);  // H = {x2 = 0} contains the x1-axis
        const geometry::Hyperplane h(VectorXcd::Zero(3), n);
        const auto frame = geometry::orthonormal_frame(h, 11);
        const VarietySpec sec = section(axis3, frame);
        util::Rng rng(12);
        for (int i = 0; i < 20; ++i) {
            const VectorXcd t = rng.complex_gaussian_vector(2);
            const double d_sec = distance(sec, t).distance;
            const double d_amb = distance(axis3, parametrization(frame)(t)).distance;
            CHECK(d_sec == doctest::Approx(d_amb).epsilon(1e-10));
        }
    }
    SUBCASE("isometry: hyperplane-coordinate distances equal ambient distances") {
        const auto h = geometry::sample_generic_hyperplane(3, VectorXcd::Zero(3), 13);
        const auto frame = geometry::orthonormal_frame(h, 14);
        const auto param = parametrization(frame);
        util::Rng rng(15);
        for (int i = 0; i < 50; ++i) {
            const VectorXcd s = rng.complex_gaussian_vector(2);
            const VectorXcd t = rng.complex_gaussian_vector(2);
            CHECK(std::abs((param(s) - param(t)).norm() - (s - t).norm()) < 1e-12);
        }
    }
    SUBCASE("base point mismatch throws") {
        const geometry::Hyperplane h(VectorXcd::Ones(2), cvec({1.0, 0.0}));
        CHECK_THROWS_AS(section(parabola_graph(), h, 3), Error);
    }
    SUBCASE("parametric sections are unsupported") {
        const VarietySpec param_curve = VarietySpec::parametric(
            2, VectorXcd::Zero(2),
            {algebra::parse_poly("x1", {"x1"}), algebra::parse_poly("x1^2", {"x1"})});
        const auto h = geometry::sample_generic_hyperplane(2, VectorXcd::Zero(2), 5);
        CHECK_THROWS_AS(section(param_curve, h, 6), Error);
    }
}

TEST_CASE("variety JSON round trip") {
    const VarietySpec parabola = parabola_graph();
    const auto j = parabola.to_json();
    const VarietySpec back = VarietySpec::from_json(j);
    CHECK(back.is_graph());
    CHECK(back.ambient_dim() == 2);
    util::Rng rng(16);
    for (int i = 0; i < 10; ++i) {
        const VectorXcd x = rng.complex_gaussian_vector(2);
        CHECK(membership(back, x, 1e-9) == membership(parabola, x, 1e-9));
    }

    const VarietySpec meet = intersect(parabola, line_graph());
    const VarietySpec meet_back = VarietySpec::from_json(meet.to_json());
    CHECK(meet_back.kind() == meet.kind());

    const VarietySpec pts = origin_point(3);
    CHECK(VarietySpec::from_json(pts.to_json()).is_finite());
}

TEST_CASE("dimension mismatches throw") {
    CHECK_THROWS_AS(distance(parabola_graph(), VectorXcd::Zero(3)), DimensionError);
    CHECK_THROWS_AS(membership(parabola_graph(), VectorXcd::Zero(1), 1e-9), DimensionError);
}
