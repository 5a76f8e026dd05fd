#include "regsep/geometry/hyperplane.hpp"
#include "regsep/geometry/frame.hpp"

#include <algorithm>
#include <cmath>

#include "regsep/util/rng.hpp"

namespace regsep::geometry {

namespace {

// Hermitian product <a, b> = sum_i a_i conj(b_i), linear in the first slot.
std::complex<double> hermitian(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
    return b.dot(a);
}

void require_compatible(const Hyperplane& h, const Hyperplane& k) {
    if (h.ambient_dim() != k.ambient_dim())
        throw DimensionError("hyperplanes have different ambient dimensions");
    if ((h.base_point() - k.base_point()).norm() > 1e-10)
        throw Error("hyperplanes have different base points");
}

}  // namespace

Hyperplane::Hyperplane(Eigen::VectorXcd base_point, Eigen::VectorXcd normal)
    : base_point_(std::move(base_point)), normal_(std::move(normal)) {
    if (normal_.size() < 2) throw DimensionError("Hyperplane: ambient dimension must be >= 2");
    if (base_point_.size() != normal_.size())
        throw DimensionError("Hyperplane: base point and normal dimensions differ");
    const double n = normal_.norm();
    if (n < 1e-12) throw Error("Hyperplane: normal vector is numerically zero");
    normal_ /= n;
}

std::complex<double> Hyperplane::offset(const Eigen::VectorXcd& x) const {
    if (x.size() != normal_.size()) throw DimensionError("Hyperplane::offset: dimension mismatch");
    return hermitian(x - base_point_, normal_);
}

bool Hyperplane::contains(const Eigen::VectorXcd& x, double tol) const {
    return std::abs(offset(x)) < tol;
}

util::Json Hyperplane::to_json() const {
    util::Json j;
    j["ambient_dim"] = ambient_dim();
    j["base_point"] = util::cvector_to_json(base_point_);
    j["normal"] = util::cvector_to_json(normal_);
    return j;
}

Hyperplane Hyperplane::from_json(const util::Json& j) {
    Hyperplane h(util::cvector_from_json(j.at("base_point")),
                 util::cvector_from_json(j.at("normal")));
    if (j.contains("ambient_dim") && j.at("ambient_dim").get<int>() != h.ambient_dim())
        throw Error("Hyperplane::from_json: ambient_dim does not match vectors");
    return h;
}

double angle(const Hyperplane& h, const Hyperplane& k) {
    require_compatible(h, k);
    // arccos |<v,w>| evaluated as atan2(sin, cos): the cosine alone is
    // ill-conditioned near zero angle.
    const std::complex<double> inner = hermitian(k.normal(), h.normal());  // <w, v>
    const double c = std::min(std::abs(inner), 1.0);
    const double s = (k.normal() - inner * h.normal()).norm();
    return std::clamp(std::atan2(s, c), 0.0, M_PI / 2.0);
}

Hyperplane sample_generic_hyperplane(int ambient_dim, const Eigen::VectorXcd& base_point,
                                     std::uint64_t seed) {
    if (ambient_dim < 2) throw DimensionError("sample_generic_hyperplane: ambient dim must be >= 2");
    util::Rng rng(seed);
    return Hyperplane(base_point, rng.unit_vector(ambient_dim));
}

Hyperplane min_angle_hyperplane_through(const Eigen::VectorXcd& y, const Hyperplane& h0) {
    const int m = h0.ambient_dim();
    if (y.size() != m) throw DimensionError("min_angle_hyperplane_through: dimension mismatch");
    const Eigen::VectorXcd w = y - h0.base_point();
    if (w.norm() < 1e-14) throw Error("min_angle_hyperplane_through: y coincides with the base point");

    const Eigen::VectorXcd& v = h0.normal();
    const std::complex<double> normal_part = hermitian(w, v);
    if (std::abs(normal_part) < 1e-13 * w.norm()) return h0;  // y already on H0

    const Eigen::VectorXcd in_plane = w - normal_part * v;
    const double u = in_plane.norm();
    if (u < 1e-13 * w.norm()) {
        // y orthogonal to H0: every hyperplane through y has angle pi/2.
        // Deterministic tie-break: first coordinate axis orthogonalized
        // against w (the next axis when w is parallel to the first).
        for (int i = 0; i < m; ++i) {
            Eigen::VectorXcd e = Eigen::VectorXcd::Zero(m);
            e[i] = 1.0;
            Eigen::VectorXcd cand = e - hermitian(e, w) / hermitian(w, w) * w;
            if (cand.norm() > 1e-8) return Hyperplane(h0.base_point(), cand);
        }
        throw Error("min_angle_hyperplane_through: could not construct orthogonal normal");
    }

    // Adapted coordinates: e_1 = in_plane/|in_plane|, e_m = v, so that
    // w = (u, 0, ..., 0, normal_part) and {x_m = q x_1} with q = normal_part/u
    // has normal -conj(q) e_1 + e_m.
    const std::complex<double> q = normal_part / u;
    const Eigen::VectorXcd normal = -std::conj(q) * (in_plane / u) + v;
    return Hyperplane(h0.base_point(), normal);
}

Lemma1Check lemma1_bound_check(const Eigen::VectorXcd& y0, const Eigen::VectorXcd& y1,
                               const Hyperplane& h0, double a) {
    if (a <= 0.0 || a >= M_PI / 2.0) throw Error("lemma1_bound_check: angle threshold outside (0, pi/2)");
    Lemma1Check out;
    const Eigen::VectorXcd& x0 = h0.base_point();
    const double norm_y0 = (y0 - x0).norm();
    const double norm_y1 = (y1 - x0).norm();
    out.lhs = (y1 - y0).norm();
    out.rhs = 0.9 * std::tan(a) * norm_y0;

    if (norm_y1 < 1e-14) {
        out.status = Lemma1Check::Status::skip;
        out.reason = "y1 coincides with the base point";
        return out;
    }
    if (!h0.contains(y0, 1e-10 * std::max(1.0, norm_y0))) {
        out.status = Lemma1Check::Status::skip;
        out.reason = "y0 does not lie on H0";
        return out;
    }
    if (!(out.lhs < norm_y0 / 10.0)) {
        out.status = Lemma1Check::Status::skip;
        out.reason = "closeness hypothesis |y0 - y1| < |y0|/10 not satisfied";
        return out;
    }
    const Hyperplane h1 = min_angle_hyperplane_through(y1, h0);
    out.min_angle = angle(h0, h1);
    if (out.min_angle < a) {
        out.status = Lemma1Check::Status::skip;
        out.reason = "minimal angle below threshold";
        return out;
    }
    out.status = (out.lhs >= out.rhs) ? Lemma1Check::Status::pass : Lemma1Check::Status::fail;
    return out;
}

Frame::Frame(Hyperplane hyperplane, Eigen::MatrixXcd basis)
    : hyperplane_(std::move(hyperplane)), basis_(std::move(basis)) {
    const int m = hyperplane_.ambient_dim();
    if (basis_.rows() != m || basis_.cols() != m - 1)
        throw DimensionError("Frame: basis must be ambient_dim x (ambient_dim - 1)");
    for (int i = 0; i < m - 1; ++i) {
        if (std::abs(basis_.col(i).dot(hyperplane_.normal())) > 1e-10)
            throw Error("Frame: basis vector not orthogonal to the normal");
        for (int j = 0; j <= i; ++j) {
            const std::complex<double> g = basis_.col(j).dot(basis_.col(i));
            const double expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(g - expected) > 1e-10) throw Error("Frame: basis is not orthonormal");
        }
    }
}

Frame orthonormal_frame(const Hyperplane& h, std::uint64_t seed) {
    const int m = h.ambient_dim();
    util::Rng rng(seed);
    Eigen::MatrixXcd basis(m, m - 1);
    int built = 0;
    int guard = 0;
    while (built < m - 1) {
        if (++guard > 64 * m) throw Error("orthonormal_frame: Gram-Schmidt failed to converge");
        Eigen::VectorXcd cand = rng.complex_gaussian_vector(m);
        cand -= h.normal() * h.normal().dot(cand);
        for (int j = 0; j < built; ++j) cand -= basis.col(j) * basis.col(j).dot(cand);
        const double n = cand.norm();
        if (n < 1e-6) continue;  // nearly dependent draw, retry
        // Second orthogonalization pass tightens the Gram matrix to ~1e-15.
        cand /= n;
        cand -= h.normal() * h.normal().dot(cand);
        for (int j = 0; j < built; ++j) cand -= basis.col(j) * basis.col(j).dot(cand);
        basis.col(built) = cand / cand.norm();
        ++built;
    }
    return Frame(h, std::move(basis));
}

algebra::AffineMap parametrization(const Frame& f) {
    return algebra::AffineMap(f.basis(), f.hyperplane().base_point());
}

Eigen::VectorXcd hyperplane_coordinates(const Frame& f, const Eigen::VectorXcd& x) {
    if (x.size() != f.hyperplane().ambient_dim())
        throw DimensionError("hyperplane_coordinates: dimension mismatch");
    return f.basis().adjoint() * (x - f.hyperplane().base_point());
}

}  // namespace regsep::geometry
