#pragma once

// Local algebraic-set specifications at a base point.
//
// A VarietySpec fixes an ambient dimension m, a base point x0 on the set,
// and one of five defining forms:
//   implicit    equations e_i in ambient coordinates x1..xm, set {e = 0}
//   graph       polynomials f_1..f_(m-p) in parameters x1..xp with f(0) = 0;
//               the set is {x0 + (t, f(t))} in the standard splitting
//               C^p x C^(m-p) recentred at x0
//   parametric  m polynomials in p parameters with map(0) = x0
//   finite      an explicit point list containing x0
//   intersection  parts sharing ambient dimension and base point
//
// Specs are immutable after construction, which validates that the base
// point lies on the set (residual < 1e-10).

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "regsep/algebra/parser.hpp"
#include "regsep/algebra/poly.hpp"
#include "regsep/geometry/frame.hpp"
#include "regsep/geometry/hyperplane.hpp"
#include "regsep/util/json_convert.hpp"

namespace regsep::variety {

inline constexpr double kBasePointResidualTolerance = 1e-10;

class VarietySpec;

struct ImplicitForm {
    std::vector<algebra::Poly> equations;  // in ambient variables
};

struct GraphForm {
    int param_dim = 0;
    std::vector<algebra::Poly> components;  // in parameter variables, f(0) = 0
};

struct ParametricForm {
    int param_dim = 0;
    std::vector<algebra::Poly> map;  // ambient_dim polynomials, map(0) = x0
};

struct FiniteForm {
    std::vector<Eigen::VectorXcd> points;
};

struct IntersectionForm {
    std::vector<VarietySpec> parts;
};

class VarietySpec {
public:
    using Form = std::variant<ImplicitForm, GraphForm, ParametricForm, FiniteForm, IntersectionForm>;

    VarietySpec(int ambient_dim, Eigen::VectorXcd base_point, Form form);

    static VarietySpec implicit(int ambient_dim, Eigen::VectorXcd base_point,
                                std::vector<algebra::Poly> equations);
    static VarietySpec graph(int ambient_dim, Eigen::VectorXcd base_point,
                             std::vector<algebra::Poly> components);
    static VarietySpec parametric(int ambient_dim, Eigen::VectorXcd base_point,
                                  std::vector<algebra::Poly> map);
    static VarietySpec finite(int ambient_dim, Eigen::VectorXcd base_point,
                              std::vector<Eigen::VectorXcd> points);

    int ambient_dim() const { return ambient_dim_; }
    const Eigen::VectorXcd& base_point() const { return base_point_; }
    const Form& form() const { return form_; }

    bool is_implicit() const { return std::holds_alternative<ImplicitForm>(form_); }
    bool is_graph() const { return std::holds_alternative<GraphForm>(form_); }
    bool is_parametric() const { return std::holds_alternative<ParametricForm>(form_); }
    bool is_finite() const { return std::holds_alternative<FiniteForm>(form_); }
    bool is_intersection() const { return std::holds_alternative<IntersectionForm>(form_); }

    std::string kind() const;

    // Parameter dimension for graph/parametric forms.
    int param_dim() const;

    util::Json to_json() const;
    static VarietySpec from_json(const util::Json& j);

private:
    void validate() const;

    int ambient_dim_;
    Eigen::VectorXcd base_point_;
    Form form_;
};

// Point of a graph-form set for parameter t: x0 + (t, f(t)).
Eigen::VectorXcd graph_point(const VarietySpec& spec, const Eigen::VectorXcd& t);

// Point of a parametric-form set: map(t).
Eigen::VectorXcd parametric_point(const VarietySpec& spec, const Eigen::VectorXcd& t);

// Defining equations in ambient coordinates when the form supports exact
// implicitization (implicit and graph forms, and intersections of those);
// nullopt otherwise.
std::optional<std::vector<algebra::Poly>> implicit_equations(const VarietySpec& spec);

// Defining residual (implicit/graph) or projection distance (finite and
// parametric) below tol.
bool membership(const VarietySpec& spec, const Eigen::VectorXcd& x, double tol);

// Intersection with the same ambient dimension and base point. Graph forms
// are implicitized by substitution; combinations that cannot be reduced to
// shared implicit equations become a lazy intersection node whose distance
// oracle decides (or refuses) at query time.
VarietySpec intersect(const VarietySpec& a, const VarietySpec& b);

// The set intersected with the hyperplane, expressed in the isometric
// hyperplane coordinates of the frame: ambient dimension drops by one and
// the base point becomes the origin. Defining equations are pulled back
// through the frame parametrization. Parametric forms are unsupported.
VarietySpec section(const VarietySpec& spec, const geometry::Frame& frame);
VarietySpec section(const VarietySpec& spec, const geometry::Hyperplane& h, std::uint64_t frame_seed);

}  // namespace regsep::variety
