#pragma once

// JSON encodings shared across modules: complex scalars are [re, im],
// complex vectors are [[re, im], ...].

#include <complex>

#include <Eigen/Dense>
#include <json.hpp>

#include "regsep/util/error.hpp"

namespace regsep::util {

using Json = nlohmann::ordered_json;

inline Json complex_to_json(const std::complex<double>& z) {
    return Json::array({z.real(), z.imag()});
}

inline std::complex<double> complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2) throw Error("complex value must be a [re, im] pair");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline Json cvector_to_json(const Eigen::VectorXcd& v) {
    Json arr = Json::array();
    for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(complex_to_json(v[i]));
    return arr;
}

inline Eigen::VectorXcd cvector_from_json(const Json& j) {
    if (!j.is_array()) throw Error("complex vector must be an array of [re, im] pairs");
    Eigen::VectorXcd v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = complex_from_json(j[static_cast<std::size_t>(i)]);
    return v;
}

}  // namespace regsep::util
