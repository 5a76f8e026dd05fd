#pragma once

// Seeded randomness helpers. All draws go through an explicit engine so that
// results are reproducible for a fixed seed and independent of call sites.

#include <cmath>
#include <complex>
#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace regsep::util {

// SplitMix64 finalizer; used to derive independent stream seeds.
inline std::uint64_t mix_seed(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return mix_seed(base ^ mix_seed(stream));
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(mix_seed(seed)) {}

    // Uniform in [0, 1). Hand-rolled so the stream does not depend on the
    // standard library's distribution implementations.
    double uniform() {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    // log-uniform on [lo, hi], lo > 0.
    double log_uniform(double lo, double hi) {
        return std::exp(uniform(std::log(lo), std::log(hi)));
    }

    // Standard normal via Box-Muller (no cached spare, for reproducibility).
    double normal() {
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    std::complex<double> complex_gaussian() {
        const double re = normal();
        const double im = normal();
        return {re, im};
    }

    Eigen::VectorXcd complex_gaussian_vector(int n) {
        Eigen::VectorXcd v(n);
        for (int i = 0; i < n; ++i) v[i] = complex_gaussian();
        return v;
    }

    // Uniform on the unit sphere of C^n.
    Eigen::VectorXcd unit_vector(int n) {
        Eigen::VectorXcd v = complex_gaussian_vector(n);
        double norm = v.norm();
        while (norm < 1e-12) {
            v = complex_gaussian_vector(n);
            norm = v.norm();
        }
        return v / norm;
    }

private:
    std::mt19937_64 engine_;
};

// Radical-inverse Halton point, one coordinate.
inline double halton(std::uint64_t index, std::uint64_t base) {
    double f = 1.0;
    double r = 0.0;
    for (std::uint64_t i = index + 1; i > 0; i /= base) {
        f /= static_cast<double>(base);
        r += f * static_cast<double>(i % base);
    }
    return r;
}

}  // namespace regsep::util
