#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "spinorbit/core.hpp"
#include "spinorbit/optics.hpp"

namespace spinorbit::testing {

/// Fixed-seed generator so every property run sees the same cases.
inline std::mt19937_64& rng() {
    static std::mt19937_64 engine(0x5eed5eedULL);
    return engine;
}

inline double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

inline Complex random_complex() {
    std::normal_distribution<double> g;
    return {g(rng()), g(rng())};
}

inline Complex random_phase() { return std::polar(1.0, uniform(-kPi, kPi)); }

inline SpinOrbitState random_state() {
    return normalize({random_complex(), random_complex(), random_complex(), random_complex()});
}

/// Haar-ish element of SU(2) from a random unit quaternion.
inline JonesMatrix random_su2() {
    std::normal_distribution<double> g;
    double q[4] = {g(rng()), g(rng()), g(rng()), g(rng())};
    const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    for (double& v : q) v /= n;
    const Complex a(q[0], q[3]);
    const Complex b(q[2], q[1]);
    return {a, -std::conj(b), b, std::conj(a)};
}

inline JonesMatrix random_unitary() { return random_su2() * random_phase(); }

inline double distance_to(const SpinOrbitState& s, const SpinOrbitState& t) { return max_abs_difference(s, t); }

}  // namespace spinorbit::testing
