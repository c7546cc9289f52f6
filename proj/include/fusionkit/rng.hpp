#pragma once

#include <cstdint>
#include <random>
#include <string_view>

#include "fusionkit/hilbert_core.hpp"

namespace fusionkit {

// fusionkit-rng-v1: std::mt19937_64 seeded with the user seed, uniforms built
// from the top 53 bits of each draw, normals by Box-Muller (both outputs used,
// cosine branch first). Every step is fixed by the C++ standard or spelled out
// here, so seeded fixtures reproduce across standard libraries.
class Rng {
public:
    static constexpr std::string_view name = "fusionkit-rng-v1";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1).
    double uniform();
    // Uniform on [lo, hi).
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // Uniform integer on [lo, hi].
    int integer(int lo, int hi);
    double normal();
    // Circularly symmetric, E|z|^2 = 1.
    Complex complex_normal();

    Vector complex_vector(Eigen::Index n);
    Matrix complex_matrix(Eigen::Index rows, Eigen::Index cols);

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace fusionkit
