#include "fusionkit/rng.hpp"

#include <cmath>
#include <numbers>

namespace fusionkit {

double Rng::uniform()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

int Rng::integer(int lo, int hi)
{
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(engine_() % span);
}

double Rng::normal()
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0)
        u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double t = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(t);
    has_spare_ = true;
    return r * std::cos(t);
}

Complex Rng::complex_normal()
{
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * (1.0 / std::numbers::sqrt2);
}

Vector Rng::complex_vector(Eigen::Index n)
{
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i)
        v(i) = complex_normal();
    return v;
}

Matrix Rng::complex_matrix(Eigen::Index rows, Eigen::Index cols)
{
    // Column-major fill order is part of the generator contract.
    Matrix m(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c)
        for (Eigen::Index r = 0; r < rows; ++r)
            m(r, c) = complex_normal();
    return m;
}

} // namespace fusionkit
