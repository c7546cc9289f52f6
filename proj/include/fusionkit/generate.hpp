#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fusionkit/fusion_frame.hpp"
#include "fusionkit/rng.hpp"
#include "fusionkit/system_io.hpp"

namespace fusionkit {

// N lines span{sum_{i != j} e_i} in C^N.
FusionSystem example_2_2(int N);
// m coordinate planes span{e_{2j-1}, e_{2j}} in C^{2m}.
FusionSystem example_2_3(int m);
// m lines span{(e_{2j-1} + e_{2j}) / sqrt 2} in C^{2m}.
FusionSystem example_3_2i(int m);
// {span{e1, e2}, span{e2, e3}} in C^3: exact fusion frame, not an f-basis.
FusionSystem exact_not_riesz();

// Haar-distributed unitary (QR of a complex Gaussian matrix, phases fixed).
Matrix random_unitary(int n, Rng& rng);
// U diag(sigma) V^H with sigma spaced geometrically from 1 down to 1/cond.
Matrix random_invertible(int n, double cond, Rng& rng);
Subspace random_subspace(int n, int k, Rng& rng);
// Rotation by theta in a random real 2-plane; identity when n < 2.
Matrix plane_rotation(int n, double theta, Rng& rng);

// Columns of a random unitary split into blocks of the given sizes
// (sum(dims) <= n; equality gives an orthonormal f-basis).
FusionSystem random_orthonormal(int n, const std::vector<int>& dims, std::uint64_t seed);
// random_orthonormal pushed through random_invertible(n, cond); needs sum(dims) == n.
FusionSystem random_riesz(int n, const std::vector<int>& dims, double cond, std::uint64_t seed);
// One seeded plane rotation R(theta) applied to every member.
FusionSystem rotate(const FusionSystem& sys, double theta, std::uint64_t seed);

// Random composition of n into m positive parts.
std::vector<int> random_dims(int n, int m, Rng& rng);

using GeneratorParams = std::map<std::string, std::string>;

// Dispatches on kind: example_2_2 (N), example_2_3 (m), example_3_2i (m),
// exact_not_riesz, random_riesz (n, dims, cond), random_orthonormal (n, dims),
// rotate (file, theta). The returned metadata records kind, params, seed and
// generator name. Throws BadParams.
SystemFile generate(const std::string& kind, const GeneratorParams& params, std::uint64_t seed,
                    const Tolerances& tol = {});

} // namespace fusionkit
