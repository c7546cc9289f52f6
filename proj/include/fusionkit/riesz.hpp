#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "fusionkit/fusion_basis.hpp"

namespace fusionkit {

enum class OrthonormalClass { none, system, basis };

std::string_view to_string(OrthonormalClass c) noexcept;

// max_{i != j} ||basis_i^H basis_j||; zero for a single member.
double cross_gram_defect(const FusionSystem& sys);

// `system` when the members are mutually orthogonal, `basis` when they are
// additionally complete.
OrthonormalClass orthonormal_classify(const FusionSystem& sys, const Tolerances& tol = {});

// | ||sum g_j||^2 - sum ||g_j||^2 |. Throws NotOrthonormalSystem.
double pythagoras_check(const FusionSystem& sys, const CoefficientBundle& bundle, const Tolerances& tol = {});

struct BesselCheck {
    double margin = 0.0;             // ||f||^2 - sum_j ||pi_{W_j} f||^2
    double best_approx_gap = 0.0;    // max over trials of ||f - sum pi f|| - ||f - sum g_j||
    bool best_approximation = true;  // best_approx_gap <= eq_tol * max(1, ||f||)
};

// Bessel margin plus the best-approximation property tested against
// `trials` seeded random bundles. Throws NotOrthonormalSystem.
BesselCheck bessel_inequality_check(const FusionSystem& sys, const Vector& f, const Tolerances& tol = {},
                                    std::uint64_t seed = 0, int trials = 20);

// Outcome of the Riesz f-basis test.
//
// When is_riesz holds, T = E maps the coordinate-block orthonormal f-basis
// V_j onto W_j, A and B are sigma_min(E)^2 and sigma_max(E)^2, and
// gram = (E E^H)^-1 realizes <f, g>_T = <T^-1 f, T^-1 g> = g^H G f.
// Otherwise every optional field is empty.
struct RieszCertificate {
    bool is_riesz = false;
    std::optional<double> A;
    std::optional<double> B;
    std::optional<OperatorMatrix> T;
    std::vector<Subspace> reference_basis;
    std::optional<Matrix> gram;
    std::optional<double> norm_T;          // ||T||
    std::optional<double> norm_T_inverse;  // ||T^-1||
};

RieszCertificate riesz_analyze(const FusionSystem& sys, const Tolerances& tol = {});

// max of max_{i != j} ||basis_i^H G basis_j|| and max_j ||P_j^H G - G P_j||.
// Throws NotRiesz.
double gram_orthonormality_check(const RieszCertificate& cert, const FusionSystem& sys);

enum class ResolutionKind { P, S, U, R };

struct ResolutionFamily {
    ResolutionKind kind = ResolutionKind::P;
    std::vector<Matrix> operators;

    double sum_residual() const;          // ||sum - I||
    double idempotency_residual() const;  // max_j ||X_j^2 - X_j||
};

struct Resolutions {
    ResolutionFamily P;  // T pi_V T^-1
    ResolutionFamily S;  // T^-1 pi_V T
    ResolutionFamily U;  // T^H pi_V T^-H
    ResolutionFamily R;  // T^-H pi_V T^H
};

// Throws NotRiesz.
Resolutions resolutions_of_identity(const RieszCertificate& cert);

// Image f-basis system {(T W_j, T P_j T^-1)}. Throws SingularOperator.
FDualSystem transform_f_basis(const FDualSystem& fd, const OperatorMatrix& t, const Tolerances& tol = {});

} // namespace fusionkit
