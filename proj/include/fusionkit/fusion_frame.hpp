#pragma once

#include <vector>

#include "fusionkit/hilbert_core.hpp"

namespace fusionkit {

struct Member {
    Subspace subspace;
    double weight = 1.0;
};

// Ordered family of weighted subspaces {(W_j, alpha_j)} of one ambient space.
//
// List position plays the role of the index set. Weights must be strictly
// positive and every subspace must share the ambient dimension; violations
// throw NonpositiveWeight or DimensionMismatch.
class FusionSystem {
public:
    explicit FusionSystem(std::vector<Member> members);

    // All weights equal to `weight`.
    static FusionSystem uniform(const std::vector<Subspace>& subspaces, double weight = 1.0);

    int ambient_dim() const noexcept { return ambient_dim_; }
    std::size_t size() const noexcept { return members_.size(); }
    const std::vector<Member>& members() const noexcept { return members_; }
    const Member& operator[](std::size_t j) const { return members_[j]; }

    std::vector<Subspace> subspaces() const;
    std::vector<double> weights() const;
    std::vector<int> dims() const;
    int total_dim() const;

    // Block matrix E = [basis_0 | basis_1 | ...].
    Matrix stacked() const;

    // Same weights, subspaces replaced (count and order preserved).
    FusionSystem with_subspaces(const std::vector<Subspace>& subspaces) const;

private:
    int ambient_dim_ = 0;
    std::vector<Member> members_;
};

struct FrameBounds {
    double lower = 0.0;  // C
    double upper = 0.0;  // D
    bool is_frame = false;
};

// Extreme eigenvalues of S = sum_j alpha_j^2 pi_{W_j}. Since
// sum_j alpha_j^2 ||pi_{W_j} f||^2 = <S f, f>, these are the optimal bounds.
// Non-spanning systems report C = 0.
FrameBounds frame_bounds(const FusionSystem& sys, const Tolerances& tol = {});

// sum_j alpha_j^2 pi_{W_j}
Matrix frame_operator(const FusionSystem& sys);

struct FrameFlags {
    FrameBounds bounds;
    bool bessel = true;  // always, in finite dimension; bound is bounds.upper
    bool frame = false;
    bool tight = false;
    bool parseval = false;
    bool uniform_weight = false;
};

FrameFlags classify(const FusionSystem& sys, const Tolerances& tol = {});

bool is_complete(const FusionSystem& sys, const Tolerances& tol = {});
bool is_complete(std::span<const Subspace> members, int ambient_dim, const Tolerances& tol = {});

struct Minimality {
    bool minimal = true;
    std::vector<std::size_t> violations;  // indices i with W_i meeting span of the others
};

Minimality is_minimal(const FusionSystem& sys, const Tolerances& tol = {});

// A frame that stops being complete when any single member is removed.
// Throws NotAFrame when the system is not a fusion frame.
bool is_exact(const FusionSystem& sys, const Tolerances& tol = {});

struct DimensionAudit {
    int sum_dims = 0;
    int ambient_dim = 0;
    bool f_basis_possible = false;
};

DimensionAudit dimension_audit(const FusionSystem& sys);

struct BoundsInterval {
    double lower = 0.0;
    double upper = 0.0;
};

// [C ||T||^-2 ||T^-1||^-2, D ||T||^2 ||T^-1||^2]; throws SingularOperator.
BoundsInterval predict_transformed_bounds(const FrameBounds& bounds, const OperatorMatrix& t);

// {(orthonormalize(T W_j), alpha_j)}; throws SingularOperator.
FusionSystem transform_system(const FusionSystem& sys, const OperatorMatrix& t, const Tolerances& tol = {});

struct TransformedBoundsCheck {
    BoundsInterval predicted;
    FrameBounds actual;
    bool contained = false;
};

// Recomputes the bounds of the transformed system and checks they sit inside
// the predicted interval, with slack eq_tol relative to the predicted upper end.
TransformedBoundsCheck check_transformed_bounds(const FusionSystem& sys, const OperatorMatrix& t,
                                                const Tolerances& tol = {});

} // namespace fusionkit
