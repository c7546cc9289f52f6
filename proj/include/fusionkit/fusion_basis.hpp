#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "fusionkit/fusion_frame.hpp"

namespace fusionkit {

enum class FBasisReason { ok, dim_mismatch, singular_stack };

std::string_view to_string(FBasisReason r) noexcept;

struct FBasisVerdict {
    bool verdict = false;
    FBasisReason reason = FBasisReason::dim_mismatch;
};

// Sum of member dimensions equals n and the square stacked matrix E has
// sigma_min > rank_tol * sigma_max.
FBasisVerdict is_f_basis(const FusionSystem& sys, const Tolerances& tol = {});

struct FDualResiduals {
    double sum_identity = 0.0;  // ||sum P_j - I||
    double products = 0.0;      // max_ij ||P_i P_j - delta_ij P_j||
    double range = 0.0;         // max_j ||P_j - basis_j (rows_j of E^-1)||

    double max() const;
};

class FDualSystem;

// P_j = basis_j * (row block j of E^-1). Throws NotFBasis.
FDualSystem f_dual(const FusionSystem& sys, const Tolerances& tol = {});

// Pairs a verified f-basis with externally built projectors and checks every
// FDualSystem invariant against them (throws InternalConsistency otherwise).
FDualSystem assemble_fdual(FusionSystem sys, std::vector<Matrix> projectors, const Tolerances& tol = {});

// An f-basis together with its f-dual sequence of oblique projections.
//
// P_j extracts the W_j component of the unique expansion f = sum_j P_j f.
class FDualSystem {
public:
    const FusionSystem& system() const noexcept { return system_; }
    const Matrix& stacked() const noexcept { return stacked_; }
    const Matrix& stacked_inverse() const noexcept { return stacked_inverse_; }
    const std::vector<Matrix>& projectors() const noexcept { return projectors_; }
    std::size_t size() const noexcept { return projectors_.size(); }

    // Offset of member j's column block inside E.
    Eigen::Index block_offset(std::size_t j) const { return offsets_.at(j); }

    FDualResiduals residuals() const;

    // Throws InternalConsistency if any residual exceeds eq_tol.
    void check_invariants(const Tolerances& tol) const;

private:
    friend FDualSystem f_dual(const FusionSystem&, const Tolerances&);
    friend FDualSystem assemble_fdual(FusionSystem, std::vector<Matrix>, const Tolerances&);

    FDualSystem(FusionSystem sys, Matrix e, Matrix e_inv, std::vector<Matrix> p, std::vector<Eigen::Index> offsets)
        : system_(std::move(sys)), stacked_(std::move(e)), stacked_inverse_(std::move(e_inv)),
          projectors_(std::move(p)), offsets_(std::move(offsets))
    {
    }

    FusionSystem system_;
    Matrix stacked_;
    Matrix stacked_inverse_;
    std::vector<Matrix> projectors_;
    std::vector<Eigen::Index> offsets_;
};

enum class BasisConstantMethod { exhaustive, not_computed };

struct BasisConstant {
    double value = 1.0;  // M
    BasisConstantMethod method = BasisConstantMethod::not_computed;
    std::uint64_t subset_count = 0;
};

inline constexpr std::size_t default_basis_constant_cap = 16;

// M = max over nonempty subsets F of ||sum_{j in F} P_j||, by exhaustive
// enumeration. Throws TooManyMembers above max_members.
BasisConstant basis_constant(const FDualSystem& fd, std::size_t max_members = default_basis_constant_cap);

// ||sum_{j in F} P_j|| for the subset encoded in `mask` (bit j = member j).
double partial_sum_norm(const FDualSystem& fd, std::uint64_t mask);

struct BesselHilbert {
    double A = 0.0;  // sigma_min(E)^2
    double B = 0.0;  // sigma_max(E)^2
};

// Optimal constants in A sum ||g_j||^2 <= ||sum g_j||^2 <= B sum ||g_j||^2.
BesselHilbert bessel_hilbert_constants(const FDualSystem& fd);

// Subspaces P_j^H(W_j) with projectors P_j^H.
FDualSystem dual_system(const FDualSystem& fd, const Tolerances& tol = {});

struct BiorthogonalFamily {
    std::vector<Matrix> operators;
    bool unique = false;
};

// The f-dual for complete minimal systems; otherwise Q_j = P'_j pi_{H0} with
// P'_j the f-dual inside H0 = span of all members. Throws NotMinimal.
BiorthogonalFamily biorthogonal_family(const FusionSystem& sys, const Tolerances& tol = {});

// max over i, j of ||Q_i basis_j - delta_ij basis_j|| and of
// ||(I - pi_{W_j}) Q_j|| (each Q_j must map into W_j).
double biorthogonality_residual(std::span<const Subspace> members, const BiorthogonalFamily& fam);

// Throws ShapeMismatch on nonconforming sizes.
bool verify_biorthogonality(const FusionSystem& sys, const BiorthogonalFamily& fam, const Tolerances& tol = {});

} // namespace fusionkit
