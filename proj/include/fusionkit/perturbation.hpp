#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fusionkit/fusion_basis.hpp"

namespace fusionkit {

enum class PerturbationMethod { global_operator, subset_exhaustive };

std::string_view to_string(PerturbationMethod m) noexcept;

// Paley-Wiener-type stability certificate for a candidate family {V_j}.
//
// A report is conclusive only when the lambda it used is below 1 - eq_tol;
// then `verdict` is true and has been cross-checked with is_f_basis on V.
// lambda >= 1 proves nothing, so inconclusive reports carry no verdict.
struct PerturbationReport {
    std::optional<double> lambda_global;
    std::optional<double> lambda_subsetwise;
    bool conclusive = false;
    std::optional<bool> verdict;
    PerturbationMethod method = PerturbationMethod::global_operator;
    std::uint64_t subset_count = 0;
    // Set when a subset makes the hypothesis unsatisfiable for every finite
    // lambda (biorthogonal variant only); bit j = member j.
    std::optional<std::uint64_t> kernel_violation;
};

inline constexpr std::size_t default_perturbation_cap = 12;

// lambda = ||sum_j (I - pi_{V_j}) P_{W_j}||, the norm of the operator T with
// T g = g - pi_{V_j} g on W_j. Throws ShapeMismatch / DimMismatchPerMember,
// and InternalConsistency if a verdict disagrees with is_f_basis(V).
PerturbationReport paley_wiener_global(const FDualSystem& w, const std::vector<Subspace>& v,
                                       const Tolerances& tol = {});

// Exact sup over g_j in W_j (j in F) of ||sum (g_j - pi_{V_j} g_j)|| / ||sum g_j||.
double subset_perturbation_ratio(const FDualSystem& w, const std::vector<Subspace>& v, std::uint64_t mask);

// max over all nonempty subsets of subset_perturbation_ratio. Throws TooManyMembers.
PerturbationReport paley_wiener_subsetwise(const FDualSystem& w, const std::vector<Subspace>& v,
                                           std::size_t max_members = default_perturbation_cap,
                                           const Tolerances& tol = {});

// Per subset F: A_F = sum_F (P_j - Q_j), B_F = sum_F P_j. Requires
// null(B_F) in null(A_F), then lambda_F = ||A_F B_F^+||. Throws NotBiorthogonal
// when q fails verify_biorthogonality on v, and TooManyMembers.
PerturbationReport biorthogonal_perturbation(const FDualSystem& w, const std::vector<Subspace>& v,
                                             const BiorthogonalFamily& q,
                                             std::size_t max_members = default_perturbation_cap,
                                             const Tolerances& tol = {});

} // namespace fusionkit
