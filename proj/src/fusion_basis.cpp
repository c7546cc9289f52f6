#include "fusionkit/fusion_basis.hpp"

#include <algorithm>

namespace fusionkit {

namespace {

std::vector<Eigen::Index> block_offsets(const FusionSystem& sys)
{
    std::vector<Eigen::Index> offsets;
    Eigen::Index off = 0;
    for (const auto& m : sys.members()) {
        offsets.push_back(off);
        off += m.subspace.dim();
    }
    return offsets;
}

std::vector<Matrix> block_projectors(const FusionSystem& sys, const Matrix& e_inv,
                                     const std::vector<Eigen::Index>& offsets)
{
    std::vector<Matrix> p;
    p.reserve(sys.size());
    for (std::size_t j = 0; j < sys.size(); ++j) {
        const auto& basis = sys[j].subspace.basis();
        p.push_back(basis * e_inv.middleRows(offsets[j], basis.cols()));
    }
    return p;
}

} // namespace

std::string_view to_string(FBasisReason r) noexcept
{
    switch (r) {
    case FBasisReason::ok: return "ok";
    case FBasisReason::dim_mismatch: return "dim_mismatch";
    case FBasisReason::singular_stack: return "singular_stack";
    }
    return "ok";
}

FBasisVerdict is_f_basis(const FusionSystem& sys, const Tolerances& tol)
{
    if (sys.total_dim() != sys.ambient_dim())
        return {false, FBasisReason::dim_mismatch};
    const RealVector s = singular_values(sys.stacked());
    if (!(s(s.size() - 1) > tol.rank_tol * s(0)))
        return {false, FBasisReason::singular_stack};
    return {true, FBasisReason::ok};
}

double FDualResiduals::max() const
{
    return std::max({sum_identity, products, range});
}

FDualResiduals FDualSystem::residuals() const
{
    FDualResiduals r;
    const Eigen::Index n = stacked_.rows();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& p : projectors_)
        sum += p;
    r.sum_identity = operator_norm(sum - Matrix::Identity(n, n));
    for (std::size_t i = 0; i < projectors_.size(); ++i)
        for (std::size_t j = 0; j < projectors_.size(); ++j) {
            Matrix prod = projectors_[i] * projectors_[j];
            if (i == j)
                prod -= projectors_[j];
            r.products = std::max(r.products, operator_norm(prod));
        }
    const auto expected = block_projectors(system_, stacked_inverse_, offsets_);
    for (std::size_t j = 0; j < projectors_.size(); ++j)
        r.range = std::max(r.range, operator_norm(projectors_[j] - expected[j]));
    return r;
}

void FDualSystem::check_invariants(const Tolerances& tol) const
{
    const auto r = residuals();
    if (r.max() > tol.eq_tol)
        throw Error(ErrorCode::InternalConsistency,
                    "f-dual invariants violated (sum " + std::to_string(r.sum_identity) + ", products " +
                        std::to_string(r.products) + ", range " + std::to_string(r.range) + ")");
}

FDualSystem f_dual(const FusionSystem& sys, const Tolerances& tol)
{
    const auto v = is_f_basis(sys, tol);
    if (!v.verdict)
        throw Error(ErrorCode::NotFBasis, std::string("system is not an f-basis (") + std::string(to_string(v.reason)) + ")");
    Matrix e = sys.stacked();
    Matrix e_inv = e.partialPivLu().inverse();
    auto offsets = block_offsets(sys);
    auto p = block_projectors(sys, e_inv, offsets);
    return FDualSystem(sys, std::move(e), std::move(e_inv), std::move(p), std::move(offsets));
}

FDualSystem assemble_fdual(FusionSystem sys, std::vector<Matrix> projectors, const Tolerances& tol)
{
    const auto v = is_f_basis(sys, tol);
    if (!v.verdict)
        throw Error(ErrorCode::NotFBasis, std::string("system is not an f-basis (") + std::string(to_string(v.reason)) + ")");
    if (projectors.size() != sys.size())
        throw Error(ErrorCode::ShapeMismatch, "projector count differs from member count");
    for (const auto& p : projectors)
        if (p.rows() != sys.ambient_dim() || p.cols() != sys.ambient_dim())
            throw Error(ErrorCode::ShapeMismatch, "projector has the wrong size");
    Matrix e = sys.stacked();
    Matrix e_inv = e.partialPivLu().inverse();
    auto offsets = block_offsets(sys);
    FDualSystem fd(std::move(sys), std::move(e), std::move(e_inv), std::move(projectors), std::move(offsets));
    fd.check_invariants(tol);
    return fd;
}

double partial_sum_norm(const FDualSystem& fd, std::uint64_t mask)
{
    const Eigen::Index n = fd.stacked().rows();
    Matrix sum = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < fd.size(); ++j)
        if (mask & (std::uint64_t{1} << j))
            sum += fd.projectors()[j];
    return operator_norm(sum);
}

BasisConstant basis_constant(const FDualSystem& fd, std::size_t max_members)
{
    const std::size_t m = fd.size();
    if (m > max_members || m >= 63)
        throw Error(ErrorCode::TooManyMembers, std::to_string(m) + " members exceed the exhaustive cap of " +
                                                   std::to_string(max_members));
    BasisConstant out;
    out.method = BasisConstantMethod::exhaustive;
    out.value = 0.0;
    const std::uint64_t end = std::uint64_t{1} << m;
    for (std::uint64_t mask = 1; mask < end; ++mask) {
        out.value = std::max(out.value, partial_sum_norm(fd, mask));
        ++out.subset_count;
    }
    return out;
}

BesselHilbert bessel_hilbert_constants(const FDualSystem& fd)
{
    const Matrix& e = fd.stacked();
    if (e.rows() != e.cols() || e.rows() == 0)
        throw Error(ErrorCode::NotFBasis, "stacked matrix is not square");
    const RealVector s = singular_values(e);
    return {s(s.size() - 1) * s(s.size() - 1), s(0) * s(0)};
}

FDualSystem dual_system(const FDualSystem& fd, const Tolerances& tol)
{
    std::vector<Subspace> subs;
    std::vector<Matrix> proj;
    for (std::size_t j = 0; j < fd.size(); ++j) {
        const Matrix pt = fd.projectors()[j].adjoint();
        const auto& w = fd.system()[j].subspace;
        subs.push_back(orthonormalize(pt * w.basis(), tol, w.label()));
        proj.push_back(pt);
    }
    return assemble_fdual(fd.system().with_subspaces(subs), std::move(proj), tol);
}

BiorthogonalFamily biorthogonal_family(const FusionSystem& sys, const Tolerances& tol)
{
    const auto minimal = is_minimal(sys, tol);
    if (!minimal.minimal)
        throw Error(ErrorCode::NotMinimal, "system is not minimal; no f-biorthogonal family exists");
    if (is_complete(sys, tol))
        return {f_dual(sys, tol).projectors(), true};

    // Express everything in an orthonormal basis Z of H0 = span of all members.
    const Matrix z = orthonormalize(sys.stacked(), tol).basis();
    const Matrix local = z.adjoint() * sys.stacked();
    const Matrix local_inv = local.partialPivLu().inverse();
    BiorthogonalFamily fam;
    Eigen::Index off = 0;
    for (const auto& m : sys.members()) {
        const Eigen::Index k = m.subspace.dim();
        const Matrix p_local = local.middleCols(off, k) * local_inv.middleRows(off, k);
        fam.operators.push_back(z * p_local * z.adjoint());
        off += k;
    }
    fam.unique = false;
    return fam;
}

double biorthogonality_residual(std::span<const Subspace> members, const BiorthogonalFamily& fam)
{
    if (fam.operators.size() != members.size())
        throw Error(ErrorCode::ShapeMismatch, "operator count differs from member count");
    double r = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i) {
        const Matrix& q = fam.operators[i];
        const int n = members[i].ambient_dim();
        if (q.rows() != n || q.cols() != n)
            throw Error(ErrorCode::ShapeMismatch, "operator " + std::to_string(i) + " has the wrong size");
        for (std::size_t j = 0; j < members.size(); ++j) {
            Matrix d = q * members[j].basis();
            if (i == j)
                d -= members[j].basis();
            r = std::max(r, operator_norm(d));
        }
        const Matrix outside = Matrix::Identity(n, n) - projector(members[i]);
        r = std::max(r, operator_norm(outside * q));
    }
    return r;
}

bool verify_biorthogonality(const FusionSystem& sys, const BiorthogonalFamily& fam, const Tolerances& tol)
{
    const auto subs = sys.subspaces();
    return biorthogonality_residual(subs, fam) <= tol.eq_tol;
}

} // namespace fusionkit
