#include "fusionkit/fusion_frame.hpp"

#include <algorithm>
#include <cmath>

namespace fusionkit {

FusionSystem::FusionSystem(std::vector<Member> members) : members_(std::move(members))
{
    if (members_.empty())
        throw Error(ErrorCode::ShapeMismatch, "a fusion system needs at least one member");
    ambient_dim_ = members_.front().subspace.ambient_dim();
    for (std::size_t j = 0; j < members_.size(); ++j) {
        const auto& m = members_[j];
        if (m.subspace.ambient_dim() != ambient_dim_)
            throw Error(ErrorCode::DimensionMismatch, "member " + std::to_string(j) + " has a different ambient dimension");
        if (!(std::isfinite(m.weight) && m.weight > 0.0))
            throw Error(ErrorCode::NonpositiveWeight, "member " + std::to_string(j) + " has a nonpositive weight");
    }
}

FusionSystem FusionSystem::uniform(const std::vector<Subspace>& subspaces, double weight)
{
    std::vector<Member> members;
    members.reserve(subspaces.size());
    for (const auto& s : subspaces)
        members.push_back({s, weight});
    return FusionSystem(std::move(members));
}

std::vector<Subspace> FusionSystem::subspaces() const
{
    std::vector<Subspace> out;
    out.reserve(members_.size());
    for (const auto& m : members_)
        out.push_back(m.subspace);
    return out;
}

std::vector<double> FusionSystem::weights() const
{
    std::vector<double> out;
    for (const auto& m : members_)
        out.push_back(m.weight);
    return out;
}

std::vector<int> FusionSystem::dims() const
{
    std::vector<int> out;
    for (const auto& m : members_)
        out.push_back(m.subspace.dim());
    return out;
}

int FusionSystem::total_dim() const
{
    int sum = 0;
    for (const auto& m : members_)
        sum += m.subspace.dim();
    return sum;
}

Matrix FusionSystem::stacked() const
{
    return stack_bases(subspaces());
}

FusionSystem FusionSystem::with_subspaces(const std::vector<Subspace>& subspaces) const
{
    if (subspaces.size() != members_.size())
        throw Error(ErrorCode::ShapeMismatch, "replacement subspace count differs");
    std::vector<Member> out;
    for (std::size_t j = 0; j < subspaces.size(); ++j)
        out.push_back({subspaces[j], members_[j].weight});
    return FusionSystem(std::move(out));
}

Matrix frame_operator(const FusionSystem& sys)
{
    const int n = sys.ambient_dim();
    Matrix s = Matrix::Zero(n, n);
    for (const auto& m : sys.members())
        s += (m.weight * m.weight) * projector(m.subspace);
    return s;
}

FrameBounds frame_bounds(const FusionSystem& sys, const Tolerances& tol)
{
    const Matrix s = frame_operator(sys);
    Eigen::SelfAdjointEigenSolver<Matrix> eig(s, Eigen::EigenvaluesOnly);
    const RealVector& ev = eig.eigenvalues();  // ascending
    FrameBounds b;
    b.upper = std::max(ev(ev.size() - 1), 0.0);
    b.lower = std::max(ev(0), 0.0);
    b.is_frame = b.lower > tol.rank_tol * b.upper;
    if (!b.is_frame)
        b.lower = 0.0;
    return b;
}

FrameFlags classify(const FusionSystem& sys, const Tolerances& tol)
{
    FrameFlags f;
    f.bounds = frame_bounds(sys, tol);
    f.frame = f.bounds.is_frame;
    const double c = f.bounds.lower;
    const double d = f.bounds.upper;
    f.tight = f.frame && std::abs(c - d) <= tol.eq_tol * d;
    f.parseval = f.tight && std::abs(c - 1.0) <= tol.eq_tol;
    const auto w = sys.weights();
    const auto [lo, hi] = std::minmax_element(w.begin(), w.end());
    f.uniform_weight = (*hi - *lo) <= tol.eq_tol;
    return f;
}

bool is_complete(std::span<const Subspace> members, int ambient_dim, const Tolerances& tol)
{
    if (members.empty())
        return false;
    return numerical_rank(stack_bases(members), tol.rank_tol) == ambient_dim;
}

bool is_complete(const FusionSystem& sys, const Tolerances& tol)
{
    const auto subs = sys.subspaces();
    return is_complete(subs, sys.ambient_dim(), tol);
}

Minimality is_minimal(const FusionSystem& sys, const Tolerances& tol)
{
    Minimality out;
    const auto subs = sys.subspaces();
    if (subs.size() == 1)
        return out;
    for (std::size_t i = 0; i < subs.size(); ++i) {
        std::vector<Subspace> others;
        for (std::size_t j = 0; j < subs.size(); ++j)
            if (j != i)
                others.push_back(subs[j]);
        const Subspace rest = orthonormalize(stack_bases(others), tol);
        if (intersection_dim(subs[i], rest, tol) > 0)
            out.violations.push_back(i);
    }
    out.minimal = out.violations.empty();
    return out;
}

bool is_exact(const FusionSystem& sys, const Tolerances& tol)
{
    if (!frame_bounds(sys, tol).is_frame)
        throw Error(ErrorCode::NotAFrame, "exactness is only defined for fusion frames");
    const auto subs = sys.subspaces();
    for (std::size_t i = 0; i < subs.size(); ++i) {
        std::vector<Subspace> reduced;
        for (std::size_t j = 0; j < subs.size(); ++j)
            if (j != i)
                reduced.push_back(subs[j]);
        if (is_complete(reduced, sys.ambient_dim(), tol))
            return false;
    }
    return true;
}

DimensionAudit dimension_audit(const FusionSystem& sys)
{
    DimensionAudit a;
    a.sum_dims = sys.total_dim();
    a.ambient_dim = sys.ambient_dim();
    a.f_basis_possible = a.sum_dims == a.ambient_dim;
    return a;
}

BoundsInterval predict_transformed_bounds(const FrameBounds& bounds, const OperatorMatrix& t)
{
    t.require_invertible();
    const double cond2 = std::pow(t.norm() * t.inverse_norm(), 2);
    return {bounds.lower / cond2, bounds.upper * cond2};
}

FusionSystem transform_system(const FusionSystem& sys, const OperatorMatrix& t, const Tolerances& tol)
{
    t.require_invertible();
    if (t.matrix().rows() != sys.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "operator size differs from the ambient dimension");
    std::vector<Subspace> images;
    for (const auto& m : sys.members())
        images.push_back(orthonormalize(t.matrix() * m.subspace.basis(), tol, m.subspace.label()));
    return sys.with_subspaces(images);
}

TransformedBoundsCheck check_transformed_bounds(const FusionSystem& sys, const OperatorMatrix& t,
                                                const Tolerances& tol)
{
    TransformedBoundsCheck out;
    out.predicted = predict_transformed_bounds(frame_bounds(sys, tol), t);
    out.actual = frame_bounds(transform_system(sys, t, tol), tol);
    const double slack = tol.eq_tol * std::max(1.0, out.predicted.upper);
    out.contained = out.actual.lower >= out.predicted.lower - slack && out.actual.upper <= out.predicted.upper + slack;
    return out;
}

} // namespace fusionkit
