#include "fusionkit/riesz.hpp"

#include <algorithm>
#include <cmath>

#include "fusionkit/rng.hpp"

namespace fusionkit {

namespace {

void require_orthonormal_system(const FusionSystem& sys, const Tolerances& tol)
{
    if (orthonormal_classify(sys, tol) == OrthonormalClass::none)
        throw Error(ErrorCode::NotOrthonormalSystem, "members are not mutually orthogonal");
}

void require_riesz(const RieszCertificate& cert)
{
    if (!cert.is_riesz || !cert.T || !cert.gram)
        throw Error(ErrorCode::NotRiesz, "certificate does not certify a Riesz f-basis");
}

} // namespace

std::string_view to_string(OrthonormalClass c) noexcept
{
    switch (c) {
    case OrthonormalClass::none: return "none";
    case OrthonormalClass::system: return "system";
    case OrthonormalClass::basis: return "basis";
    }
    return "none";
}

double cross_gram_defect(const FusionSystem& sys)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i)
        for (std::size_t j = i + 1; j < sys.size(); ++j)
            worst = std::max(worst, operator_norm(sys[i].subspace.basis().adjoint() * sys[j].subspace.basis()));
    return worst;
}

OrthonormalClass orthonormal_classify(const FusionSystem& sys, const Tolerances& tol)
{
    if (cross_gram_defect(sys) > tol.eq_tol)
        return OrthonormalClass::none;
    return is_complete(sys, tol) ? OrthonormalClass::basis : OrthonormalClass::system;
}

double pythagoras_check(const FusionSystem& sys, const CoefficientBundle& bundle, const Tolerances& tol)
{
    require_orthonormal_system(sys, tol);
    const auto subs = sys.subspaces();
    const Vector sum = synthesize(bundle, subs);
    const double norm = bundle_norm(bundle);
    return std::abs(sum.squaredNorm() - norm * norm);
}

BesselCheck bessel_inequality_check(const FusionSystem& sys, const Vector& f, const Tolerances& tol,
                                    std::uint64_t seed, int trials)
{
    require_orthonormal_system(sys, tol);
    if (f.size() != sys.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "vector length differs from the ambient dimension");

    BesselCheck out;
    Vector approx = Vector::Zero(f.size());
    double captured = 0.0;
    for (const auto& m : sys.members()) {
        const Vector coeffs = m.subspace.basis().adjoint() * f;
        captured += coeffs.squaredNorm();
        approx += m.subspace.basis() * coeffs;
    }
    out.margin = f.squaredNorm() - captured;

    const double best = (f - approx).norm();
    Rng rng(seed);
    const auto subs = sys.subspaces();
    out.best_approx_gap = -best;
    for (int t = 0; t < trials; ++t) {
        CoefficientBundle b;
        for (const auto& s : subs)
            b.parts.push_back(rng.complex_vector(s.dim()) * f.norm());
        out.best_approx_gap = std::max(out.best_approx_gap, best - (f - synthesize(b, subs)).norm());
    }
    out.best_approximation = out.best_approx_gap <= tol.eq_tol * std::max(1.0, f.norm());
    return out;
}

RieszCertificate riesz_analyze(const FusionSystem& sys, const Tolerances& tol)
{
    RieszCertificate cert;
    if (!is_f_basis(sys, tol).verdict)
        return cert;

    const Matrix e = sys.stacked();
    const RealVector s = singular_values(e);
    const double smin = s(s.size() - 1);
    cert.is_riesz = true;
    cert.A = smin * smin;
    cert.B = s(0) * s(0);
    cert.norm_T = s(0);
    cert.norm_T_inverse = 1.0 / smin;
    cert.T = OperatorMatrix::classify(e, tol);

    const int n = sys.ambient_dim();
    Eigen::Index off = 0;
    for (const auto& m : sys.members()) {
        Matrix block = Matrix::Zero(n, m.subspace.dim());
        block.middleRows(off, m.subspace.dim()).setIdentity();
        cert.reference_basis.push_back(Subspace::from_orthonormal(std::move(block), tol));
        off += m.subspace.dim();
    }
    const Matrix e_inv = cert.T->inverse();
    cert.gram = e_inv.adjoint() * e_inv;
    return cert;
}

double gram_orthonormality_check(const RieszCertificate& cert, const FusionSystem& sys)
{
    require_riesz(cert);
    if (cert.reference_basis.size() != sys.size())
        throw Error(ErrorCode::ShapeMismatch, "certificate belongs to a different system");
    const Matrix& g = *cert.gram;
    const Matrix& t = cert.T->matrix();
    const Matrix t_inv = cert.T->inverse();
    double r = 0.0;
    for (std::size_t i = 0; i < sys.size(); ++i) {
        for (std::size_t j = 0; j < sys.size(); ++j)
            if (i != j)
                r = std::max(r, operator_norm(sys[i].subspace.basis().adjoint() * g * sys[j].subspace.basis()));
        const Matrix p = t * projector(cert.reference_basis[i]) * t_inv;
        r = std::max(r, operator_norm(p.adjoint() * g - g * p));
    }
    return r;
}

double ResolutionFamily::sum_residual() const
{
    if (operators.empty())
        return 0.0;
    const Eigen::Index n = operators.front().rows();
    Matrix sum = Matrix::Zero(n, n);
    for (const auto& x : operators)
        sum += x;
    return operator_norm(sum - Matrix::Identity(n, n));
}

double ResolutionFamily::idempotency_residual() const
{
    double r = 0.0;
    for (const auto& x : operators)
        r = std::max(r, operator_norm(x * x - x));
    return r;
}

Resolutions resolutions_of_identity(const RieszCertificate& cert)
{
    require_riesz(cert);
    const Matrix& t = cert.T->matrix();
    const Matrix t_inv = cert.T->inverse();
    const Matrix t_adj = t.adjoint();
    const Matrix t_adj_inv = t_inv.adjoint();
    Resolutions out{{ResolutionKind::P, {}}, {ResolutionKind::S, {}}, {ResolutionKind::U, {}}, {ResolutionKind::R, {}}};
    for (const auto& v : cert.reference_basis) {
        const Matrix pi = projector(v);
        out.P.operators.push_back(t * pi * t_inv);
        out.S.operators.push_back(t_inv * pi * t);
        out.U.operators.push_back(t_adj * pi * t_adj_inv);
        out.R.operators.push_back(t_adj_inv * pi * t_adj);
    }
    return out;
}

FDualSystem transform_f_basis(const FDualSystem& fd, const OperatorMatrix& t, const Tolerances& tol)
{
    t.require_invertible();
    const auto& sys = fd.system();
    if (t.matrix().rows() != sys.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "operator size differs from the ambient dimension");
    const Matrix& tm = t.matrix();
    const Matrix t_inv = t.inverse();
    std::vector<Subspace> images;
    std::vector<Matrix> proj;
    for (std::size_t j = 0; j < fd.size(); ++j) {
        images.push_back(orthonormalize(tm * sys[j].subspace.basis(), tol, sys[j].subspace.label()));
        proj.push_back(tm * fd.projectors()[j] * t_inv);
    }
    return assemble_fdual(sys.with_subspaces(images), std::move(proj), tol);
}

} // namespace fusionkit
