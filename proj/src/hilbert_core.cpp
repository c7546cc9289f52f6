#include "fusionkit/hilbert_core.hpp"

#include <cmath>

namespace fusionkit {

std::string_view to_string(ErrorCode code) noexcept
{
    switch (code) {
    case ErrorCode::ZeroSubspace: return "ZeroSubspace";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ShapeMismatch: return "ShapeMismatch";
    case ErrorCode::NonpositiveWeight: return "NonpositiveWeight";
    case ErrorCode::InvalidTolerance: return "InvalidTolerance";
    case ErrorCode::NotAFrame: return "NotAFrame";
    case ErrorCode::NotFBasis: return "NotFBasis";
    case ErrorCode::TooManyMembers: return "TooManyMembers";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotOrthonormalSystem: return "NotOrthonormalSystem";
    case ErrorCode::NotRiesz: return "NotRiesz";
    case ErrorCode::SingularOperator: return "SingularOperator";
    case ErrorCode::DimMismatchPerMember: return "DimMismatchPerMember";
    case ErrorCode::NotBiorthogonal: return "NotBiorthogonal";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::MalformedFile: return "MalformedFile";
    case ErrorCode::InternalConsistency: return "InternalConsistency";
    }
    return "Unknown";
}

void Tolerances::validate() const
{
    for (double t : {ortho_tol, rank_tol, eq_tol}) {
        if (!(std::isfinite(t) && t > 0.0))
            throw Error(ErrorCode::InvalidTolerance, "tolerances must be finite and strictly positive");
    }
}

RealVector singular_values(const Matrix& a)
{
    if (a.size() == 0)
        return RealVector();
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues();
}

int numerical_rank(const Matrix& a, double rank_tol)
{
    const RealVector s = singular_values(a);
    if (s.size() == 0 || s(0) == 0.0)
        return 0;
    const double cutoff = rank_tol * s(0);
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > cutoff)
            ++rank;
    return rank;
}

double operator_norm(const Matrix& a)
{
    const RealVector s = singular_values(a);
    return s.size() == 0 ? 0.0 : s(0);
}

double min_singular_value(const Matrix& a)
{
    const RealVector s = singular_values(a);
    return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

double orthonormality_defect(const Matrix& a)
{
    const Matrix gram = a.adjoint() * a;
    return operator_norm(gram - Matrix::Identity(gram.rows(), gram.cols()));
}

Subspace Subspace::from_orthonormal(Matrix basis, const Tolerances& tol, std::string label)
{
    if (basis.rows() < 1 || basis.cols() < 1)
        throw Error(ErrorCode::ZeroSubspace, "subspace basis must have at least one row and column");
    if (basis.cols() > basis.rows())
        throw Error(ErrorCode::ShapeMismatch, "more basis columns than the ambient dimension");
    if (orthonormality_defect(basis) > tol.ortho_tol)
        throw Error(ErrorCode::ShapeMismatch, "basis columns are not orthonormal");
    return Subspace(std::move(basis), std::move(label));
}

Subspace Subspace::with_label(std::string label) const
{
    return Subspace(basis_, std::move(label));
}

Subspace orthonormalize(const Matrix& raw, const Tolerances& tol, std::string label)
{
    if (raw.rows() < 1 || raw.cols() < 1)
        throw Error(ErrorCode::ZeroSubspace, "empty spanning set");
    Eigen::JacobiSVD<Matrix> svd(raw, Eigen::ComputeThinU);
    const RealVector& s = svd.singularValues();
    // Absolute floor keeps an all-zero (or denormal) input from counting as rank 1.
    if (s(0) <= tol.rank_tol)
        throw Error(ErrorCode::ZeroSubspace, "all columns are numerically null");
    int rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i)
        if (s(i) > tol.rank_tol * s(0))
            ++rank;
    Matrix basis = svd.matrixU().leftCols(rank);
    // Fix each column's phase so its largest entry is real and positive; the
    // SVD leaves it arbitrary, and a fixed choice keeps output reproducible.
    for (Eigen::Index c = 0; c < basis.cols(); ++c) {
        Eigen::Index at = 0;
        basis.col(c).cwiseAbs().maxCoeff(&at);
        const Complex z = basis(at, c);
        basis.col(c) *= std::conj(z) / std::abs(z);
        basis(at, c) = Complex(basis(at, c).real(), 0.0);
    }
    return Subspace::from_orthonormal(std::move(basis), tol, std::move(label));
}

Matrix projector(const Subspace& w)
{
    return w.basis() * w.basis().adjoint();
}

int intersection_dim(const Subspace& w, const Subspace& v, const Tolerances& tol)
{
    if (w.ambient_dim() != v.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
    Matrix joined(w.ambient_dim(), w.dim() + v.dim());
    joined << w.basis(), v.basis();
    return w.dim() + v.dim() - numerical_rank(joined, tol.rank_tol);
}

double projector_distance(const Subspace& w, const Subspace& v)
{
    if (w.ambient_dim() != v.ambient_dim())
        throw Error(ErrorCode::DimensionMismatch, "subspaces live in different ambient spaces");
    return operator_norm(projector(w) - projector(v));
}

Matrix stack_bases(std::span<const Subspace> members)
{
    if (members.empty())
        return Matrix();
    const Eigen::Index n = members.front().ambient_dim();
    Eigen::Index cols = 0;
    for (const auto& m : members) {
        if (m.ambient_dim() != n)
            throw Error(ErrorCode::DimensionMismatch, "members live in different ambient spaces");
        cols += m.dim();
    }
    Matrix e(n, cols);
    Eigen::Index offset = 0;
    for (const auto& m : members) {
        e.middleCols(offset, m.dim()) = m.basis();
        offset += m.dim();
    }
    return e;
}

std::string_view to_string(OperatorTag tag) noexcept
{
    switch (tag) {
    case OperatorTag::general: return "general";
    case OperatorTag::invertible_verified: return "invertible-verified";
    case OperatorTag::unitary_verified: return "unitary-verified";
    }
    return "general";
}

OperatorMatrix OperatorMatrix::classify(Matrix m, const Tolerances& tol)
{
    if (m.rows() != m.cols() || m.rows() == 0)
        throw Error(ErrorCode::ShapeMismatch, "operator must be a non-empty square matrix");
    const RealVector s = singular_values(m);
    OperatorTag tag = OperatorTag::general;
    if (s(0) > 0.0 && s(s.size() - 1) > tol.rank_tol * s(0)) {
        tag = OperatorTag::invertible_verified;
        if (orthonormality_defect(m) <= tol.eq_tol)
            tag = OperatorTag::unitary_verified;
    }
    return OperatorMatrix(std::move(m), tag);
}

void OperatorMatrix::require_invertible() const
{
    if (!invertible())
        throw Error(ErrorCode::SingularOperator, "operator is not numerically invertible");
}

double OperatorMatrix::inverse_norm() const
{
    require_invertible();
    return 1.0 / min_singular_value(matrix_);
}

Matrix OperatorMatrix::inverse() const
{
    require_invertible();
    return matrix_.partialPivLu().inverse();
}

void check_conforms(const CoefficientBundle& b, std::span<const Subspace> members)
{
    if (b.parts.size() != members.size())
        throw Error(ErrorCode::ShapeMismatch, "bundle part count differs from member count");
    for (std::size_t j = 0; j < members.size(); ++j)
        if (b.parts[j].size() != members[j].dim())
            throw Error(ErrorCode::ShapeMismatch, "bundle part " + std::to_string(j) + " has the wrong length");
}

std::vector<Vector> components(const CoefficientBundle& b, std::span<const Subspace> members)
{
    check_conforms(b, members);
    std::vector<Vector> out;
    out.reserve(members.size());
    for (std::size_t j = 0; j < members.size(); ++j)
        out.push_back(members[j].basis() * b.parts[j]);
    return out;
}

Vector synthesize(const CoefficientBundle& b, std::span<const Subspace> members)
{
    check_conforms(b, members);
    Vector sum = Vector::Zero(members.empty() ? 0 : members.front().ambient_dim());
    for (std::size_t j = 0; j < members.size(); ++j)
        sum += members[j].basis() * b.parts[j];
    return sum;
}

double bundle_norm(const CoefficientBundle& b)
{
    double sq = 0.0;
    for (const auto& p : b.parts)
        sq += p.squaredNorm();
    return std::sqrt(sq);
}

Complex bundle_inner(const CoefficientBundle& f, const CoefficientBundle& g)
{
    if (f.parts.size() != g.parts.size())
        throw Error(ErrorCode::ShapeMismatch, "bundles have different part counts");
    Complex sum{0.0, 0.0};
    for (std::size_t j = 0; j < f.parts.size(); ++j) {
        if (f.parts[j].size() != g.parts[j].size())
            throw Error(ErrorCode::ShapeMismatch, "bundle parts differ in length");
        sum += g.parts[j].dot(f.parts[j]);
    }
    return sum;
}

} // namespace fusionkit
