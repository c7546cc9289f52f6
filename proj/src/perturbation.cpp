#include "fusionkit/perturbation.hpp"

#include <algorithm>

namespace fusionkit {

namespace {

void check_shapes(const FDualSystem& w, const std::vector<Subspace>& v, bool require_equal_dims)
{
    const auto& sys = w.system();
    if (v.size() != sys.size())
        throw Error(ErrorCode::ShapeMismatch, "candidate family has a different member count");
    for (std::size_t j = 0; j < v.size(); ++j) {
        if (v[j].ambient_dim() != sys.ambient_dim())
            throw Error(ErrorCode::ShapeMismatch, "candidate member " + std::to_string(j) + " has a different ambient dimension");
        if (require_equal_dims && v[j].dim() != sys[j].subspace.dim())
            throw Error(ErrorCode::DimMismatchPerMember,
                        "dim V_" + std::to_string(j) + " differs from dim W_" + std::to_string(j));
    }
}

void check_cap(std::size_t m, std::size_t max_members)
{
    if (m > max_members || m >= 63)
        throw Error(ErrorCode::TooManyMembers, std::to_string(m) + " members exceed the subset cap of " +
                                                   std::to_string(max_members));
}

// Applies the lambda < 1 rule and cross-checks the verdict.
void conclude(PerturbationReport& r, double lambda, const FDualSystem& w, const std::vector<Subspace>& v,
              const Tolerances& tol)
{
    r.conclusive = lambda < 1.0 - tol.eq_tol;
    if (!r.conclusive)
        return;
    r.verdict = true;
    const FusionSystem candidate = w.system().with_subspaces(v);
    if (!is_f_basis(candidate, tol).verdict)
        throw Error(ErrorCode::InternalConsistency,
                    "certificate concluded an f-basis but the direct test disagrees (lambda = " + std::to_string(lambda) + ")");
}

// Hermitian inverse square root of a positive definite Gram matrix.
Matrix inverse_sqrt(const Matrix& gram)
{
    Eigen::SelfAdjointEigenSolver<Matrix> eig(gram);
    const RealVector d = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().cwiseInverse();
    return eig.eigenvectors() * d.asDiagonal() * eig.eigenvectors().adjoint();
}

} // namespace

std::string_view to_string(PerturbationMethod m) noexcept
{
    return m == PerturbationMethod::global_operator ? "global_operator" : "subset_exhaustive";
}

PerturbationReport paley_wiener_global(const FDualSystem& w, const std::vector<Subspace>& v, const Tolerances& tol)
{
    check_shapes(w, v, true);
    const int n = w.system().ambient_dim();
    Matrix t = Matrix::Zero(n, n);
    for (std::size_t j = 0; j < v.size(); ++j)
        t += (Matrix::Identity(n, n) - projector(v[j])) * w.projectors()[j];

    PerturbationReport r;
    r.method = PerturbationMethod::global_operator;
    r.lambda_global = operator_norm(t);
    conclude(r, *r.lambda_global, w, v, tol);
    return r;
}

double subset_perturbation_ratio(const FDualSystem& w, const std::vector<Subspace>& v, std::uint64_t mask)
{
    check_shapes(w, v, true);
    const auto& sys = w.system();
    const int n = sys.ambient_dim();
    int cols = 0;
    for (std::size_t j = 0; j < sys.size(); ++j)
        if (mask & (std::uint64_t{1} << j))
            cols += sys[j].subspace.dim();
    if (cols == 0)
        throw Error(ErrorCode::BadParams, "empty subset");

    Matrix c(n, cols);
    Matrix d(n, cols);
    int off = 0;
    for (std::size_t j = 0; j < sys.size(); ++j) {
        if (!(mask & (std::uint64_t{1} << j)))
            continue;
        const Matrix& b = sys[j].subspace.basis();
        d.middleCols(off, b.cols()) = b;
        c.middleCols(off, b.cols()) = b - projector(v[j]) * b;
        off += static_cast<int>(b.cols());
    }
    return operator_norm(c * inverse_sqrt(d.adjoint() * d));
}

PerturbationReport paley_wiener_subsetwise(const FDualSystem& w, const std::vector<Subspace>& v,
                                           std::size_t max_members, const Tolerances& tol)
{
    check_shapes(w, v, true);
    check_cap(v.size(), max_members);
    PerturbationReport r;
    r.method = PerturbationMethod::subset_exhaustive;
    double lambda = 0.0;
    const std::uint64_t end = std::uint64_t{1} << v.size();
    for (std::uint64_t mask = 1; mask < end; ++mask) {
        lambda = std::max(lambda, subset_perturbation_ratio(w, v, mask));
        ++r.subset_count;
    }
    r.lambda_subsetwise = lambda;
    conclude(r, lambda, w, v, tol);
    return r;
}

PerturbationReport biorthogonal_perturbation(const FDualSystem& w, const std::vector<Subspace>& v,
                                             const BiorthogonalFamily& q, std::size_t max_members,
                                             const Tolerances& tol)
{
    check_shapes(w, v, false);
    check_cap(v.size(), max_members);
    if (biorthogonality_residual(v, q) > tol.eq_tol)
        throw Error(ErrorCode::NotBiorthogonal, "Q is not an f-biorthogonal family of V");

    const int n = w.system().ambient_dim();
    PerturbationReport r;
    r.method = PerturbationMethod::subset_exhaustive;
    double lambda = 0.0;
    const std::uint64_t end = std::uint64_t{1} << v.size();
    for (std::uint64_t mask = 1; mask < end; ++mask) {
        Matrix a = Matrix::Zero(n, n);
        Matrix b = Matrix::Zero(n, n);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (mask & (std::uint64_t{1} << j)) {
                a += w.projectors()[j] - q.operators[j];
                b += w.projectors()[j];
            }
        ++r.subset_count;

        Eigen::JacobiSVD<Matrix> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
        const RealVector& s = svd.singularValues();
        const double cutoff = tol.rank_tol * std::max(s(0), 1.0);
        int rank = 0;
        while (rank < s.size() && s(rank) > cutoff)
            ++rank;

        // null(B_F) is spanned by the trailing right singular vectors.
        if (rank < n) {
            const Matrix null_basis = svd.matrixV().rightCols(n - rank);
            if (operator_norm(a * null_basis) > tol.eq_tol * std::max(1.0, operator_norm(a))) {
                r.kernel_violation = mask;
                r.conclusive = false;
                return r;
            }
        }
        Matrix b_pinv = Matrix::Zero(n, n);
        for (int i = 0; i < rank; ++i)
            b_pinv += (svd.matrixV().col(i) / s(i)) * svd.matrixU().col(i).adjoint();
        lambda = std::max(lambda, operator_norm(a * b_pinv));
    }
    r.lambda_subsetwise = lambda;
    conclude(r, lambda, w, v, tol);
    return r;
}

} // namespace fusionkit
