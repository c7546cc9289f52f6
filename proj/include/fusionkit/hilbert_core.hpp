#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "fusionkit/error.hpp"

namespace fusionkit {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Relative tolerances. rank_tol is measured against the largest singular
// value of whatever matrix is being ranked.
struct Tolerances {
    double ortho_tol = 1e-10;
    double rank_tol = 1e-10;
    double eq_tol = 1e-8;

    // Throws InvalidTolerance unless all three are finite and > 0.
    void validate() const;
};

// Singular values in decreasing order.
RealVector singular_values(const Matrix& a);

// Number of singular values above rank_tol * sigma_max. The zero matrix has rank 0.
int numerical_rank(const Matrix& a, double rank_tol);

// Largest singular value; 0 for empty matrices.
double operator_norm(const Matrix& a);

// Smallest singular value of a square matrix.
double min_singular_value(const Matrix& a);

// A subspace of C^n held as an n x k matrix with orthonormal columns.
//
// Instances are immutable; construct them with orthonormalize() or
// from_orthonormal(), which validates the column orthonormality.
class Subspace {
public:
    static Subspace from_orthonormal(Matrix basis, const Tolerances& tol = {}, std::string label = {});

    int ambient_dim() const noexcept { return static_cast<int>(basis_.rows()); }
    int dim() const noexcept { return static_cast<int>(basis_.cols()); }
    const Matrix& basis() const noexcept { return basis_; }
    const std::string& label() const noexcept { return label_; }

    Subspace with_label(std::string label) const;

private:
    Subspace(Matrix basis, std::string label) : basis_(std::move(basis)), label_(std::move(label)) {}

    Matrix basis_;
    std::string label_;
};

// Orthonormal basis of the column space of raw, taken from the left singular
// vectors whose singular values clear rank_tol. Throws ZeroSubspace when raw
// is numerically null.
Subspace orthonormalize(const Matrix& raw, const Tolerances& tol = {}, std::string label = {});

// Orthogonal projector basis * basis^H.
Matrix projector(const Subspace& w);

// dim(W cap V) = k_W + k_V - rank([W | V]).
int intersection_dim(const Subspace& w, const Subspace& v, const Tolerances& tol = {});

// Distance between two subspaces measured as ||pi_W - pi_V||.
double projector_distance(const Subspace& w, const Subspace& v);

// Horizontal concatenation of the member bases, in order.
Matrix stack_bases(std::span<const Subspace> members);

enum class OperatorTag { general, invertible_verified, unitary_verified };

std::string_view to_string(OperatorTag tag) noexcept;

class OperatorMatrix {
public:
    // Square matrix tagged by what could be verified about it.
    static OperatorMatrix classify(Matrix m, const Tolerances& tol = {});

    const Matrix& matrix() const noexcept { return matrix_; }
    OperatorTag tag() const noexcept { return tag_; }
    bool invertible() const noexcept { return tag_ != OperatorTag::general; }

    // Throws SingularOperator for the general tag.
    void require_invertible() const;

    // ||T|| and ||T^-1||; the latter requires an invertible tag.
    double norm() const { return operator_norm(matrix_); }
    double inverse_norm() const;
    Matrix inverse() const;

private:
    OperatorMatrix(Matrix m, OperatorTag tag) : matrix_(std::move(m)), tag_(tag) {}

    Matrix matrix_;
    OperatorTag tag_;
};

// Element of the l2 direct sum of the members: part j holds the coordinates
// of g_j in the orthonormal basis of the j-th subspace.
struct CoefficientBundle {
    std::vector<Vector> parts;
};

// Throws ShapeMismatch if the bundle does not conform to the members.
void check_conforms(const CoefficientBundle& b, std::span<const Subspace> members);

// g_j = basis_j * parts[j].
std::vector<Vector> components(const CoefficientBundle& b, std::span<const Subspace> members);

// Sum of g_j over all j.
Vector synthesize(const CoefficientBundle& b, std::span<const Subspace> members);

// Square root of the sum of ||g_j||^2.
double bundle_norm(const CoefficientBundle& b);

// Sum of <f_j, g_j> = g_j^H f_j (linear in the first argument).
Complex bundle_inner(const CoefficientBundle& f, const CoefficientBundle& g);

// ||A^H A - I|| for a matrix whose columns should be orthonormal.
double orthonormality_defect(const Matrix& a);

} // namespace fusionkit
