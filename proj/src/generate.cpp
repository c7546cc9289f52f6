#include "fusionkit/generate.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

namespace fusionkit {

namespace {

Matrix coordinate_block(int n, std::initializer_list<int> rows)
{
    Matrix b = Matrix::Zero(n, static_cast<Eigen::Index>(rows.size()));
    Eigen::Index c = 0;
    for (int r : rows)
        b(r, c++) = 1.0;
    return b;
}

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Error(ErrorCode::BadParams, what);
}

const std::string& param(const GeneratorParams& p, const std::string& key)
{
    auto it = p.find(key);
    require(it != p.end(), "missing parameter '" + key + "'");
    return it->second;
}

int int_param(const GeneratorParams& p, const std::string& key)
{
    const std::string& s = param(p, key);
    std::size_t used = 0;
    int v = 0;
    try {
        v = std::stoi(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == s.size() && !s.empty(), "parameter '" + key + "' is not an integer");
    return v;
}

double real_param(const GeneratorParams& p, const std::string& key)
{
    const std::string& s = param(p, key);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    require(used == s.size() && !s.empty() && std::isfinite(v), "parameter '" + key + "' is not a number");
    return v;
}

std::vector<int> dims_param(const GeneratorParams& p, const std::string& key)
{
    std::vector<int> dims;
    std::stringstream ss(param(p, key));
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        GeneratorParams one{{key, tok}};
        dims.push_back(int_param(one, key));
    }
    require(!dims.empty(), "parameter '" + key + "' is empty");
    return dims;
}

void check_dims(int n, const std::vector<int>& dims, bool exact)
{
    require(n >= 1, "n must be >= 1");
    require(!dims.empty(), "dims must be non-empty");
    for (int d : dims)
        require(d >= 1, "every dimension must be >= 1");
    const int sum = std::accumulate(dims.begin(), dims.end(), 0);
    if (exact)
        require(sum == n, "sum of dims (" + std::to_string(sum) + ") must equal n (" + std::to_string(n) + ")");
    else
        require(sum <= n, "sum of dims exceeds n");
}

} // namespace

FusionSystem example_2_2(int N)
{
    require(N >= 2, "example_2_2 needs N >= 2");
    std::vector<Subspace> subs;
    for (int j = 0; j < N; ++j) {
        Matrix col = Matrix::Ones(N, 1);
        col(j, 0) = 0.0;
        subs.push_back(orthonormalize(col));
    }
    return FusionSystem::uniform(subs);
}

FusionSystem example_2_3(int m)
{
    require(m >= 1, "example_2_3 needs m >= 1");
    std::vector<Subspace> subs;
    for (int j = 0; j < m; ++j)
        subs.push_back(Subspace::from_orthonormal(coordinate_block(2 * m, {2 * j, 2 * j + 1})));
    return FusionSystem::uniform(subs);
}

FusionSystem example_3_2i(int m)
{
    require(m >= 1, "example_3_2i needs m >= 1");
    std::vector<Subspace> subs;
    for (int j = 0; j < m; ++j) {
        Matrix col = Matrix::Zero(2 * m, 1);
        col(2 * j, 0) = 1.0;
        col(2 * j + 1, 0) = 1.0;
        subs.push_back(orthonormalize(col));
    }
    return FusionSystem::uniform(subs);
}

FusionSystem exact_not_riesz()
{
    return FusionSystem::uniform({Subspace::from_orthonormal(coordinate_block(3, {0, 1})),
                                  Subspace::from_orthonormal(coordinate_block(3, {1, 2}))});
}

Matrix random_unitary(int n, Rng& rng)
{
    const Matrix g = rng.complex_matrix(n, n);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ() * Matrix::Identity(n, n);
    const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        const Complex d = r(i, i);
        if (std::abs(d) > 0.0)
            q.col(i) *= d / std::abs(d);
    }
    return q;
}

Matrix random_invertible(int n, double cond, Rng& rng)
{
    require(cond >= 1.0, "condition number must be >= 1");
    const Matrix u = random_unitary(n, rng);
    const Matrix v = random_unitary(n, rng);
    RealVector sigma(n);
    for (int i = 0; i < n; ++i)
        sigma(i) = n == 1 ? 1.0 : std::pow(cond, -static_cast<double>(i) / (n - 1));
    return u * sigma.cast<Complex>().asDiagonal() * v.adjoint();
}

Subspace random_subspace(int n, int k, Rng& rng)
{
    require(k >= 1 && k <= n, "subspace dimension out of range");
    return orthonormalize(rng.complex_matrix(n, k));
}

Matrix plane_rotation(int n, double theta, Rng& rng)
{
    Matrix r = Matrix::Identity(n, n);
    if (n < 2)
        return r;
    Eigen::VectorXd u(n), w(n);
    for (int i = 0; i < n; ++i)
        u(i) = rng.normal();
    for (int i = 0; i < n; ++i)
        w(i) = rng.normal();
    u.normalize();
    w -= u.dot(w) * u;
    w.normalize();
    const double c = std::cos(theta);
    const double s = std::sin(theta);
    const Eigen::MatrixXd real = Eigen::MatrixXd::Identity(n, n) + (c - 1.0) * (u * u.transpose() + w * w.transpose()) +
                                 s * (w * u.transpose() - u * w.transpose());
    return real.cast<Complex>();
}

std::vector<int> random_dims(int n, int m, Rng& rng)
{
    require(m >= 1 && m <= n, "cannot split n into m positive parts");
    std::vector<int> dims(static_cast<std::size_t>(m), 1);
    for (int extra = n - m; extra > 0; --extra)
        ++dims[static_cast<std::size_t>(rng.integer(0, m - 1))];
    return dims;
}

FusionSystem random_orthonormal(int n, const std::vector<int>& dims, std::uint64_t seed)
{
    check_dims(n, dims, false);
    Rng rng(seed);
    const Matrix q = random_unitary(n, rng);
    std::vector<Subspace> subs;
    int off = 0;
    for (int d : dims) {
        subs.push_back(Subspace::from_orthonormal(q.middleCols(off, d)));
        off += d;
    }
    return FusionSystem::uniform(subs);
}

FusionSystem random_riesz(int n, const std::vector<int>& dims, double cond, std::uint64_t seed)
{
    check_dims(n, dims, true);
    require(cond >= 1.0, "cond must be >= 1");
    Rng rng(seed);
    const Matrix q = random_unitary(n, rng);
    const Matrix t = random_invertible(n, cond, rng);
    std::vector<Subspace> subs;
    int off = 0;
    for (int d : dims) {
        subs.push_back(orthonormalize(t * q.middleCols(off, d)));
        off += d;
    }
    return FusionSystem::uniform(subs);
}

FusionSystem rotate(const FusionSystem& sys, double theta, std::uint64_t seed)
{
    Rng rng(seed);
    const Matrix r = plane_rotation(sys.ambient_dim(), theta, rng);
    std::vector<Subspace> subs;
    for (const auto& m : sys.members())
        subs.push_back(orthonormalize(r * m.subspace.basis(), {}, m.subspace.label()));
    return sys.with_subspaces(subs);
}

SystemFile generate(const std::string& kind, const GeneratorParams& params, std::uint64_t seed, const Tolerances& tol)
{
    Json meta = {{"generator", kind}, {"seed", seed}, {"rng", std::string(Rng::name)}};
    Json pj = Json::object();
    for (const auto& [k, v] : params)
        pj[k] = v;
    meta["params"] = pj;

    if (kind == "example_2_2")
        return {example_2_2(int_param(params, "N")), meta};
    if (kind == "example_2_3")
        return {example_2_3(int_param(params, "m")), meta};
    if (kind == "example_3_2i")
        return {example_3_2i(int_param(params, "m")), meta};
    if (kind == "exact_not_riesz")
        return {exact_not_riesz(), meta};
    if (kind == "random_orthonormal")
        return {random_orthonormal(int_param(params, "n"), dims_param(params, "dims"), seed), meta};
    if (kind == "random_riesz") {
        const double cond = params.count("cond") ? real_param(params, "cond") : 1.0;
        return {random_riesz(int_param(params, "n"), dims_param(params, "dims"), cond, seed), meta};
    }
    if (kind == "rotate") {
        const SystemFile base = parse_system(read_file(param(params, "file")), tol);
        return {rotate(base.system, real_param(params, "theta"), seed), meta};
    }
    throw Error(ErrorCode::BadParams, "unknown generator kind '" + kind + "'");
}

} // namespace fusionkit
