#include "fusionkit/report.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fusionkit/riesz.hpp"

namespace fusionkit {

namespace {

Json constant(double value, const char* source)
{
    return {{"value", value}, {"source", source}};
}

template <typename T>
Json or_null(const std::optional<T>& v)
{
    return v ? Json(*v) : Json(nullptr);
}

} // namespace

Json tolerances_to_json(const Tolerances& tol)
{
    return {{"ortho_tol", tol.ortho_tol}, {"rank_tol", tol.rank_tol}, {"eq_tol", tol.eq_tol}};
}

Json analysis_report(const FusionSystem& sys, const AnalysisOptions& opts)
{
    const Tolerances& tol = opts.tol;
    tol.validate();

    const FrameFlags frame = classify(sys, tol);
    const bool complete = is_complete(sys, tol);
    const Minimality minimal = is_minimal(sys, tol);
    const bool exact = frame.frame && is_exact(sys, tol);
    const FBasisVerdict fb = is_f_basis(sys, tol);
    const OrthonormalClass ortho = orthonormal_classify(sys, tol);
    const RieszCertificate cert = riesz_analyze(sys, tol);
    const DimensionAudit audit = dimension_audit(sys);

    Json report;
    report["schema_version"] = schema_version;
    report["ambient_dim"] = sys.ambient_dim();
    report["member_count"] = sys.size();
    report["dims"] = sys.dims();
    report["weights"] = sys.weights();
    report["tolerances"] = tolerances_to_json(tol);
    report["seed"] = or_null(opts.seed);

    report["flags"] = {
        {"complete", complete},
        {"minimal", minimal.minimal},
        {"exact", exact},
        {"f_basis", fb.verdict},
        {"orthonormal_system", ortho != OrthonormalClass::none},
        {"orthonormal_basis", ortho == OrthonormalClass::basis},
        {"riesz", cert.is_riesz},
        {"frame", frame.frame},
        {"bessel", frame.bessel},
        {"tight", frame.tight},
        {"parseval", frame.parseval},
        {"uniform_weight", frame.uniform_weight},
    };

    Json constants;
    constants["C"] = constant(frame.bounds.lower, "frame_bounds");
    constants["D"] = constant(frame.bounds.upper, "frame_bounds");
    constants["A"] = nullptr;
    constants["B"] = nullptr;
    constants["M"] = nullptr;
    constants["lambda"] = nullptr;

    Json residuals;
    double ortho_defect = 0.0;
    for (const auto& m : sys.members())
        ortho_defect = std::max(ortho_defect, orthonormality_defect(m.subspace.basis()));
    residuals["member_orthonormality"] = ortho_defect;
    residuals["cross_gram"] = cross_gram_defect(sys);
    residuals["fdual"] = nullptr;
    residuals["gram_orthonormality"] = nullptr;
    residuals["resolutions"] = nullptr;

    if (fb.verdict) {
        const FDualSystem fd = f_dual(sys, tol);
        const BesselHilbert ab = bessel_hilbert_constants(fd);
        constants["A"] = constant(ab.A, "bessel_hilbert_constants");
        constants["B"] = constant(ab.B, "bessel_hilbert_constants");
        try {
            const BasisConstant m = basis_constant(fd, opts.basis_constant_cap);
            constants["M"] = {{"value", m.value}, {"source", "basis_constant"}, {"method", "exhaustive"},
                              {"subset_count", m.subset_count}};
        } catch (const Error& e) {
            if (e.code() != ErrorCode::TooManyMembers)
                throw;
        }
        const FDualResiduals r = fd.residuals();
        residuals["fdual"] = {{"sum_identity", r.sum_identity}, {"products", r.products}, {"range", r.range}};
    }
    if (cert.is_riesz) {
        residuals["gram_orthonormality"] = gram_orthonormality_check(cert, sys);
        const Resolutions res = resolutions_of_identity(cert);
        Json rj;
        for (const auto* fam : {&res.P, &res.S, &res.U, &res.R}) {
            static constexpr const char* names[] = {"P", "S", "U", "R"};
            rj[names[static_cast<int>(fam->kind)]] = {{"sum_identity", fam->sum_residual()},
                                                      {"idempotency", fam->idempotency_residual()}};
        }
        residuals["resolutions"] = rj;
    }
    report["constants"] = constants;

    Json riesz = nullptr;
    if (cert.is_riesz)
        riesz = {{"A", *cert.A}, {"B", *cert.B}, {"norm_T", *cert.norm_T}, {"norm_T_inverse", *cert.norm_T_inverse},
                 {"T_tag", std::string(to_string(cert.T->tag()))}};
    report["riesz"] = riesz;

    report["dimension_audit"] = {{"sum_dims", audit.sum_dims},
                                 {"ambient_dim", audit.ambient_dim},
                                 {"f_basis_possible", audit.f_basis_possible}};
    report["witnesses"] = {{"minimal_violations", minimal.violations},
                           {"f_basis_reason", std::string(to_string(fb.reason))},
                           {"orthonormal_class", std::string(to_string(ortho))}};
    report["residuals"] = residuals;
    return report;
}

std::string render_text(const Json& report)
{
    std::ostringstream os;
    os << "ambient_dim " << report["ambient_dim"].get<int>() << ", members " << report["member_count"].get<int>()
       << ", dims " << report["dims"].dump() << "\n";
    os << "flags:";
    for (const auto& [k, v] : report["flags"].items())
        os << ' ' << k << '=' << (v.get<bool>() ? "yes" : "no");
    os << "\nconstants:";
    for (const auto& [k, v] : report["constants"].items()) {
        os << ' ' << k << '=';
        if (v.is_null())
            os << "n/a";
        else
            os << v["value"].get<double>();
    }
    os << "\n";
    return os.str();
}

Json perturbation_to_json(const PerturbationReport& r)
{
    Json j;
    j["lambda_global"] = or_null(r.lambda_global);
    j["lambda_subsetwise"] = or_null(r.lambda_subsetwise);
    j["conclusive"] = r.conclusive;
    j["verdict"] = or_null(r.verdict);
    j["method"] = std::string(to_string(r.method));
    j["subset_count"] = r.subset_count;
    j["kernel_violation_subset"] = nullptr;
    if (r.kernel_violation) {
        Json members = Json::array();
        for (std::size_t b = 0; b < 64; ++b)
            if (*r.kernel_violation & (std::uint64_t{1} << b))
                members.push_back(b);
        j["kernel_violation_subset"] = members;
    }
    return j;
}

} // namespace fusionkit
