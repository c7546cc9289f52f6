#include "fusionkit/cli.hpp"

#include <algorithm>
#include <iostream>
#include <optional>

#include "CLI11.hpp"

#include "fusionkit/generate.hpp"
#include "fusionkit/report.hpp"
#include "fusionkit/riesz.hpp"

namespace fusionkit::cli {

namespace {

int exit_code_for(ErrorCode code)
{
    switch (code) {
    case ErrorCode::MalformedFile:
    case ErrorCode::ZeroSubspace:
    case ErrorCode::NonpositiveWeight:
        return malformed_file;
    case ErrorCode::InternalConsistency:
        return internal_failure;
    case ErrorCode::BadParams:
    case ErrorCode::InvalidTolerance:
        return usage;
    default:
        return negative;
    }
}

std::optional<std::uint64_t> metadata_seed(const Json& metadata)
{
    if (auto it = metadata.find("seed"); it != metadata.end() && it->is_number_unsigned())
        return it->get<std::uint64_t>();
    return std::nullopt;
}

SystemFile load(const std::string& path, const Tolerances& tol)
{
    return parse_system(read_file(path), tol);
}

bool check_property(const std::string& property, const FusionSystem& sys, const Tolerances& tol)
{
    if (property == "complete")
        return is_complete(sys, tol);
    if (property == "minimal")
        return is_minimal(sys, tol).minimal;
    if (property == "exact")
        return frame_bounds(sys, tol).is_frame && is_exact(sys, tol);
    if (property == "f-basis")
        return is_f_basis(sys, tol).verdict;
    if (property == "orthonormal")
        return orthonormal_classify(sys, tol) != OrthonormalClass::none;
    if (property == "riesz")
        return riesz_analyze(sys, tol).is_riesz;
    if (property == "frame")
        return frame_bounds(sys, tol).is_frame;
    throw Error(ErrorCode::BadParams, "unknown property '" + property + "'");
}

} // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"fusionkit: fusion frame and fusion basis analysis"};
    app.name("fusionkit");
    app.require_subcommand(1);

    double eq_tol = Tolerances{}.eq_tol;
    std::size_t cap = 0;

    std::string file;
    bool as_json = false;
    auto* analyze = app.add_subcommand("analyze", "Run every applicable check and report");
    analyze->add_option("file", file, "SystemFile JSON")->required();
    analyze->add_option("--tol", eq_tol, "Equality tolerance");
    analyze->add_flag("--json", as_json, "Emit the report as JSON");
    analyze->add_option("--max-members", cap, "Member cap for the exhaustive basis constant");

    std::string property;
    auto* check = app.add_subcommand("check", "Exit 0 if the property holds, 1 otherwise");
    check->add_option("property", property, "Property to check")
        ->required()
        ->check(CLI::IsMember({"complete", "minimal", "exact", "f-basis", "orthonormal", "riesz", "frame"}));
    check->add_option("file", file, "SystemFile JSON")->required();
    check->add_option("--tol", eq_tol, "Equality tolerance");

    auto* dual = app.add_subcommand("dual", "Emit the dual f-basis system");
    dual->add_option("file", file, "SystemFile JSON")->required();
    dual->add_option("--tol", eq_tol, "Equality tolerance");

    std::string operator_file;
    auto* transform = app.add_subcommand("transform", "Push a system through an invertible operator");
    transform->add_option("file", file, "SystemFile JSON")->required();
    transform->add_option("--operator", operator_file, "Operator JSON")->required();
    transform->add_option("--tol", eq_tol, "Equality tolerance");

    std::vector<std::string> files;
    bool subsetwise = false;
    std::optional<double> theta;
    std::uint64_t seed = 0;
    auto* perturb = app.add_subcommand("perturb", "Paley-Wiener stability certificate");
    perturb->add_option("files", files, "W file, then V file (omit V with --theta)")->required()->expected(1, 2);
    perturb->add_flag("--subsetwise", subsetwise, "Exhaustive subset certificate");
    perturb->add_option("--theta", theta, "Rotate W by this angle to obtain V");
    perturb->add_option("--seed", seed, "Seed for the rotation plane");
    perturb->add_option("--tol", eq_tol, "Equality tolerance");
    perturb->add_option("--max-members", cap, "Member cap for the subsetwise certificate");

    std::string kind;
    std::vector<std::string> params;
    auto* gen = app.add_subcommand("generate", "Emit a generated SystemFile");
    gen->add_option("kind", kind, "Generator kind")->required();
    gen->add_option("params", params, "key=value parameters");
    gen->add_option("--seed", seed, "Generator seed");
    gen->add_option("--tol", eq_tol, "Equality tolerance");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e, out, err);
        return rc == 0 ? ok : usage;
    }

    Tolerances tol;
    tol.eq_tol = eq_tol;
    try {
        tol.validate();
        if (*analyze) {
            const SystemFile sf = load(file, tol);
            AnalysisOptions opts{tol, cap ? cap : default_basis_constant_cap, metadata_seed(sf.metadata)};
            const Json report = analysis_report(sf.system, opts);
            out << (as_json ? report.dump(2) + "\n" : render_text(report));
            return ok;
        }
        if (*check) {
            const bool holds = check_property(property, load(file, tol).system, tol);
            out << (holds ? "true" : "false") << "\n";
            return holds ? ok : negative;
        }
        if (*dual) {
            const FDualSystem fd = dual_system(f_dual(load(file, tol).system, tol), tol);
            out << serialize_system(fd.system(), {{"operation", "dual_system"}});
            return ok;
        }
        if (*transform) {
            const FusionSystem sys = load(file, tol).system;
            const OperatorMatrix t = OperatorMatrix::classify(parse_operator(read_file(operator_file)), tol);
            t.require_invertible();
            const TransformedBoundsCheck bounds = check_transformed_bounds(sys, t, tol);
            if (!bounds.contained)
                throw Error(ErrorCode::InternalConsistency, "transformed bounds escape the predicted interval");
            const FusionSystem image = is_f_basis(sys, tol).verdict
                                           ? transform_f_basis(f_dual(sys, tol), t, tol).system()
                                           : transform_system(sys, t, tol);
            const Json meta = {{"operation", "transform"},
                               {"operator_tag", std::string(to_string(t.tag()))},
                               {"predicted_bounds", {bounds.predicted.lower, bounds.predicted.upper}},
                               {"actual_bounds", {bounds.actual.lower, bounds.actual.upper}},
                               {"contained", bounds.contained}};
            out << serialize_system(image, meta);
            return ok;
        }
        if (*perturb) {
            if (files.size() == 2 && theta)
                throw Error(ErrorCode::BadParams, "give either a V file or --theta, not both");
            if (files.size() == 1 && !theta)
                throw Error(ErrorCode::BadParams, "perturb with one file needs --theta");
            const FusionSystem w_sys = load(files[0], tol).system;
            const FDualSystem w = f_dual(w_sys, tol);
            const FusionSystem v_sys = theta ? rotate(w_sys, *theta, seed) : load(files[1], tol).system;
            const auto v = v_sys.subspaces();

            PerturbationReport r = paley_wiener_global(w, v, tol);
            if (subsetwise) {
                const double global = *r.lambda_global;
                r = paley_wiener_subsetwise(w, v, cap ? cap : default_perturbation_cap, tol);
                r.lambda_global = global;
            }
            Json j = perturbation_to_json(r);
            j["cross_check"] = {{"is_f_basis_V", is_f_basis(v_sys, tol).verdict}};
            j["theta"] = theta ? Json(*theta) : Json(nullptr);
            j["seed"] = theta ? Json(seed) : Json(nullptr);
            j["tolerances"] = tolerances_to_json(tol);
            out << j.dump(2) << "\n";
            return ok;
        }
        if (*gen) {
            GeneratorParams p;
            for (const auto& kv : params) {
                const auto eqpos = kv.find('=');
                if (eqpos == std::string::npos || eqpos == 0)
                    throw Error(ErrorCode::BadParams, "parameter '" + kv + "' is not key=value");
                p[kv.substr(0, eqpos)] = kv.substr(eqpos + 1);
            }
            const SystemFile sf = generate(kind, p, seed, tol);
            out << serialize_system(sf.system, sf.metadata);
            return ok;
        }
    } catch (const Error& e) {
        err << "fusionkit: " << e.what() << "\n";
        return exit_code_for(e.code());
    }
    return usage;
}

} // namespace fusionkit::cli
