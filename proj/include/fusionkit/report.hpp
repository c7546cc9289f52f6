#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "fusionkit/fusion_basis.hpp"
#include "fusionkit/perturbation.hpp"
#include "fusionkit/system_io.hpp"

namespace fusionkit {

struct AnalysisOptions {
    Tolerances tol;
    std::size_t basis_constant_cap = default_basis_constant_cap;
    std::optional<std::uint64_t> seed;
};

// Runs every applicable check and collects flags, constants (each tagged with
// the operation that produced it, null when not computed) and residuals.
Json analysis_report(const FusionSystem& sys, const AnalysisOptions& opts = {});

// Short human-readable rendering of an analysis report.
std::string render_text(const Json& report);

Json perturbation_to_json(const PerturbationReport& r);

Json tolerances_to_json(const Tolerances& tol);

} // namespace fusionkit
