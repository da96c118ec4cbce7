#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bhlab/frame.hpp"
#include "bhlab/report.hpp"

namespace bhlab {

struct ExperimentContext {
    /// Artifacts (meshes, CSVs) go here; empty disables them.
    std::string output_dir;
};

struct ExperimentInfo {
    std::string name;
    std::string summary;
    ojson defaults; ///< every accepted parameter with its default
};

const std::vector<ExperimentInfo>& experiment_catalog();
const ExperimentInfo& experiment_info(const std::string& name);

/// Merges `params` over the defaults. Unknown keys and type mismatches throw
/// UsageError naming `path` (e.g. "experiments[1].spins[0]").
ojson resolve_params(const std::string& name, const ojson& params, const std::string& path);

/// Appends the experiment's checks to `report`, names prefixed "<name>/".
void run_named_experiment(const std::string& name, const ojson& params, const ExperimentContext& ctx,
                          VerificationReport& report);

/// Validates {output_dir, experiments: [{name, ...}]} and runs every entry
/// in order.
VerificationReport run_config(const ojson& config);

/// Reads a config file, runs it and writes report.json into output_dir
/// (or `report_path` when given). Returns the report.
VerificationReport run_experiment(const std::string& config_path, const std::string& report_path = "");

struct PipelineOptions {
    std::string curve_path;           ///< CSV input; empty uses `builtin`
    std::string builtin = "stadium";  ///< stadium | circle | ellipse
    double straight = 1.0;            ///< stadium straight length
    int samples = 400;
    double h = 0.5;
    int degree = 20;
    double spin = 30.0;
    int frame_degree = 0; ///< 0: automatic
    double c1_tol = 1e-3;
    double curvature_factor = 1.05;   ///< bound on curvature / kappa_hat
    double frame_tol = 1e-7;
    double harmonic_tol = 1e-4;
    /// Compare with the closed form at the rounded spin (circle input only).
    bool closure_check = false;
    std::string mesh_path; ///< OBJ of the surface over one period, |y| <= d(a)
};

struct PipelineResult {
    SampledCurve input;
    double input_length = 0.0;
    UnitSpeedFit fit;
    AnalyticFrame frame;
    SpinRounding spin;
    std::optional<SurfaceEvaluator> surface;
};

/// Ingest -> mollify -> arc length -> analytic fit -> frame -> surface, with
/// every stage's checks appended to `report` under `prefix`.
PipelineResult run_pipeline(const PipelineOptions& options, VerificationReport& report,
                            const std::string& prefix = "pipeline");

} // namespace bhlab
