// bhlab command line: meshes, verification experiments, sweeps, pipeline.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bhlab/approx.hpp"
#include "bhlab/experiments.hpp"
#include "bhlab/foliation.hpp"
#include "bhlab/mesh.hpp"

using namespace bhlab;

namespace {

void print_checks(const VerificationReport& rep)
{
    for (const Check& c : rep.checks()) {
        const char* tag = !c.gating ? "info" : (c.pass ? "PASS" : "FAIL");
        std::printf("%-4s  %-48s %s  (expected %s)\n", tag, c.name.c_str(), c.measured.dump().c_str(),
                    c.expected.dump().c_str());
    }
    const auto s = rep.to_json()["summary"];
    std::printf("%d checks, %d failed: %s\n", s["total"].get<int>(), s["failed"].get<int>(),
                s["verdict"].get<std::string>().c_str());
}

int finish(const VerificationReport& rep, const std::string& out)
{
    if (!out.empty()) {
        const auto parent = std::filesystem::path(out).parent_path();
        if (!parent.empty())
            std::filesystem::create_directories(parent);
        rep.write(out);
    }
    print_checks(rep);
    return rep.all_pass() ? 0 : 1;
}

bool ends_with(const std::string& s, const std::string& suffix)
{
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

struct GenerateArgs {
    double a = 0.0;
    double R = 0.0;
    std::string out;
    bool numeric = false;
    bool closed_form = false;
    int nx = 200;
    int ny = 60;
    double y_max = 0.0;
};

int cmd_generate(const GenerateArgs& g)
{
    if (g.numeric && g.closed_form)
        throw UsageError("--closed-form and --numeric are exclusive");
    const bool ply = ends_with(g.out, ".ply");
    if (!ply && !ends_with(g.out, ".obj"))
        throw UsageError("--out must end in .obj or .ply");
    const bool use_numeric = g.numeric || g.a == 1.0;
    if (!(g.a >= 0.0) || (!use_numeric && g.a == 0.0))
        throw UsageError("--a must be > 0 for the closed form (>= 0 with --numeric)");
    const SurfaceEvaluator surf =
        use_numeric ? SurfaceEvaluator::numeric(BjorlingSpec::circle(g.a)) : SurfaceEvaluator::closed_circle(g.a);

    double y0, y1;
    std::optional<TubeRegion> tube;
    if (g.R > 0.0) {
        if (std::abs(g.a - std::round(g.a)) > 1e-12 || g.a < 1.0)
            throw UsageError("--R needs an integer spin a >= 1");
        const FundamentalPiece piece = extract_fundamental_piece(static_cast<int>(std::lround(g.a)), g.R);
        y0 = piece.y_min();
        y1 = piece.y_max();
        tube.emplace(g.R);
    } else {
        const double d = g.y_max > 0.0 ? g.y_max : (g.a > 1.0 ? strip_halfwidth(g.a) : 0.5);
        y0 = -d;
        y1 = d;
    }
    Mesh m = mesh_generate(surf, 0.0, 2.0 * kPi, y0, y1, g.nx, g.ny);
    if (tube) {
        std::vector<std::array<int, 4>> kept;
        for (const auto& q : m.quads) {
            bool inside = true;
            for (int v : q)
                inside = inside && tube->contains(m.vertices[static_cast<std::size_t>(v)]);
            if (inside)
                kept.push_back(q);
        }
        m.quads = std::move(kept);
    }
    if (ply)
        write_ply(g.out, m);
    else
        write_obj(g.out, m);
    std::printf("%s: %zu vertices, %zu quads, %d degenerate cells skipped (%s, a = %g)\n", g.out.c_str(),
                m.vertices.size(), m.quads.size(), m.skipped_faces, use_numeric ? "numeric" : "closed form", g.a);
    return 0;
}

int cmd_verify(const std::string& experiment, const std::string& config_path, const std::string& out,
               const std::string& artifacts)
{
    if (experiment.empty() && config_path.empty())
        throw UsageError("verify needs --experiment and/or --config");
    if (experiment.empty()) {
        VerificationReport rep = run_experiment(config_path, out);
        print_checks(rep);
        return rep.all_pass() ? 0 : 1;
    }
    ojson config{{"output_dir", artifacts}, {"experiments", ojson::array()}};
    if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in)
            throw UsageError("cannot open config '" + config_path + "'");
        ojson full;
        try {
            full = ojson::parse(in);
        } catch (const ojson::parse_error& e) {
            throw UsageError(config_path + ": " + e.what());
        }
        if (full.is_object() && full.contains("output_dir") && artifacts.empty())
            config["output_dir"] = full["output_dir"];
        if (full.is_object() && full.contains("experiments") && full["experiments"].is_array())
            for (const auto& e : full["experiments"])
                if (e.is_object() && e.value("name", std::string()) == experiment)
                    config["experiments"].push_back(e);
    }
    if (config["experiments"].empty())
        config["experiments"].push_back({{"name", experiment}});
    return finish(run_config(config), out);
}

int cmd_sweep(const std::string& experiment, const std::vector<double>& values, const std::string& out,
              const std::string& artifacts)
{
    const ExperimentInfo& info = experiment_info(experiment);
    ojson list = ojson::array();
    for (double v : values) {
        ojson item{{"name", experiment}};
        const bool integral = std::abs(v - std::round(v)) < 1e-12;
        if (info.defaults.contains("spins")) {
            item["spins"] = ojson::array({v});
        } else if (info.defaults.contains("a_list")) {
            if (!integral)
                throw UsageError("--a: experiment '" + experiment + "' needs integer values");
            item["a_list"] = ojson::array({static_cast<int>(std::lround(v))});
        } else if (info.defaults.contains("a")) {
            if (info.defaults["a"].is_number_integer()) {
                if (!integral)
                    throw UsageError("--a: experiment '" + experiment + "' needs integer values");
                item["a"] = static_cast<int>(std::lround(v));
            } else {
                item["a"] = v;
            }
        } else {
            throw UsageError("experiment '" + experiment + "' has no spin parameter to sweep");
        }
        list.push_back(item);
    }
    return finish(run_config(ojson{{"output_dir", artifacts}, {"experiments", list}}), out);
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"bent helicoid laboratory"};
    app.set_version_flag("--version", BHLAB_VERSION);
    app.require_subcommand(1);

    GenerateArgs g;
    auto* gen = app.add_subcommand("generate", "mesh of H_a (optionally clipped to the tube T_R)");
    gen->add_option("--a", g.a, "spin rate")->required();
    gen->add_option("--R", g.R, "tube radius; meshes the annulus H_a,R");
    gen->add_option("--out", g.out, "output .obj or .ply")->required();
    gen->add_flag("--closed-form", g.closed_form, "closed form evaluator (default)");
    gen->add_flag("--numeric", g.numeric, "Björling quadrature evaluator");
    gen->add_option("--nx", g.nx, "vertices along x")->check(CLI::Range(2, 100000));
    gen->add_option("--ny", g.ny, "vertices along y")->check(CLI::Range(2, 100000));
    gen->add_option("--y-max", g.y_max, "half-height of the strip (default log(a)/a)");

    std::string experiment, config, out, artifacts;
    auto* ver = app.add_subcommand("verify", "run verification experiments and write a JSON report");
    ver->add_option("--experiment", experiment, "experiment name");
    ver->add_option("--config", config, "JSON config");
    ver->add_option("--out", out, "report path");
    ver->add_option("--artifacts", artifacts, "directory for meshes and CSVs");

    std::vector<double> values;
    auto* sw = app.add_subcommand("sweep", "run one experiment over a list of spins");
    sw->add_option("--experiment", experiment, "experiment name")->required();
    sw->add_option("--a", values, "comma-separated spins")->required()->delimiter(',');
    sw->add_option("--out", out, "report path");
    sw->add_option("--artifacts", artifacts, "directory for meshes and CSVs");

    PipelineOptions po;
    auto* pipe = app.add_subcommand("pipeline", "curve -> bent helicoid with stage checks");
    pipe->set_help_flag("--help", "print this help");
    pipe->add_option("--curve", po.curve_path, "CSV curve t,x,y,z[,tx,ty,tz]");
    pipe->add_option("--builtin", po.builtin, "stadium | circle | ellipse when no --curve");
    pipe->add_option("--straight", po.straight, "stadium straight length");
    pipe->add_option("--samples", po.samples, "samples of the builtin curve");
    pipe->add_option("--h", po.h, "mollifier half-width");
    pipe->add_option("--degree", po.degree, "fit degree");
    pipe->add_option("--frame-degree", po.frame_degree, "frame fit degree (0: automatic)");
    pipe->add_option("--a", po.spin, "spin rate (rounded for closed curves)");
    pipe->add_flag("--closure", po.closure_check, "compare with the closed form (circle input)");
    pipe->add_option("--mesh", po.mesh_path, "OBJ of the resulting surface");
    pipe->add_option("--out", out, "report path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen->parsed())
            return cmd_generate(g);
        if (ver->parsed())
            return cmd_verify(experiment, config, out, artifacts);
        if (sw->parsed())
            return cmd_sweep(experiment, values, out, artifacts);
        if (pipe->parsed()) {
            ojson echo;
            echo["curve"] = po.curve_path;
            echo["builtin"] = po.builtin;
            echo["h"] = po.h;
            echo["degree"] = po.degree;
            echo["a"] = po.spin;
            VerificationReport rep(echo);
            run_pipeline(po, rep);
            return finish(rep, out);
        }
    } catch (const UsageError& e) {
        std::fprintf(stderr, "bhlab: %s\n", e.what());
        return 2;
    } catch (const NumericalError& e) {
        std::fprintf(stderr, "bhlab: numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::filesystem::filesystem_error& e) {
        std::fprintf(stderr, "bhlab: %s\n", e.what());
        return 2;
    }
    return 2;
}
