// One line per acceptance criterion; tolerances are pinned here, not read
// from configs.

#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bhlab/experiments.hpp"

using namespace bhlab;

namespace {

struct Criterion {
    int id;
    std::string title;
    double max_seconds; // 0: no runtime clause
    std::vector<std::pair<std::string, ojson>> runs;
};

std::string headline(const VerificationReport& rep)
{
    // worst gating row, by how close it is to its bound
    const Check* worst = nullptr;
    double worst_q = -1.0;
    for (const Check& c : rep.checks()) {
        if (!c.gating)
            continue;
        double q = c.pass ? 0.0 : 2.0;
        if (c.measured.is_number() && c.expected.is_number() && c.tol == 0.0 && c.expected.get<double>() > 0.0)
            q = c.measured.get<double>() / c.expected.get<double>();
        if (!c.pass)
            q = 1e300;
        if (q > worst_q) {
            worst_q = q;
            worst = &c;
        }
    }
    if (worst == nullptr)
        return "no gating rows";
    return worst->name + " measured " + worst->measured.dump() + " vs " + worst->expected.dump();
}

} // namespace

int main()
{
    const std::vector<Criterion> criteria = {
        {1, "Björling reproduction", 5.0,
         {{"bjorling-reproduction",
           {{"spins", {2.0, 3.0, 5.0, 10.0, 0.5, 1.5}}, {"samples", 200}, {"position_tol", 1e-10}, {"normal_tol", 1e-8}}}}},
        {2, "closed form vs quadrature", 30.0,
         {{"closed-vs-numeric", {{"spins", {2.0, 5.0, 10.0}}, {"grid", 50}, {"y_max", 0.5}, {"tol", 1e-9}}}}},
        {3, "minimality and conformality", 0.0,
         {{"minimality",
           {{"spins", {2.0, 5.0, 10.0, 0.5, 1.5}}, {"mean_tol", 1e-5}, {"conformal_tol", 1e-8}, {"harmonic_tol", 1e-5}}}}},
        {4, "symmetries and line containment", 0.0,
         {{"prop1-symmetries", {{"spins", {2.0, 3.0, 4.0, 6.0}}, {"tol", 1e-9}, {"line_ks", {0, 1, 2}}}}}},
        {5, "conformal factor and meridian tangent", 0.0,
         {{"prop2-metric", {{"spins", {2.0, 3.0, 5.0, 10.0}}, {"points", 10000}, {"tol", 1e-9}}}}},
        {6, "Gauss map degree and total curvature", 60.0,
         {{"total-curvature",
           {{"degrees", {0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12}}, {"integrals", {0, 1, 5, 10}}, {"rel_tol", 0.02}}}}},
        {7, "ruled approximation", 0.0,
         {{"lemma-ruled", {{"spins", {10.0, 30.0, 100.0}}, {"identity_tol", 1e-6}}}}},
        {8, "comparison with the osculating circle", 0.0,
         {{"lemma-comparison", {{"spins", {20.0, 50.0, 100.0}}, {"semi_axes", {1.0, 1.2}}, {"epsilon", 0.5}}}}},
        {9, "boundary total curvature", 0.0,
         {{"corollary-boundary", {{"spins", {3.0, 4.0}}, {"T", 8.0}, {"rel_tol", 0.05}}}}},
        {10, "embeddedness, foliation angle, singular set", 600.0,
         {{"thm2-embeddedness", {{"a", 30}, {"R", 2.0}, {"samples", 500}, {"expect", "EMBEDDED"}}},
          {"foliation-angle", {{"a_list", {10, 20, 40}}, {"R", 2.0}, {"delta", 0.3}}},
          {"singular-set", {{"a_list", {10, 20, 40}}, {"R", 2.0}, {"hausdorff_factor", 4.0}}}}},
        {11, "stadium pipeline", 0.0,
         {{"pipeline", {{"builtin", "stadium"}, {"degree", 20}, {"a", 30.0}, {"write_mesh", false}}}}},
        {12, "asymptotic rays", 0.0, {{"asymptotic-rays", {{"spins", {2.0, 3.0}}, {"tol", 1e-6}}}}},
    };

    int failed = 0;
    for (const Criterion& c : criteria) {
        VerificationReport rep;
        std::string error;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            for (const auto& [name, params] : c.runs)
                run_named_experiment(name, params, ExperimentContext{}, rep);
        } catch (const std::exception& e) {
            error = e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = c.max_seconds == 0.0 || secs < c.max_seconds;
        const bool ok = error.empty() && rep.all_pass() && in_time;
        failed += !ok;
        int gating = 0;
        for (const Check& k : rep.checks())
            gating += k.gating;
        std::printf("criterion %2d %s  %-44s %3d checks, %d failed, %.1f s%s | %s\n", c.id, ok ? "PASS" : "FAIL",
                    c.title.c_str(), gating, rep.failures(), secs,
                    in_time ? "" : " (over time limit)", error.empty() ? headline(rep).c_str() : error.c_str());
        for (const Check& k : rep.checks())
            if (!k.gating)
                std::printf("             info  %s measured %s vs %s\n", k.name.c_str(), k.measured.dump().c_str(),
                            k.expected.dump().c_str());
            else if (!k.pass)
                std::printf("             FAIL  %s %s measured %s vs %s\n", k.name.c_str(), k.inputs.dump().c_str(),
                            k.measured.dump().c_str(), k.expected.dump().c_str());
    }
    std::printf("%d of %zu criteria failed\n", failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
