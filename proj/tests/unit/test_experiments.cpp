#include <gtest/gtest.h>

#include "bhlab/experiments.hpp"

using namespace bhlab;

TEST(Report, VerdictSemantics)
{
    VerificationReport r;
    r.check_le("a", {}, 1.0, 2.0);
    r.check_near("b", {}, 1.0, 1.5, 0.1);
    r.check_le("c", {}, 3.0, 2.0).gating = false;
    EXPECT_EQ(r.failures(), 1);
    const auto j = r.to_json();
    EXPECT_EQ(j["summary"]["total"], 3);
    EXPECT_EQ(j["summary"]["informational"], 1);
    EXPECT_EQ(j["summary"]["verdict"], "FAIL");
    EXPECT_FALSE(r.check_le("nan", {}, std::nan(""), 1.0).pass);
}

TEST(Config, EmptyListPasses)
{
    const auto r = run_config(ojson{{"experiments", ojson::array()}});
    EXPECT_TRUE(r.checks().empty());
    EXPECT_TRUE(r.all_pass());
}

TEST(Config, FieldPathErrors)
{
    auto msg = [](const ojson& cfg) {
        try {
            run_config(cfg);
        } catch (const UsageError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    EXPECT_NE(msg(ojson{{"experiments", {{{"name", "nope"}}}}}).find("config.experiments[0].name"), std::string::npos);
    EXPECT_NE(msg(ojson{{"experiments", {{{"name", "mesh"}, {"nx", "ten"}}}}}).find("config.experiments[0].nx"),
              std::string::npos);
    EXPECT_NE(msg(ojson{{"experiments", {{{"name", "minimality"}, {"spins", {1.0, "x"}}}}}})
                  .find("config.experiments[0].spins[1]"),
              std::string::npos);
    EXPECT_NE(msg(ojson{{"experiments", {{{"name", "mesh"}, {"colour", 1}}}}}).find("unknown parameter"),
              std::string::npos);
    EXPECT_NE(msg(ojson{{"extra", 1}}).find("config.extra"), std::string::npos);
    EXPECT_NE(msg(ojson{{"experiments", {{{"name", "thm2-embeddedness"}, {"a", 30.5}}}}}).find("expected integer"),
              std::string::npos);
}

TEST(Experiments, SymmetriesPassAtFour)
{
    const auto r = run_config(ojson{{"experiments", {{{"name", "prop1-symmetries"}, {"spins", {4.0}}}}}});
    EXPECT_FALSE(r.checks().empty());
    EXPECT_TRUE(r.all_pass());
}

TEST(Experiments, ReportsAreDeterministic)
{
    const ojson cfg{{"experiments", {{{"name", "prop2-metric"}, {"points", 500}}, {{"name", "asymptotic-rays"}}}}};
    EXPECT_EQ(run_config(cfg).to_json().dump(), run_config(cfg).to_json().dump());
}

TEST(Experiments, CatalogHasAllNames)
{
    for (const char* n : {"bjorling-reproduction", "closed-vs-numeric", "minimality", "prop1-symmetries", "prop2-metric",
                          "total-curvature", "lemma-ruled", "lemma-comparison", "corollary-boundary",
                          "thm2-embeddedness", "foliation-angle", "singular-set", "asymptotic-rays", "pipeline", "mesh"})
        EXPECT_NO_THROW(experiment_info(n)) << n;
}

TEST(Pipeline, StadiumStages)
{
    VerificationReport rep;
    PipelineOptions o;
    const auto res = run_pipeline(o, rep);
    EXPECT_TRUE(rep.all_pass()) << rep.to_json().dump(1);
    EXPECT_LE(res.fit.curve.degree(), 20);
    ASSERT_TRUE(res.surface.has_value());
}

TEST(Pipeline, BadBandwidthIsUsageError)
{
    VerificationReport rep;
    PipelineOptions o;
    o.h = 5.0;
    EXPECT_THROW(run_pipeline(o, rep), UsageError);
}
