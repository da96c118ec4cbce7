#include "bhlab/report.hpp"

#include <cmath>
#include <fstream>

#include "bhlab/types.hpp"

#ifndef BHLAB_VERSION
#define BHLAB_VERSION "0.0.0"
#endif

namespace bhlab {

VerificationReport::VerificationReport(ojson config) : config_(std::move(config)) {}

Check& VerificationReport::push(Check c)
{
    checks_.push_back(std::move(c));
    return checks_.back();
}

Check& VerificationReport::check_le(const std::string& name, ojson inputs, double measured, double bound)
{
    Check c;
    c.name = name;
    c.inputs = std::move(inputs);
    c.measured = measured;
    c.expected = bound;
    c.tol = 0.0;
    c.pass = std::isfinite(measured) && measured <= bound;
    return push(std::move(c));
}

Check& VerificationReport::check_near(const std::string& name, ojson inputs, double measured, double expected,
                                      double tol)
{
    Check c;
    c.name = name;
    c.inputs = std::move(inputs);
    c.measured = measured;
    c.expected = expected;
    c.tol = tol;
    c.pass = std::isfinite(measured) && std::abs(measured - expected) <= tol;
    return push(std::move(c));
}

Check& VerificationReport::check_equal(const std::string& name, ojson inputs, long long measured, long long expected)
{
    Check c;
    c.name = name;
    c.inputs = std::move(inputs);
    c.measured = measured;
    c.expected = expected;
    c.pass = measured == expected;
    return push(std::move(c));
}

Check& VerificationReport::check_true(const std::string& name, ojson inputs, bool ok, ojson measured)
{
    Check c;
    c.name = name;
    c.inputs = std::move(inputs);
    c.measured = std::move(measured);
    c.expected = true;
    c.pass = ok;
    return push(std::move(c));
}

bool VerificationReport::all_pass() const
{
    return failures() == 0;
}

int VerificationReport::failures() const
{
    int n = 0;
    for (const auto& c : checks_)
        if (c.gating && !c.pass)
            ++n;
    return n;
}

ojson VerificationReport::to_json() const
{
    ojson out;
    out["version"] = BHLAB_VERSION;
    out["config"] = config_;
    ojson rows = ojson::array();
    int passed = 0, informational = 0;
    for (const auto& c : checks_) {
        ojson r;
        r["name"] = c.name;
        r["inputs"] = c.inputs;
        r["measured"] = c.measured;
        r["expected"] = c.expected;
        r["tol"] = c.tol;
        r["pass"] = c.pass;
        if (!c.gating)
            r["gating"] = false;
        if (!c.note.empty())
            r["note"] = c.note;
        rows.push_back(std::move(r));
        if (!c.gating)
            ++informational;
        else if (c.pass)
            ++passed;
    }
    out["checks"] = std::move(rows);
    ojson summary;
    summary["total"] = checks_.size();
    summary["passed"] = passed;
    summary["failed"] = failures();
    summary["informational"] = informational;
    summary["verdict"] = all_pass() ? "PASS" : "FAIL";
    out["summary"] = std::move(summary);
    return out;
}

void VerificationReport::write(const std::string& path) const
{
    std::ofstream out(path);
    if (!out)
        throw UsageError("cannot write report '" + path + "'");
    out << to_json().dump(2) << "\n";
}

} // namespace bhlab
