#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace bhlab {

using ojson = nlohmann::ordered_json;

struct Check {
    std::string name;
    ojson inputs = ojson::object();
    ojson measured;
    ojson expected;
    double tol = 0.0;
    bool pass = false;
    /// Non-gating rows are recorded (with their honest verdict) but do not
    /// decide the exit code.
    bool gating = true;
    std::string note;
};

class VerificationReport {
public:
    explicit VerificationReport(ojson config = ojson::object());

    /// PASS iff measured <= bound.
    Check& check_le(const std::string& name, ojson inputs, double measured, double bound);
    /// PASS iff |measured - expected| <= tol.
    Check& check_near(const std::string& name, ojson inputs, double measured, double expected, double tol);
    /// PASS iff measured == expected.
    Check& check_equal(const std::string& name, ojson inputs, long long measured, long long expected);
    Check& check_true(const std::string& name, ojson inputs, bool ok, ojson measured = true);

    const std::vector<Check>& checks() const { return checks_; }
    std::vector<Check>& checks() { return checks_; }
    bool all_pass() const;
    int failures() const;

    ojson& config() { return config_; }
    ojson to_json() const;
    void write(const std::string& path) const;

private:
    Check& push(Check c);
    ojson config_;
    std::vector<Check> checks_;
};

} // namespace bhlab
