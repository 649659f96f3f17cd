#ifndef QBETHE_REPORT_HPP
#define QBETHE_REPORT_HPP

#include <string>
#include <vector>

namespace qbethe {

// One named check inside a verification suite.
struct CheckResult {
    std::string name;
    std::string residual; // exact scalar as text, "0" on success
    bool pass = false;
    int64_t elapsed_ms = 0;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const;
    std::string to_json() const;
};

} // namespace qbethe

#endif
