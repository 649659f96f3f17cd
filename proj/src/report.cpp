#include "qbethe/report.hpp"

#include <sstream>

namespace qbethe {

bool SuiteReport::all_pass() const {
    for (const auto& c : checks)
        if (!c.pass) return false;
    return true;
}

namespace {
std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out;
}
} // namespace

std::string SuiteReport::to_json() const {
    std::ostringstream os;
    os << "{\"suite\":\"" << escape(suite) << "\",\"pass\":" << (all_pass() ? "true" : "false")
       << ",\"checks\":[";
    for (size_t i = 0; i < checks.size(); ++i) {
        const auto& c = checks[i];
        if (i) os << ",";
        os << "{\"name\":\"" << escape(c.name) << "\",\"residual\":\"" << escape(c.residual)
           << "\",\"pass\":" << (c.pass ? "true" : "false") << ",\"elapsed_ms\":" << c.elapsed_ms
           << "}";
    }
    os << "]}";
    return os.str();
}

} // namespace qbethe
