#include "studies/studies.hpp"

#include <json.hpp>

#include <cstdio>
#include <ostream>

namespace pickands::studies {

bool StudyReport::all_passed() const {
    for (const StudyCheck& c : checks) {
        if (!c.passed) {
            return false;
        }
    }
    return true;
}

namespace {

std::string g17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

} // namespace

void write_csv(const StudyReport& report, std::ostream& os) {
    os << "study,alpha,delta,T,reps,seed,stat,value,std_err\n";
    for (const StudyRow& r : report.rows) {
        os << r.study << ',' << g17(r.alpha) << ',' << g17(r.delta) << ',' << g17(r.T) << ','
           << r.reps << ',' << r.seed << ',' << r.stat << ',' << g17(r.value) << ','
           << g17(r.std_err) << '\n';
    }
}

void write_json(const StudyReport& report, std::ostream& os) {
    nlohmann::json rows = nlohmann::json::array();
    for (const StudyRow& r : report.rows) {
        rows.push_back({{"study", r.study},
                        {"alpha", r.alpha},
                        {"delta", r.delta},
                        {"T", r.T},
                        {"reps", r.reps},
                        {"seed", r.seed},
                        {"stat", r.stat},
                        {"value", r.value},
                        {"std_err", r.std_err}});
    }
    nlohmann::json checks = nlohmann::json::array();
    for (const StudyCheck& c : report.checks) {
        checks.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    }
    nlohmann::json doc = {{"study", report.study},
                          {"rows", rows},
                          {"checks", checks},
                          {"all_passed", report.all_passed()}};
    os << doc.dump(2) << '\n';
}

} // namespace pickands::studies
