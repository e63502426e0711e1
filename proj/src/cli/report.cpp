#include <algorithm>
#include <cstdio>
#include <sstream>

#include "toridouble/cli.hpp"

namespace toridouble {

// Schema of a "lines" record, fields in this order:
//   id, type, status, residuals [{name, value, tolerance}], checks [{name, ok}],
//   certificates [{name, radius, tail_bound, lambda_min}], measured {...}, error (error records only)
nlohmann::ordered_json to_json(const ReportRecord& r) {
    nlohmann::ordered_json j;
    j["id"] = r.id;
    j["type"] = r.type;
    j["status"] = to_string(r.status);
    j["residuals"] = nlohmann::ordered_json::array();
    for (const auto& res : r.residuals)
        j["residuals"].push_back({{"name", res.name}, {"value", res.value}, {"tolerance", res.tolerance}});
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) j["checks"].push_back({{"name", c.name}, {"ok", c.ok}});
    j["certificates"] = nlohmann::ordered_json::array();
    for (const auto& c : r.certificates)
        j["certificates"].push_back({{"name", c.name},
                                     {"radius", c.cert.radius},
                                     {"tail_bound", c.cert.tail_bound},
                                     {"lambda_min", c.cert.lambda_min}});
    j["measured"] = r.measured;
    if (r.status == Status::error) j["error"] = r.error;
    return j;
}

std::string emit_report(const std::vector<ReportRecord>& records, ReportFormat format) {
    std::ostringstream os;
    if (format == ReportFormat::lines) {
        for (const auto& r : records) os << to_json(r).dump() << "\n";
        return os.str();
    }
    std::size_t w_id = 4, w_type = 4;
    for (const auto& r : records) {
        w_id = std::max(w_id, r.id.size());
        w_type = std::max(w_type, r.type.size());
    }
    char buf[256];
    auto row = [&](const std::string& id, const std::string& type, const std::string& status, const std::string& res,
                   const std::string& tol, const std::string& time) {
        std::snprintf(buf, sizeof buf, "%-*s  %-*s  %-6s  %-11s  %-11s  %s\n", static_cast<int>(w_id), id.c_str(),
                      static_cast<int>(w_type), type.c_str(), status.c_str(), res.c_str(), tol.c_str(), time.c_str());
        os << buf;
    };
    auto sci = [&](double x) {
        std::snprintf(buf, sizeof buf, "%.3e", x);
        return std::string(buf);
    };
    row("task", "type", "status", "residual", "tolerance", "time [s]");
    std::size_t passed = 0;
    for (const auto& r : records) {
        // worst residual relative to its tolerance
        const ResidualEntry* worst = nullptr;
        for (const auto& res : r.residuals)
            if (!worst || res.value / res.tolerance > worst->value / worst->tolerance) worst = &res;
        std::string res = worst ? sci(worst->value) : "-";
        std::string tol = worst ? sci(worst->tolerance) : "-";
        std::snprintf(buf, sizeof buf, "%.3f", r.wall_time);
        std::string time = buf;
        row(r.id, r.type, to_string(r.status), res, tol, time);
        if (r.status == Status::pass) ++passed;
        if (r.status == Status::error) os << "    error: " << r.error << "\n";
        for (const auto& c : r.checks)
            if (!c.ok) os << "    failed check: " << c.name << "\n";
    }
    os << passed << "/" << records.size() << " tasks passed\n";
    return os.str();
}

}  // namespace toridouble
