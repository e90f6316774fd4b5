#pragma once

#include <json.hpp>

#include <sstream>
#include <string>
#include <vector>

#include "wakeford/isoperimetry.hpp"
#include "wakeford/pairing.hpp"
#include "wakeford/sweeps.hpp"

namespace wakeford {

/// JSON building blocks for reports. nlohmann::json keeps keys sorted, so a
/// dump of the same data is always the same bytes.

inline json group_json(const Group& g) { return json{{"spec", g.spec()}, {"order", g.order()}}; }

inline json set_json(const GroupSet& s) { return json(s.elements()); }

inline json matching_report_json(const MatchingReport& r) {
    json out{{"exists", r.exists},
             {"mu", to_decimal_string(r.mu)},
             {"mu_exact", r.mu_exact},
             {"max_degree", r.max_degree},
             {"max_codegree", r.max_codegree}};
    if (r.witness) {
        json pairs = json::array();
        for (auto [b, a] : *r.witness) pairs.push_back(json::array({b, a}));
        out["witness"] = pairs;
    }
    if (r.hall_violator) out["hall_violator"] = set_json(*r.hall_violator);
    return out;
}

inline json connectivity_report_json(const ConnectivityReport& r) {
    json out{{"k", r.k},
             {"kappa", r.kappa},
             {"empty_range", r.empty_range},
             {"ambient_order", r.ambient_order}};
    if (r.fragment) out["fragment"] = set_json(*r.fragment);
    return out;
}

inline json record_json(const VerificationRecord& r) {
    return json{{"statement_id", to_string(r.statement)},
                {"instance", json{{"group", r.group_spec}, {"data", r.instance}}},
                {"verdict", to_string(r.verdict)},
                {"details", r.details}};
}

inline json records_json(const std::vector<VerificationRecord>& records) {
    json out = json::array();
    for (const auto& r : records) out.push_back(record_json(r));
    return out;
}

/// CSV row set for sweep summaries: one line per stored record.
inline std::string records_csv(const std::vector<VerificationRecord>& records) {
    auto escape = [](std::string field) {
        bool needs_quote = field.find_first_of(",\"\n") != std::string::npos;
        if (!needs_quote) return field;
        std::string out = "\"";
        for (char c : field) {
            if (c == '"') out += '"';
            out += c;
        }
        out += '"';
        return out;
    };
    std::ostringstream os;
    os << "statement_id,group,instance,verdict,details\n";
    for (const auto& r : records) {
        os << to_string(r.statement) << ',' << escape(r.group_spec) << ','
           << escape(r.instance.dump()) << ',' << to_string(r.verdict) << ','
           << escape(r.details.dump()) << '\n';
    }
    return os.str();
}

} // namespace wakeford
