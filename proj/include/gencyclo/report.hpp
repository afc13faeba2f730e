#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "gencyclo/predict.hpp"

namespace gencyclo {

/// One json-lines record per verification. Field names and order are part
/// of the output contract; see the README for the documented schema.
inline nlohmann::ordered_json report_to_json(const VerificationReport& r) {
    nlohmann::ordered_json j;
    j["p"] = r.p;
    j["q"] = r.q;
    j["g1"] = r.g1;
    j["g2"] = r.g2;
    j["g"] = r.g;
    j["l"] = r.l;
    j["n"] = r.n;
    j["a"] = r.a;
    j["b"] = r.b;
    j["delta"] = r.predicates.delta;
    j["delta1"] = r.predicates.delta1;
    j["delta2"] = r.predicates.delta2;
    j["quarter_test"] = r.predicates.quarter_test;
    j["l_class"] = r.predicates.l_class.name();
    j["class_of_minus1"] = r.class_of_minus1.name();
    j["pq_mod8_equal"] = r.predicates.pq_mod8_equal;
    j["branch"] = branch_name(r.prediction.branch);
    if (r.prediction.L)
        j["predicted_L"] = *r.prediction.L;
    else
        j["predicted_L"] = nullptr;
    j["computed_L"] = r.computed_L_gcd;
    j["match"] = r.match;
    nlohmann::ordered_json diags = nlohmann::ordered_json::array();
    for (const auto& d : r.diagnostics) {
        nlohmann::ordered_json e;
        e["check"] = d.check;
        e["status"] = d.status;
        if (!d.detail.empty()) e["detail"] = d.detail;
        diags.push_back(e);
    }
    j["diagnostics"] = diags;
    return j;
}

inline std::string report_to_jsonl(const VerificationReport& r) {
    return report_to_json(r).dump();
}

inline std::string csv_header() {
    return "p,q,g1,g2,g,l,n,a,b,delta,delta1,delta2,quarter_test,l_class,class_of_minus1,"
           "pq_mod8_equal,branch,predicted_L,computed_L,match,diagnostics";
}

inline std::string report_to_csv(const VerificationReport& r) {
    auto b = [](bool v) { return v ? "true" : "false"; };
    std::string diags;
    for (const auto& d : r.diagnostics) {
        if (!diags.empty()) diags += ";";
        diags += d.check + "=" + d.status;
    }
    std::string row;
    row += std::to_string(r.p) + "," + std::to_string(r.q) + ",";
    row += std::to_string(r.g1) + "," + std::to_string(r.g2) + "," + std::to_string(r.g) + ",";
    row += std::to_string(r.l) + "," + std::to_string(r.n) + ",";
    row += std::to_string(r.a) + "," + std::to_string(r.b) + ",";
    row += std::to_string(r.predicates.delta) + "," + std::to_string(r.predicates.delta1) + "," +
           std::to_string(r.predicates.delta2) + ",";
    row += std::string(b(r.predicates.quarter_test)) + "," + r.predicates.l_class.name() + "," +
           r.class_of_minus1.name() + ",";
    row += std::string(b(r.predicates.pq_mod8_equal)) + "," + branch_name(r.prediction.branch) + ",";
    row += (r.prediction.L ? std::to_string(*r.prediction.L) : "") + ",";
    row += std::to_string(r.computed_L_gcd) + "," + r.match + ",\"" + diags + "\"";
    return row;
}

}  // namespace gencyclo
