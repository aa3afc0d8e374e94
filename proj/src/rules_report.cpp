#include "ets/rules.hpp"

#include <json.hpp>

namespace ets::rules {

namespace {

nlohmann::ordered_json value_to_json(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return *i;
    if (const auto* d = std::get_if<double>(&v)) return *d;
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    const auto& ref = std::get<Ref>(v);
    if (ref.key.index() == 0) return std::get<std::int64_t>(ref.key);
    return std::get<std::string>(ref.key);
}

} // namespace

std::size_t Report::total_findings() const {
    std::size_t n = 0;
    for (const auto& rule : rules) n += rule.findings.size();
    return n;
}

std::size_t Report::violation_findings() const {
    std::size_t n = 0;
    for (const auto& rule : rules)
        if (rule.polarity == Polarity::Violation) n += rule.findings.size();
    return n;
}

std::string Report::to_json() const {
    nlohmann::ordered_json doc;
    doc["dataset_id"] = dataset_id;
    doc["generated_at"] = generated_at;
    doc["rules"] = nlohmann::ordered_json::array();
    for (const auto& rule : rules) {
        nlohmann::ordered_json r;
        r["id"] = rule.id;
        r["taxonomy"] = rule.taxonomy.str();
        r["polarity"] = polarity_name(rule.polarity);
        r["status"] = rule.status;
        if (rule.status == "error") r["error"] = rule.error;
        r["findings"] = nlohmann::ordered_json::array();
        for (const auto& finding : rule.findings) {
            nlohmann::ordered_json f;
            f["bindings"] = nlohmann::ordered_json::object();
            for (const auto& [name, value] : finding.bindings)
                f["bindings"][name] = value_to_json(value);
            f["disposition"] = disposition_name(finding.disposition);
            r["findings"].push_back(std::move(f));
        }
        doc["rules"].push_back(std::move(r));
    }
    doc["summary"]["total_findings"] = total_findings();
    doc["summary"]["by_rule"] = nlohmann::ordered_json::object();
    for (const auto& rule : rules) doc["summary"]["by_rule"][rule.id] = rule.findings.size();
    return doc.dump(2) + "\n";
}

} // namespace ets::rules
