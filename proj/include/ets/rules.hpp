#pragma once

#include "ets/mapping.hpp"
#include "ets/store.hpp"
#include "ets/value.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ets::rules {

/// Path in the fixed rules taxonomy:
///   data-acquisition -> harmonization -> {classification-mapping,
///     unit-conversion, scenario-alignment}
///   data-acquisition -> verification-validation -> {correctness,
///     validation, policy-objectives}
///   data-analysis -> categorization
///   data-analysis -> impact-analysis -> {sector-impact, scenario-analysis}
struct TaxonomyPath {
    std::vector<std::string> segments;

    std::string str() const;
    const std::string& root() const { return segments.front(); }
    bool valid() const;
    bool has_prefix(const TaxonomyPath& prefix) const;
    static TaxonomyPath parse(const std::string& slash_joined);
};

enum class Polarity { Violation, Match };
std::string polarity_name(Polarity p);

struct RuleDef {
    std::string id;
    TaxonomyPath taxonomy;
    Polarity polarity = Polarity::Violation;

    enum class BodyKind { Query, Native } body_kind = BodyKind::Query;
    std::string query_text; // Query rules; may contain $NAME placeholders
    std::string native_id;  // Native rules: dispatch key

    std::vector<std::string> params;        // placeholder names; empty = concrete
    std::map<std::string, double> bound;    // values substituted so far
    std::string description;

    bool is_template() const { return bound.size() < params.size(); }
};

enum class Disposition { Pending, NotRelevant, Error };
std::string disposition_name(Disposition d);
Disposition parse_disposition(const std::string& name);

struct Finding {
    std::string rule_id;
    std::map<std::string, Value> bindings; // projected variable -> value
    Polarity polarity = Polarity::Violation;
    Disposition disposition = Disposition::Pending;
};

struct RuleResult {
    std::string id;
    TaxonomyPath taxonomy;
    Polarity polarity = Polarity::Violation;
    std::string status;          // "ok", "error", "skipped"
    std::string error;           // message when status == "error"
    std::vector<Finding> findings;
};

struct Report {
    std::string dataset_id;
    std::string generated_at; // injected, never sampled
    std::vector<RuleResult> rules;

    std::size_t total_findings() const;
    std::size_t violation_findings() const;
    std::string to_json() const; // stable field names, byte-deterministic
};

/// The shipped catalogue: the concrete rules recoverable from the source
/// inventory, 11 in total. Polarity and taxonomy are validated on load.
const std::vector<RuleDef>& load_catalogue();
const RuleDef& find_rule(const std::string& id); // throws LookupError

/// Substitutes every $NAME placeholder; missing or extra parameters and
/// non-numeric values are errors.
RuleDef instantiate_template(const RuleDef& rule, const std::map<std::string, double>& params);

/// Query rules: one finding per result row. Native checks: one finding per
/// violating entity. Templates must be instantiated first.
std::vector<Finding> run_rule(const RuleDef& rule, const store::Dataset& data,
                              const mapping::MappingSpec& spec);

/// Runs every concrete catalogue rule rooted at data-acquisition (templates
/// are skipped). A failing rule is recorded as errored; the rest still run.
/// `rule_filter` empty means all.
Report run_acquisition_service(const store::Dataset& data, const mapping::MappingSpec& spec,
                               const std::string& dataset_id, const std::string& generated_at,
                               const std::vector<std::string>& rule_filter = {});

/// Runs the named data-analysis rules with per-rule template parameters.
Report run_analysis_service(const store::Dataset& data, const mapping::MappingSpec& spec,
                            const std::vector<std::string>& rule_ids,
                            const std::map<std::string, std::map<std::string, double>>& params,
                            const std::string& dataset_id, const std::string& generated_at);

/// Sets the disposition of one finding (rule id + index within the rule);
/// re-annotation overwrites.
void annotate_finding(Report& report, const std::string& rule_id, std::size_t finding_index,
                      Disposition disposition);

/// Consumer bands over monthly consumption in GWh:
/// band 1: <= 4, band 2: (4, 8], band 3: (8, 12], band 4: > 12.
int classify_consumer(double monthly_consumption_gwh); // throws on negative input

/// Verbatim texts of the four conformance queries (RULE1..RULE4).
const std::string& appendix_rule_text(int number);

/// Relative tolerance used by the sum / conversion equality checks.
inline constexpr double kSumEqualityTol = 1e-9;
/// Natural-gas emission factor ceiling, tCO2 per TJ.
inline constexpr double kNaturalGasEmissionFactor = 56.0;

} // namespace ets::rules
