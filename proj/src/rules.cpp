#include "ets/rules.hpp"

#include "ets/classification.hpp"
#include "ets/errors.hpp"
#include "ets/query.hpp"
#include "ets/units.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace ets::rules {

namespace {

struct TaxonomyNode {
    std::string name;
    std::vector<TaxonomyNode> children;
};

const TaxonomyNode& taxonomy_tree() {
    static const TaxonomyNode root{
        "",
        {{"data-acquisition",
          {{"harmonization",
            {{"classification-mapping", {}}, {"unit-conversion", {}}, {"scenario-alignment", {}}}},
           {"verification-validation",
            {{"correctness", {}}, {"validation", {}}, {"policy-objectives", {}}}}}},
         {"data-analysis",
          {{"categorization", {}},
           {"impact-analysis", {{"sector-impact", {}}, {"scenario-analysis", {}}}}}}}};
    return root;
}

// Expected polarity per leaf category: checks flag violations, analytical
// and policy-expectation queries report matches.
const std::map<std::string, Polarity>& category_polarity() {
    static const std::map<std::string, Polarity> table = {
        {"classification-mapping", Polarity::Violation},
        {"unit-conversion", Polarity::Violation},
        {"scenario-alignment", Polarity::Violation},
        {"correctness", Polarity::Violation},
        {"validation", Polarity::Violation},
        {"policy-objectives", Polarity::Match},
        {"categorization", Polarity::Violation},
        {"sector-impact", Polarity::Match},
        {"scenario-analysis", Polarity::Match},
    };
    return table;
}

} // namespace

std::string TaxonomyPath::str() const {
    std::string out;
    for (std::size_t i = 0; i < segments.size(); ++i) {
        if (i) out += '/';
        out += segments[i];
    }
    return out;
}

bool TaxonomyPath::valid() const {
    if (segments.empty()) return false;
    const TaxonomyNode* node = &taxonomy_tree();
    for (const auto& segment : segments) {
        const TaxonomyNode* next = nullptr;
        for (const auto& child : node->children)
            if (child.name == segment) next = &child;
        if (!next) return false;
        node = next;
    }
    return true;
}

bool TaxonomyPath::has_prefix(const TaxonomyPath& prefix) const {
    if (prefix.segments.size() > segments.size()) return false;
    for (std::size_t i = 0; i < prefix.segments.size(); ++i)
        if (prefix.segments[i] != segments[i]) return false;
    return true;
}

TaxonomyPath TaxonomyPath::parse(const std::string& slash_joined) {
    TaxonomyPath p;
    std::istringstream in(slash_joined);
    std::string segment;
    while (std::getline(in, segment, '/'))
        if (!segment.empty()) p.segments.push_back(segment);
    return p;
}

std::string polarity_name(Polarity p) {
    return p == Polarity::Violation ? "VIOLATION" : "MATCH";
}

std::string disposition_name(Disposition d) {
    switch (d) {
        case Disposition::Pending: return "pending";
        case Disposition::NotRelevant: return "not_relevant";
        case Disposition::Error: return "error";
    }
    throw Error("unreachable disposition");
}

Disposition parse_disposition(const std::string& name) {
    if (name == "pending") return Disposition::Pending;
    if (name == "not_relevant") return Disposition::NotRelevant;
    if (name == "error") return Disposition::Error;
    throw Error("invalid disposition '" + name + "'");
}

void validate_catalogue(const std::vector<RuleDef>& rules) {
    std::set<std::string> ids;
    for (const auto& rule : rules) {
        if (!ids.insert(rule.id).second) throw SchemaError("duplicate rule id " + rule.id);
        if (!rule.taxonomy.valid())
            throw SchemaError("rule " + rule.id + ": invalid taxonomy path " + rule.taxonomy.str());
        auto expected = category_polarity().find(rule.taxonomy.segments.back());
        if (expected == category_polarity().end())
            throw SchemaError("rule " + rule.id + ": taxonomy path is not a leaf category");
        if (expected->second != rule.polarity)
            throw SchemaError("rule " + rule.id + ": polarity " + polarity_name(rule.polarity) +
                              " conflicts with category " + rule.taxonomy.segments.back());
        if (rule.body_kind == RuleDef::BodyKind::Query && rule.query_text.empty())
            throw SchemaError("rule " + rule.id + ": empty query body");
        if (rule.body_kind == RuleDef::BodyKind::Native && rule.native_id.empty())
            throw SchemaError("rule " + rule.id + ": missing native check id");
    }
}

namespace {

std::set<std::string> placeholders_in(const std::string& text) {
    std::set<std::string> names;
    for (std::size_t i = 0; i < text.size(); ++i) {
        if (text[i] != '$') continue;
        std::size_t j = i + 1;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
            ++j;
        if (j > i + 1) names.insert(text.substr(i + 1, j - i - 1));
        i = j - 1;
    }
    return names;
}

} // namespace

RuleDef instantiate_template(const RuleDef& rule, const std::map<std::string, double>& params) {
    if (rule.params.empty()) throw Error("rule " + rule.id + " is not a template");
    std::set<std::string> declared(rule.params.begin(), rule.params.end());
    for (const auto& [name, value] : params) {
        if (!declared.count(name)) throw Error("rule " + rule.id + ": unknown parameter " + name);
        if (!std::isfinite(value))
            throw Error("rule " + rule.id + ": parameter " + name + " must be a finite number");
    }
    for (const auto& name : declared)
        if (!params.count(name)) throw Error("rule " + rule.id + ": missing parameter " + name);

    RuleDef concrete = rule;
    concrete.bound = params;
    std::string text = rule.query_text;
    for (const auto& [name, value] : params) {
        const std::string needle = "$" + name;
        std::string replacement = format_double(value);
        std::size_t pos = 0;
        while ((pos = text.find(needle, pos)) != std::string::npos) {
            text.replace(pos, needle.size(), replacement);
            pos += replacement.size();
        }
    }
    if (!placeholders_in(text).empty())
        throw Error("rule " + rule.id + ": unresolved placeholders remain");
    concrete.query_text = std::move(text);
    return concrete;
}

namespace {

struct DataColumn {
    const store::Table* table;
    int column;
};

struct FkColumn {
    const store::Table* table;
    int column;
    std::string target_table;
};

DataColumn data_column(const mapping::MappingSpec& spec, const store::Dataset& data,
                       const std::string& property) {
    const auto* d = spec.find_data_property(property);
    if (!d) throw LookupError("unmapped property '" + property + "'");
    const store::Table& table = data.table(d->table);
    int col = table.column_index(d->column);
    if (col < 0) throw SchemaError("table '" + d->table + "' lacks column '" + d->column + "'");
    return {&table, col};
}

FkColumn fk_column(const mapping::MappingSpec& spec, const store::Dataset& data,
                   const std::string& property) {
    const auto* o = spec.find_object_property(property);
    if (!o) throw LookupError("unmapped property '" + property + "'");
    const store::Table& table = data.table(o->source_table);
    int col = table.column_index(o->fk_column);
    if (col < 0)
        throw SchemaError("table '" + o->source_table + "' lacks column '" + o->fk_column + "'");
    return {&table, col, o->target_table};
}

Value fk_ref(const std::string& target_table, const Value& fk) {
    Ref ref{target_table, {}};
    if (const auto* i = std::get_if<std::int64_t>(&fk)) ref.key = *i;
    else ref.key = std::get<std::string>(fk);
    return ref;
}

bool sums_differ(double expected, double actual) {
    double scale = std::max(std::abs(expected), std::abs(actual));
    return std::abs(expected - actual) > kSumEqualityTol * scale;
}

std::vector<Finding> check_prodcom_derivation(const RuleDef& rule, const store::Dataset& data,
                                              const mapping::MappingSpec& spec) {
    auto prodcom = data_column(spec, data, "product_prodcom_code");
    auto nace = data_column(spec, data, "activity_nace_code");

    classification::CodeMap codes = classification::CodeMap::illustrative();
    for (const auto& row : nace.table->rows) {
        const auto& cell = row[static_cast<std::size_t>(nace.column)];
        try {
            codes.register_nace(classification::NaceCode::parse(std::get<std::string>(cell)));
        } catch (const ParseError&) {
            // malformed activity codes simply register nothing
        }
    }

    std::vector<Finding> findings;
    for (std::size_t r = 0; r < prodcom.table->rows.size(); ++r) {
        const auto& cell = prodcom.table->rows[r][static_cast<std::size_t>(prodcom.column)];
        const std::string& code = std::get<std::string>(cell);
        bool resolved = false;
        try {
            resolved = codes.prodcom_to_nace(classification::ProdcomCode::parse(code)).has_value();
        } catch (const ParseError&) {
            resolved = false; // malformed codes derive from nothing
        }
        if (!resolved) {
            Finding f;
            f.rule_id = rule.id;
            f.polarity = rule.polarity;
            f.bindings["product"] = prodcom.table->row_ref(r);
            f.bindings["prodcom_code"] = code;
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

std::vector<Finding> check_unit_pair(const RuleDef& rule, const store::Dataset& data,
                                     const mapping::MappingSpec& spec, const std::string& from,
                                     const std::string& to) {
    auto plant = fk_column(spec, data, "fuel_use_plant_ref");
    auto year = data_column(spec, data, "fuel_use_year");
    auto fuel_type = data_column(spec, data, "fuel_use_fuel_type");
    auto quantity = data_column(spec, data, "fuel_use_quantity");
    auto unit = data_column(spec, data, "fuel_use_unit");

    const auto registry = units::ConversionRegistry::standard();
    const store::Table& table = *plant.table;

    // (plant, year, fuel_type) -> rows carrying the source unit
    std::map<std::tuple<Value, Value, std::string>, std::vector<std::size_t>> from_rows;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (std::get<std::string>(row[static_cast<std::size_t>(unit.column)]) != from) continue;
        from_rows[{row[static_cast<std::size_t>(plant.column)],
                   row[static_cast<std::size_t>(year.column)],
                   std::get<std::string>(row[static_cast<std::size_t>(fuel_type.column)])}]
            .push_back(r);
    }

    std::vector<Finding> findings;
    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        if (std::get<std::string>(row[static_cast<std::size_t>(unit.column)]) != to) continue;
        auto key = std::make_tuple(row[static_cast<std::size_t>(plant.column)],
                                   row[static_cast<std::size_t>(year.column)],
                                   std::get<std::string>(row[static_cast<std::size_t>(fuel_type.column)]));
        auto it = from_rows.find(key);
        if (it == from_rows.end()) continue;
        double to_value = as_double(row[static_cast<std::size_t>(quantity.column)]);
        for (std::size_t fr : it->second) {
            double from_value =
                as_double(table.rows[fr][static_cast<std::size_t>(quantity.column)]);
            double expected = registry.convert(from_value, from, to);
            if (sums_differ(expected, to_value)) {
                Finding f;
                f.rule_id = rule.id;
                f.polarity = rule.polarity;
                f.bindings["plant"] = fk_ref(plant.target_table,
                                             row[static_cast<std::size_t>(plant.column)]);
                f.bindings["year"] = row[static_cast<std::size_t>(year.column)];
                f.bindings["fuel_type"] =
                    row[static_cast<std::size_t>(fuel_type.column)];
                f.bindings["from_quantity"] = from_value;
                f.bindings["to_quantity"] = to_value;
                f.bindings["expected_to_quantity"] = expected;
                findings.push_back(std::move(f));
            }
        }
    }
    return findings;
}

std::vector<Finding> check_subsector_sum(const RuleDef& rule, const store::Dataset& data,
                                         const mapping::MappingSpec& spec) {
    auto sub_ref = fk_column(spec, data, "subsector_energy_subsector_ref");
    auto sub_year = data_column(spec, data, "subsector_energy_year");
    auto sub_total = data_column(spec, data, "subsector_energy_total_consumption");
    auto comp_ref = fk_column(spec, data, "company_energy_subsector_ref");
    auto comp_year = data_column(spec, data, "company_energy_year");
    auto comp_value = data_column(spec, data, "company_energy_consumption");

    // Company consumptions accumulate in row order per (subsector, year).
    std::map<std::pair<Value, Value>, double> sums;
    const store::Table& companies = *comp_ref.table;
    for (const auto& row : companies.rows) {
        auto key = std::make_pair(row[static_cast<std::size_t>(comp_ref.column)],
                                  row[static_cast<std::size_t>(comp_year.column)]);
        sums[key] += as_double(row[static_cast<std::size_t>(comp_value.column)]);
    }

    std::vector<Finding> findings;
    const store::Table& subsectors = *sub_ref.table;
    for (std::size_t r = 0; r < subsectors.rows.size(); ++r) {
        const auto& row = subsectors.rows[r];
        auto key = std::make_pair(row[static_cast<std::size_t>(sub_ref.column)],
                                  row[static_cast<std::size_t>(sub_year.column)]);
        double total = as_double(row[static_cast<std::size_t>(sub_total.column)]);
        auto it = sums.find(key);
        double actual = it == sums.end() ? 0.0 : it->second;
        if (sums_differ(total, actual)) {
            Finding f;
            f.rule_id = rule.id;
            f.polarity = rule.polarity;
            f.bindings["subsector"] =
                fk_ref(sub_ref.target_table, row[static_cast<std::size_t>(sub_ref.column)]);
            f.bindings["year"] = row[static_cast<std::size_t>(sub_year.column)];
            f.bindings["total_consumption"] = total;
            f.bindings["company_sum"] = actual;
            findings.push_back(std::move(f));
        }
    }
    return findings;
}

std::vector<Finding> check_natural_gas_factor(const RuleDef& rule, const store::Dataset& data,
                                              const mapping::MappingSpec& spec) {
    auto fuel_plant = fk_column(spec, data, "fuel_use_plant_ref");
    auto fuel_year = data_column(spec, data, "fuel_use_year");
    auto fuel_type = data_column(spec, data, "fuel_use_fuel_type");
    auto fuel_qty = data_column(spec, data, "fuel_use_quantity");
    auto fuel_unit = data_column(spec, data, "fuel_use_unit");
    auto co2_plant = fk_column(spec, data, "total_plant_co2_emissions_plant_ref");
    auto co2_year = data_column(spec, data, "total_plant_co2_emissions_year");
    auto co2_ng = data_column(spec, data, "total_plant_co2_emissions_ng_quantity");

    const auto registry = units::ConversionRegistry::standard();

    std::map<std::pair<Value, Value>, std::vector<double>> ng_by_plant_year;
    const store::Table& emissions = *co2_plant.table;
    for (const auto& row : emissions.rows) {
        ng_by_plant_year[{row[static_cast<std::size_t>(co2_plant.column)],
                          row[static_cast<std::size_t>(co2_year.column)]}]
            .push_back(as_double(row[static_cast<std::size_t>(co2_ng.column)]));
    }

    std::vector<Finding> findings;
    const store::Table& fuels = *fuel_plant.table;
    for (std::size_t r = 0; r < fuels.rows.size(); ++r) {
        const auto& row = fuels.rows[r];
        if (std::get<std::string>(row[static_cast<std::size_t>(fuel_type.column)]) != "natural_gas")
            continue;
        const std::string& unit = std::get<std::string>(row[static_cast<std::size_t>(fuel_unit.column)]);
        if (!registry.convertible(unit, "TJ")) continue; // no stated path, not checkable
        double tj = registry.convert(as_double(row[static_cast<std::size_t>(fuel_qty.column)]),
                                     unit, "TJ");
        auto it = ng_by_plant_year.find({row[static_cast<std::size_t>(fuel_plant.column)],
                                         row[static_cast<std::size_t>(fuel_year.column)]});
        if (it == ng_by_plant_year.end()) continue;
        for (double ng : it->second) {
            if (ng > kNaturalGasEmissionFactor * tj) {
                Finding f;
                f.rule_id = rule.id;
                f.polarity = rule.polarity;
                f.bindings["plant"] = fk_ref(fuel_plant.target_table,
                                             row[static_cast<std::size_t>(fuel_plant.column)]);
                f.bindings["year"] = row[static_cast<std::size_t>(fuel_year.column)];
                f.bindings["fuel_quantity_tj"] = tj;
                f.bindings["ng_co2"] = ng;
                findings.push_back(std::move(f));
            }
        }
    }
    return findings;
}

std::vector<Finding> check_consumer_band_ordering(const RuleDef& rule, const store::Dataset& data,
                                                  const mapping::MappingSpec& spec) {
    auto consumption = data_column(spec, data, "consumer_monthly_consumption");
    auto taxation = data_column(spec, data, "consumer_a2_taxation");
    const store::Table& consumers = *consumption.table;

    std::vector<std::size_t> band1, band3, band4;
    for (std::size_t r = 0; r < consumers.rows.size(); ++r) {
        int band = classify_consumer(
            as_double(consumers.rows[r][static_cast<std::size_t>(consumption.column)]));
        if (band == 1) band1.push_back(r);
        else if (band == 3) band3.push_back(r);
        else if (band == 4) band4.push_back(r);
    }

    auto a2 = [&](std::size_t r) {
        return as_double(consumers.rows[r][static_cast<std::size_t>(taxation.column)]);
    };

    // c1 in band 3, c2 in band 1, c3 in band 4: require t2 > t1 > t3.
    std::vector<Finding> findings;
    for (std::size_t c1 : band3) {
        for (std::size_t c2 : band1) {
            for (std::size_t c3 : band4) {
                double t1 = a2(c1), t2 = a2(c2), t3 = a2(c3);
                if (t2 > t1 && t1 > t3) continue;
                Finding f;
                f.rule_id = rule.id;
                f.polarity = rule.polarity;
                f.bindings["c1"] = consumers.row_ref(c1);
                f.bindings["c2"] = consumers.row_ref(c2);
                f.bindings["c3"] = consumers.row_ref(c3);
                f.bindings["t1"] = t1;
                f.bindings["t2"] = t2;
                f.bindings["t3"] = t3;
                findings.push_back(std::move(f));
            }
        }
    }
    return findings;
}

std::vector<Finding> run_native(const RuleDef& rule, const store::Dataset& data,
                                const mapping::MappingSpec& spec) {
    if (rule.native_id == "prodcom-derivation") return check_prodcom_derivation(rule, data, spec);
    if (rule.native_id.rfind("unit-pair:", 0) == 0) {
        auto rest = rule.native_id.substr(10);
        auto colon = rest.find(':');
        return check_unit_pair(rule, data, spec, rest.substr(0, colon), rest.substr(colon + 1));
    }
    if (rule.native_id == "subsector-sum") return check_subsector_sum(rule, data, spec);
    if (rule.native_id == "natural-gas-emission-factor")
        return check_natural_gas_factor(rule, data, spec);
    if (rule.native_id == "consumer-band-ordering")
        return check_consumer_band_ordering(rule, data, spec);
    throw LookupError("unknown native check '" + rule.native_id + "'");
}

} // namespace

std::vector<Finding> run_rule(const RuleDef& rule, const store::Dataset& data,
                              const mapping::MappingSpec& spec) {
    if (rule.is_template()) throw Error("rule " + rule.id + " is an unbound template");
    if (rule.body_kind == RuleDef::BodyKind::Native) return run_native(rule, data, spec);

    query::QueryAst ast = query::parse_query(rule.query_text);
    query::Plan plan = query::plan_query(ast, spec);
    query::ResultSet result = query::execute_plan(plan, data);

    std::vector<Finding> findings;
    findings.reserve(result.rows.size());
    for (const auto& row : result.rows) {
        Finding f;
        f.rule_id = rule.id;
        f.polarity = rule.polarity;
        for (std::size_t c = 0; c < result.columns.size(); ++c)
            f.bindings[result.columns[c]] = row[c];
        findings.push_back(std::move(f));
    }
    return findings;
}

int classify_consumer(double monthly_consumption_gwh) {
    if (monthly_consumption_gwh < 0.0 || !std::isfinite(monthly_consumption_gwh))
        throw Error("monthly consumption must be non-negative");
    if (monthly_consumption_gwh <= 4.0) return 1;
    if (monthly_consumption_gwh <= 8.0) return 2;
    if (monthly_consumption_gwh <= 12.0) return 3;
    return 4;
}

namespace {

RuleResult run_recorded(const RuleDef& rule, const store::Dataset& data,
                        const mapping::MappingSpec& spec) {
    RuleResult result;
    result.id = rule.id;
    result.taxonomy = rule.taxonomy;
    result.polarity = rule.polarity;
    try {
        result.findings = run_rule(rule, data, spec);
        result.status = "ok";
    } catch (const std::exception& e) {
        result.status = "error";
        result.error = e.what();
    }
    return result;
}

} // namespace

Report run_acquisition_service(const store::Dataset& data, const mapping::MappingSpec& spec,
                               const std::string& dataset_id, const std::string& generated_at,
                               const std::vector<std::string>& rule_filter) {
    std::set<std::string> wanted(rule_filter.begin(), rule_filter.end());
    for (const auto& id : wanted) find_rule(id); // unknown ids are caller errors

    Report report;
    report.dataset_id = dataset_id;
    report.generated_at = generated_at;
    for (const auto& rule : load_catalogue()) {
        if (rule.taxonomy.root() != "data-acquisition") continue;
        if (!wanted.empty() && !wanted.count(rule.id)) continue;
        if (rule.is_template()) {
            RuleResult skipped;
            skipped.id = rule.id;
            skipped.taxonomy = rule.taxonomy;
            skipped.polarity = rule.polarity;
            skipped.status = "skipped";
            report.rules.push_back(std::move(skipped));
            continue;
        }
        report.rules.push_back(run_recorded(rule, data, spec));
    }
    return report;
}

Report run_analysis_service(const store::Dataset& data, const mapping::MappingSpec& spec,
                            const std::vector<std::string>& rule_ids,
                            const std::map<std::string, std::map<std::string, double>>& params,
                            const std::string& dataset_id, const std::string& generated_at) {
    Report report;
    report.dataset_id = dataset_id;
    report.generated_at = generated_at;
    for (const auto& id : rule_ids) {
        const RuleDef& rule = find_rule(id);
        if (rule.taxonomy.root() != "data-analysis")
            throw Error("rule " + id + " is not a data-analysis rule");
        if (rule.is_template()) {
            auto it = params.find(id);
            if (it == params.end()) throw Error("rule " + id + ": template parameters required");
            report.rules.push_back(run_recorded(instantiate_template(rule, it->second), data, spec));
        } else {
            report.rules.push_back(run_recorded(rule, data, spec));
        }
    }
    return report;
}

void annotate_finding(Report& report, const std::string& rule_id, std::size_t finding_index,
                      Disposition disposition) {
    for (auto& rule : report.rules) {
        if (rule.id != rule_id) continue;
        if (finding_index >= rule.findings.size())
            throw LookupError("rule " + rule_id + " has no finding #" +
                              std::to_string(finding_index));
        rule.findings[finding_index].disposition = disposition;
        return;
    }
    throw LookupError("report has no rule '" + rule_id + "'");
}

} // namespace ets::rules
