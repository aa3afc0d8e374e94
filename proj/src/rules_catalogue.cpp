#include "ets/errors.hpp"
#include "ets/rules.hpp"

namespace ets::rules {

const std::string& appendix_rule_text(int number) {
    static const std::string rule1 = R"Q(SELECT DISTINCT ?plant ?fuel_quantity ?ng_quantity ?year WHERE {
    ?x vocab:total_plant_co2_emissions_natural_gas_burning_ref ?nb ;
      vocab:total_plant_co2_emissions_unit_of_measure "tCO2" ;
      vocab:total_plant_co2_emissions_plant_ref ?plant ;
      vocab:total_plant_co2_emissions_ng_quantity ?ng_quantity ;
      vocab:total_plant_co2_emissions_year ?year .
    ?nb a vocab:natural_gas_burning ;
      vocab:natural_gas_burning_quantity ?fuel_quantity ;
      vocab:natural_gas_burning_unit_of_measure "Sm3" ;
      vocab:natural_gas_burning_plant_ref ?plant ;
      vocab:natural_gas_burning_year ?year .
    ?plant a vocab:plant .
  FILTER ( (2000 * ?ng_quantity) < (1.961 * ?fuel_quantity) ) }
)Q";
    static const std::string rule2 = R"Q(SELECT DISTINCT ?plant ?aCO2 ?vCO2 ?year WHERE {
    ?x vocab:allocated_co2_emissions_quantity ?aCO2 ;
      vocab:allocated_co2_emissions_plant_ref ?plant ;
      vocab:allocated_co2_emissions_year ?year .
    ?y vocab:total_plant_co2_emissions_quantity ?vCO2 ;
      vocab:total_plant_co2_emissions_plant_ref ?plant ;
      vocab:total_plant_co2_emissions_year ?year .
    ?plant a vocab:plant .
  FILTER ( ?vCO2 > ?aCO2 ) }
)Q";
    static const std::string rule3 = R"Q(SELECT DISTINCT ?sector ?year2 WHERE {
    ?x vocab:co2_price_value ?c1 ;
      vocab:co2_price_year ?year1 .
    ?z vocab:co2_price_value ?c2 ;
      vocab:co2_price_year ?year2 .
    ?y vocab:co2_emissions_by_industrial_sector_quantity ?e1 ;
      vocab:co2_emissions_by_industrial_sector_year ?year1 ;
      vocab:co2_emissions_by_industrial_sector_industrial_sector_ref ?sector .
    ?w vocab:co2_emissions_by_industrial_sector_quantity ?e2 ;
      vocab:co2_emissions_by_industrial_sector_year ?year2 ;
      vocab:co2_emissions_by_industrial_sector_industrial_sector_ref ?sector .
    ?sector a vocab:industrial_sector .
  FILTER ( ((?c2 - ?c1)/?c1 > 0.1) && ((?e1 - ?e2)/?e1 > 0.001) && (?year2 = ?year1 + 1) ) }
)Q";
    static const std::string rule4 = R"Q(SELECT DISTINCT ?sector ?e1 ?e2 ?ep1 ?ep2 ?year2 WHERE {
    ?annual_ets_scenario_by_industrial_sector1 a vocab:annual_ets_scenario_by_industrial_sector ;
      vocab:annual_ets_scenario_by_industrial_sector_employment ?e1 ;
      vocab:annual_ets_scenario_by_industrial_sector_industrial_sector_ref ?sector ;
      vocab:annual_ets_scenario_by_industrial_sector_annual_ets_scenario_ref ?annual_scenario .
    ?annual_ets_scenario_by_industrial_sector2 a vocab:annual_ets_scenario_by_industrial_sector ;
      vocab:annual_ets_scenario_by_industrial_sector_employment ?e2 ;
      vocab:annual_ets_scenario_by_industrial_sector_industrial_sector_ref ?sector ;
      vocab:annual_ets_scenario_by_industrial_sector_annual_ets_scenario_ref ?annual_scenario2 .
    ?sector a vocab:industrial_sector .
    ?annual_scenario a vocab:annual_ets_scenario ;
      vocab:annual_ets_scenario_energy_price ?ep1 ;
      vocab:annual_ets_scenario_year ?year1 ;
      vocab:annual_ets_scenario_scenario ?scenario .
    ?annual_scenario2 a vocab:annual_ets_scenario ;
      vocab:annual_ets_scenario_energy_price ?ep2 ;
      vocab:annual_ets_scenario_year ?year2 ;
      vocab:annual_ets_scenario_scenario ?scenario .
  FILTER ( (?year2 = ?year1 + 5) && (?ep2 > ?ep1) && (?e2 < ?e1) ) }
)Q";
    switch (number) {
        case 1: return rule1;
        case 2: return rule2;
        case 3: return rule3;
        case 4: return rule4;
        default: throw LookupError("no such conformance rule: RULE" + std::to_string(number));
    }
}

namespace {

// RULE3 generalized: price increase by $V1, sector emissions decrease by
// $V2, over a $DY-year offset.
const std::string kPolicyTemplateText = R"Q(SELECT DISTINCT ?sector ?year2 WHERE {
    ?x vocab:co2_price_value ?c1 ;
      vocab:co2_price_year ?year1 .
    ?z vocab:co2_price_value ?c2 ;
      vocab:co2_price_year ?year2 .
    ?y vocab:co2_emissions_by_industrial_sector_quantity ?e1 ;
      vocab:co2_emissions_by_industrial_sector_year ?year1 ;
      vocab:co2_emissions_by_industrial_sector_industrial_sector_ref ?sector .
    ?w vocab:co2_emissions_by_industrial_sector_quantity ?e2 ;
      vocab:co2_emissions_by_industrial_sector_year ?year2 ;
      vocab:co2_emissions_by_industrial_sector_industrial_sector_ref ?sector .
    ?sector a vocab:industrial_sector .
  FILTER ( ((?c2 - ?c1)/?c1 > $V1) && ((?e1 - ?e2)/?e1 > $V2) && (?year2 = ?year1 + $DY) ) }
)Q";

const std::string kSectorImpactText = R"Q(SELECT DISTINCT ?sector ?co2 ?year WHERE {
    ?x vocab:co2_emissions_by_industrial_sector_quantity ?co2 ;
      vocab:co2_emissions_by_industrial_sector_year ?year ;
      vocab:co2_emissions_by_industrial_sector_industrial_sector_ref ?sector .
    ?sector a vocab:industrial_sector .
  FILTER ( ?co2 <= $X ) }
)Q";

TaxonomyPath tax(std::initializer_list<const char*> segments) {
    TaxonomyPath p;
    for (const char* s : segments) p.segments.emplace_back(s);
    return p;
}

std::vector<RuleDef> build_catalogue() {
    std::vector<RuleDef> rules;

    RuleDef harm1;
    harm1.id = "R-HARM-1";
    harm1.taxonomy = tax({"data-acquisition", "harmonization", "classification-mapping"});
    harm1.polarity = Polarity::Violation;
    harm1.body_kind = RuleDef::BodyKind::Native;
    harm1.native_id = "prodcom-derivation";
    harm1.description = "Every product's PRODCOM code must derive from a registered NACE activity.";
    rules.push_back(std::move(harm1));

    RuleDef harm2;
    harm2.id = "R-HARM-2";
    harm2.taxonomy = tax({"data-acquisition", "harmonization", "unit-conversion"});
    harm2.polarity = Polarity::Violation;
    harm2.body_kind = RuleDef::BodyKind::Native;
    harm2.native_id = "unit-pair:tec:tep";
    harm2.description = "Fuel quantities recorded in both tec and tep must agree with the "
                        "0.7 tec-to-tep factor.";
    rules.push_back(std::move(harm2));

    RuleDef harm3;
    harm3.id = "R-HARM-3";
    harm3.taxonomy = tax({"data-acquisition", "harmonization", "unit-conversion"});
    harm3.polarity = Polarity::Violation;
    harm3.body_kind = RuleDef::BodyKind::Native;
    harm3.native_id = "unit-pair:tep:GJ";
    harm3.description = "Fuel quantities recorded in both tep and GJ must agree with the "
                        "41.868 tep-to-GJ factor.";
    rules.push_back(std::move(harm3));

    RuleDef harm4;
    harm4.id = "R-HARM-4";
    harm4.taxonomy = tax({"data-acquisition", "harmonization", "scenario-alignment"});
    harm4.polarity = Polarity::Violation;
    harm4.body_kind = RuleDef::BodyKind::Native;
    harm4.native_id = "subsector-sum";
    harm4.description = "Per subsector and year, company energy consumptions must sum to the "
                        "subsector total.";
    rules.push_back(std::move(harm4));

    RuleDef ver1;
    ver1.id = "R-VER-1";
    ver1.taxonomy = tax({"data-acquisition", "verification-validation", "correctness"});
    ver1.polarity = Polarity::Violation;
    ver1.body_kind = RuleDef::BodyKind::Native;
    ver1.native_id = "natural-gas-emission-factor";
    ver1.description = "CO2 attributed to natural gas burning may not exceed 56 tCO2 per TJ "
                       "of natural gas used.";
    rules.push_back(std::move(ver1));

    RuleDef ver2;
    ver2.id = "R-VER-2";
    ver2.taxonomy = tax({"data-acquisition", "verification-validation", "validation"});
    ver2.polarity = Polarity::Violation;
    ver2.body_kind = RuleDef::BodyKind::Query;
    ver2.query_text = appendix_rule_text(2);
    ver2.description = "Per plant and year, verified CO2 emissions must not exceed the "
                       "allocated CO2 emissions.";
    rules.push_back(std::move(ver2));

    RuleDef app1;
    app1.id = "R-APP-1";
    app1.taxonomy = tax({"data-acquisition", "verification-validation", "correctness"});
    app1.polarity = Polarity::Violation;
    app1.body_kind = RuleDef::BodyKind::Query;
    app1.query_text = appendix_rule_text(1);
    app1.description = "Reported natural-gas CO2 must be plausible against the quantity of "
                       "natural gas burnt.";
    rules.push_back(std::move(app1));

    RuleDef polt1;
    polt1.id = "R-POL-T1";
    polt1.taxonomy = tax({"data-acquisition", "verification-validation", "policy-objectives"});
    polt1.polarity = Polarity::Match;
    polt1.body_kind = RuleDef::BodyKind::Query;
    polt1.query_text = kPolicyTemplateText;
    polt1.params = {"V1", "V2", "DY"};
    polt1.description = "Template: sectors whose emissions fell by more than V2 after a CO2 "
                        "price increase above V1 over DY years.";
    rules.push_back(std::move(polt1));

    RuleDef cat1;
    cat1.id = "R-CAT-1";
    cat1.taxonomy = tax({"data-analysis", "categorization"});
    cat1.polarity = Polarity::Violation;
    cat1.body_kind = RuleDef::BodyKind::Native;
    cat1.native_id = "consumer-band-ordering";
    cat1.description = "A2 taxation must decrease from band-1 consumers (<= 4 GWh) to band-3 "
                       "consumers ((8, 12] GWh) to band-4 consumers (> 12 GWh).";
    rules.push_back(std::move(cat1));

    RuleDef imp1;
    imp1.id = "R-IMP-1";
    imp1.taxonomy = tax({"data-analysis", "impact-analysis", "sector-impact"});
    imp1.polarity = Polarity::Match;
    imp1.body_kind = RuleDef::BodyKind::Query;
    imp1.query_text = kSectorImpactText;
    imp1.params = {"X"};
    imp1.description = "Template: sector-year emissions at or below the threshold X.";
    rules.push_back(std::move(imp1));

    RuleDef imp2;
    imp2.id = "R-IMP-2";
    imp2.taxonomy = tax({"data-analysis", "impact-analysis", "scenario-analysis"});
    imp2.polarity = Polarity::Match;
    imp2.body_kind = RuleDef::BodyKind::Query;
    imp2.query_text = appendix_rule_text(4);
    imp2.description = "Sectors whose employment declined while the energy price rose over a "
                       "five-year scenario span.";
    rules.push_back(std::move(imp2));

    return rules;
}

} // namespace

void validate_catalogue(const std::vector<RuleDef>& rules); // defined in rules.cpp

const std::vector<RuleDef>& load_catalogue() {
    static const std::vector<RuleDef> rules = [] {
        auto r = build_catalogue();
        validate_catalogue(r);
        return r;
    }();
    return rules;
}

const RuleDef& find_rule(const std::string& id) {
    for (const auto& r : load_catalogue())
        if (r.id == id) return r;
    throw LookupError("unknown rule '" + id + "'");
}

} // namespace ets::rules
