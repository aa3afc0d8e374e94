#include "ets/ontology.hpp"

namespace ets::ontology {

// Foundational concepts of the three views plus the NIMs-derived contextual
// subset bound by the default mapping.
const std::string& Ontology::seed_text() {
    static const std::string text = R"SEED(# EREON seed ontology
# Foundational concepts, grouped in the contextual, scenario and policy views.

concept "ETS-related Contextual Domain" views=contextual "Gathers the entities providing the contextual information at the basis of policy definition and ETS scenario development."
concept "Emissions Trading System" views=contextual "Scheme for trading greenhouse gas emissions allowances within the EU community, promoting cost-effective emission reductions."
concept "Stakeholder" views=contextual,policy "A person, group or organization that has an interest or a concern in a policy."
concept "Societal System" views=contextual "Set of social relations designed and analysed as a complex of elements with interdependent laws within a surrounding environment."
concept "Environment" views=contextual "Set of all elements that can influence directly or indirectly the natural evolution of human, animal and plant life."
concept "Production System" views=contextual "Firms, companies and enterprises generating products using raw materials, machinery, work and capital."
concept "Market" views=contextual "A virtual or physical place, or a process, by which the prices of goods and services are established."
concept "Low Carbon Technology" views=contextual "Technology characterised by low carbon emissions, normally innovative, meant to replace high-emission machines and utilities."
concept "Energy" views=contextual "A property of the physical world on which modern life relies; its consumption heavily contributes to CO2 emissions."

concept "Scenario" views=scenario "A coherent, internally consistent and plausible description of a possible future state of the world."
concept "Business As Usual" views=scenario "A scenario assuming that current trends of the status of ETS-related entities are maintained, without additional constraints."
concept "Backcasted Scenario" views=scenario "A scenario built by describing a desired future and identifying the direction connecting that future to the present."
concept "Forecasted Scenario" views=scenario "A scenario obtained by predicting the future based on current analysis, technologies and policies."
concept "Computational Model" views=scenario "A technical-economic model of a system, used to evaluate energy plans, environmental policies and mitigation scenarios."

concept "ETS Policy" views=policy "A governmental regulation aimed at achieving targets related to CO2 emissions reduction through a set of measures, under national and international constraints."
concept "ETS Target" views=policy "A desired state of affairs related to the ETS; it drives the policy definition process."
concept "Constraint" views=policy "Any kind of limitation or restriction to be considered in defining an ETS policy."
concept "Measure" views=policy "An action or procedure intended as a means to an end."
concept "Impact" views=policy,scenario "The estimated effects of a policy."

# NIMs-derived contextual subset

concept "Plant" views=contextual "An industrial installation subject to ETS regulation, identified by its NACE code and ETS activity."
concept "Sub-installation" views=contextual "A portion of a plant tracked separately for allowance allocation purposes."
concept "Emissions" views=contextual "Release of greenhouse gases into the atmosphere by an ETS-regulated activity."
concept "CO2 Emission" views=contextual "Emission of carbon dioxide, the reference gas of the ETS."
concept "Fuel" views=contextual "Combustible material whose use originates emissions."
concept "Natural Gas" views=contextual "Gaseous fossil fuel, measured in standard cubic meters."
concept "Coal" views=contextual "Solid fossil fuel, measured in tons of coal equivalent."
concept "Petroleum" views=contextual "Liquid fossil fuel, measured in tons of petroleum equivalent."
concept "Heat" views=contextual "Measurable thermal energy produced or consumed by sub-installations."
concept "Electricity" views=contextual "Electrical energy produced or consumed by plants."
concept "Product" views=contextual "An industrial product of an ETS activity, identified by a PRODCOM code."
concept "Activity" views=contextual "An economic or industrial activity identified by a NACE code."
concept "ETS Sector" views=contextual "A sector of the productive system covered by the ETS."
concept "Industrial Sector" views=contextual "An industrial macro-sector aggregating plants for sector-level studies."
concept "Iron & Steel Industrial Sector" views=contextual "The industrial sector comprising iron and steel production plants."
concept "Consumer" views=contextual "A non-domestic electricity consumer, classified by monthly consumption bands."
concept "Natural Gas Burning" views=contextual "The burning of a quantity of natural gas by a plant in a given year."
concept "Total Plant CO2 Emissions" views=contextual "The verified total CO2 emissions of a plant in a given year."
concept "Allocated CO2 Emissions" views=contextual "The CO2 emissions allowance allocated to a plant for a given year."
concept "CO2 Price" views=contextual "The annual market price of one CO2 emission allowance."
concept "CO2 Emissions By Industrial Sector" views=contextual "Aggregate CO2 emissions of an industrial sector in a given year."
concept "Fuel Use" views=contextual "A quantity of a fuel used by a plant in a given year, expressed in a stated unit."
concept "Annual ETS Scenario" views=scenario "One year of an ETS scenario projection, carrying the projected energy price."
concept "Annual ETS Scenario By Industrial Sector" views=scenario "Sector-level figures of an annual ETS scenario, such as employment."
concept "Subsector Energy" views=contextual,scenario "The overall energy consumption of an ETS subsector in a given year."
concept "Company Energy" views=contextual,scenario "The energy consumption of a single company of an ETS subsector in a given year."

isa "Business As Usual" "Scenario"
isa "Backcasted Scenario" "Scenario"
isa "Forecasted Scenario" "Scenario"
isa "CO2 Emission" "Emissions"
isa "Total Plant CO2 Emissions" "CO2 Emission"
isa "Allocated CO2 Emissions" "CO2 Emission"
isa "CO2 Emissions By Industrial Sector" "CO2 Emission"
isa "Natural Gas" "Fuel"
isa "Coal" "Fuel"
isa "Petroleum" "Fuel"
isa "Industrial Sector" "ETS Sector"
isa "Iron & Steel Industrial Sector" "Industrial Sector"

partof "Plant" "Emissions Trading System"
partof "Sub-installation" "Plant"
partof "ETS Sector" "Emissions Trading System"
partof "Annual ETS Scenario" "Scenario"
partof "Annual ETS Scenario By Industrial Sector" "Annual ETS Scenario"

rel hasImpactOn "Emissions Trading System" "Societal System"
rel hasImpactOn "Measure" "Emissions Trading System"
rel originatedBy "Total Plant CO2 Emissions" "Natural Gas Burning"
rel uses "Plant" "Fuel"
rel derivesFromNace "Product" "Activity"
rel achieves "ETS Policy" "ETS Target"
rel evaluatedBy "Impact" "Scenario"
)SEED";
    return text;
}

} // namespace ets::ontology
