#include "ets/mapping.hpp"

namespace ets::mapping {

// Property names follow the vocab identifiers of the rule catalogue.
const std::string& MappingSpec::default_text() {
    static const std::string text = R"MAP(# Default vocab-to-schema mapping

class plant table plant key id
class industrial_sector table industrial_sector key id
class natural_gas_burning table natural_gas_burning key id
class total_plant_co2_emissions table total_plant_co2_emissions key id
class allocated_co2_emissions table allocated_co2_emissions key id
class co2_price table co2_price key year
class co2_emissions_by_industrial_sector table co2_emissions_by_industrial_sector key id
class annual_ets_scenario table annual_ets_scenario key id
class annual_ets_scenario_by_industrial_sector table annual_ets_scenario_by_industrial_sector key id
class consumer table consumer key id
class product table product key id
class activity table activity key id
class fuel_use table fuel_use key id
class subsector_energy table subsector_energy key id
class company_energy table company_energy key id

dprop plant_name plant.name
dprop plant_nace_code plant.nace_code
dprop plant_ets_activity plant.ets_activity
oprop plant_sector_ref plant.sector_ref -> industrial_sector

dprop industrial_sector_name industrial_sector.name

oprop natural_gas_burning_plant_ref natural_gas_burning.plant_ref -> plant
dprop natural_gas_burning_year natural_gas_burning.year
dprop natural_gas_burning_quantity natural_gas_burning.quantity
dprop natural_gas_burning_unit_of_measure natural_gas_burning.unit_of_measure

oprop total_plant_co2_emissions_plant_ref total_plant_co2_emissions.plant_ref -> plant
oprop total_plant_co2_emissions_natural_gas_burning_ref total_plant_co2_emissions.natural_gas_burning_ref -> natural_gas_burning
dprop total_plant_co2_emissions_year total_plant_co2_emissions.year
dprop total_plant_co2_emissions_quantity total_plant_co2_emissions.quantity
dprop total_plant_co2_emissions_ng_quantity total_plant_co2_emissions.ng_quantity
dprop total_plant_co2_emissions_unit_of_measure total_plant_co2_emissions.unit_of_measure

oprop allocated_co2_emissions_plant_ref allocated_co2_emissions.plant_ref -> plant
dprop allocated_co2_emissions_year allocated_co2_emissions.year
dprop allocated_co2_emissions_quantity allocated_co2_emissions.quantity

dprop co2_price_year co2_price.year
dprop co2_price_value co2_price.value

oprop co2_emissions_by_industrial_sector_industrial_sector_ref co2_emissions_by_industrial_sector.sector_ref -> industrial_sector
dprop co2_emissions_by_industrial_sector_year co2_emissions_by_industrial_sector.year
dprop co2_emissions_by_industrial_sector_quantity co2_emissions_by_industrial_sector.quantity

dprop annual_ets_scenario_scenario annual_ets_scenario.scenario
dprop annual_ets_scenario_year annual_ets_scenario.year
dprop annual_ets_scenario_energy_price annual_ets_scenario.energy_price

oprop annual_ets_scenario_by_industrial_sector_annual_ets_scenario_ref annual_ets_scenario_by_industrial_sector.annual_ets_scenario_ref -> annual_ets_scenario
oprop annual_ets_scenario_by_industrial_sector_industrial_sector_ref annual_ets_scenario_by_industrial_sector.sector_ref -> industrial_sector
dprop annual_ets_scenario_by_industrial_sector_employment annual_ets_scenario_by_industrial_sector.employment

dprop consumer_monthly_consumption consumer.monthly_consumption
dprop consumer_a2_taxation consumer.a2_taxation

dprop product_prodcom_code product.prodcom_code

dprop activity_nace_code activity.nace_code

oprop fuel_use_plant_ref fuel_use.plant_ref -> plant
dprop fuel_use_year fuel_use.year
dprop fuel_use_fuel_type fuel_use.fuel_type
dprop fuel_use_quantity fuel_use.quantity
dprop fuel_use_unit fuel_use.unit

oprop subsector_energy_subsector_ref subsector_energy.subsector_ref -> industrial_sector
dprop subsector_energy_year subsector_energy.year
dprop subsector_energy_total_consumption subsector_energy.total_consumption

dprop company_energy_company company_energy.company
oprop company_energy_subsector_ref company_energy.subsector_ref -> industrial_sector
dprop company_energy_year company_energy.year
dprop company_energy_consumption company_energy.consumption
)MAP";
    return text;
}

} // namespace ets::mapping
