#include "ets/datagen.hpp"

#include "ets/errors.hpp"
#include "ets/rng.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

namespace ets::datagen {

namespace {

// Values sampled at a rule's boundary would be decided by rounding noise;
// every compliant/violating factor keeps at least this margin.
constexpr double kBoundaryMargin = 1e-6;

const char* kNacePool[] = {"2410", "2013", "2351", "1920", "1712",
                           "2014", "2311", "2451", "1061", "1623"};
const char* kSectorNames[] = {"Iron & Steel", "Chemicals", "Cement",     "Refineries",
                              "Paper",        "Fertilisers", "Glass",    "Lime",
                              "Food Processing", "Wood"};
const char* kActivityNames[] = {"Production of pig iron or steel",
                                "Production of bulk organic chemicals",
                                "Production of cement clinker",
                                "Mineral oil refining",
                                "Production of paper or cardboard",
                                "Production of ammonia",
                                "Manufacture of glass",
                                "Production of lime",
                                "Combustion of fuels",
                                "Combustion of fuels"};
constexpr std::size_t kPoolSize = 10;

} // namespace

const std::map<std::string, Distribution>& default_value_ranges() {
    using F = Distribution::Family;
    static const std::map<std::string, Distribution> defaults = {
        {"natural_gas_burning.quantity", {F::Uniform, 1e4, 1e7}},
        {"fuel_use.coal_tec", {F::Uniform, 10.0, 1e4}},
        {"fuel_use.petroleum_tep", {F::Uniform, 10.0, 1e4}},
        {"total_plant_co2_emissions.other_share", {F::Uniform, 0.0, 1.0}},
        {"co2_price.value", {F::Gaussian, 10.0, 2.0}},
        {"co2_emissions_by_industrial_sector.quantity", {F::Gaussian, 50000.0, 5000.0}},
        {"annual_ets_scenario.energy_price", {F::Gaussian, 50.0, 10.0}},
        {"annual_ets_scenario_by_industrial_sector.employment", {F::Gaussian, 1000.0, 100.0}},
        {"company_energy.consumption", {F::Uniform, 100.0, 1e5}},
        {"plant.sector_membership", {F::Poisson, 0.0, 0.0}}, // rate 0: plants/sectors
        {"consumer.consumption_band1", {F::Uniform, 0.5, 4.0}},
        {"consumer.consumption_band2", {F::Uniform, 4.0 + 1e-6, 8.0}},
        {"consumer.consumption_band3", {F::Uniform, 8.0 + 1e-6, 12.0}},
        {"consumer.consumption_band4", {F::Uniform, 12.0 + 1e-6, 20.0}},
        {"consumer.a2_band1", {F::Uniform, 30.0, 40.0}},
        {"consumer.a2_band2", {F::Uniform, 10.0, 35.0}},
        {"consumer.a2_band3", {F::Uniform, 20.0, 29.0}},
        {"consumer.a2_band4", {F::Uniform, 5.0, 19.0}},
    };
    return defaults;
}

Distribution GenConfig::dist(const std::string& key) const {
    auto it = overrides.find(key);
    if (it != overrides.end()) return it->second;
    auto def = default_value_ranges().find(key);
    if (def == default_value_ranges().end()) throw LookupError("no distribution for '" + key + "'");
    return def->second;
}

namespace {

double sample(rng::Stream& stream, const Distribution& d) {
    switch (d.family) {
        case Distribution::Family::Uniform: return stream.uniform(d.a, d.b);
        case Distribution::Family::Gaussian: return stream.gaussian(d.a, d.b);
        case Distribution::Family::Poisson: return static_cast<double>(stream.poisson(d.a));
    }
    throw Error("unreachable distribution family");
}

double clamp_min(double v, double lo) { return v < lo ? lo : v; }

struct InjectionPlan {
    // (plant id, year) -> factor, per rule
    std::map<std::pair<std::int64_t, std::int64_t>, double> app1;
    std::map<std::pair<std::int64_t, std::int64_t>, double> ver2;
    std::map<std::pair<std::int64_t, std::int64_t>, double> ver1;
    std::map<std::pair<std::int64_t, std::int64_t>, double> harm4; // (sector id, year)
};

template <typename T>
void shuffle(std::vector<T>& items, rng::Stream& stream) {
    for (std::size_t i = items.size(); i > 1; --i) {
        std::size_t j = static_cast<std::size_t>(
            stream.uniform_int(0, static_cast<std::int64_t>(i) - 1));
        std::swap(items[i - 1], items[j]);
    }
}

InjectionPlan plan_injections(const GenConfig& config, Manifest& manifest) {
    static const std::set<std::string> supported = {"R-APP-1", "R-VER-2", "R-VER-1", "R-HARM-4"};
    for (const auto& [rule, count] : config.injected) {
        if (!supported.count(rule))
            throw Error("violation injection not supported for rule " + rule);
        if (count < 0) throw Error("negative injection count for rule " + rule);
    }
    auto count_of = [&](const char* rule) {
        auto it = config.injected.find(rule);
        return it == config.injected.end() ? std::int64_t{0} : it->second;
    };
    std::int64_t k_app1 = count_of("R-APP-1");
    std::int64_t k_ver2 = count_of("R-VER-2");
    std::int64_t k_ver1 = count_of("R-VER-1");
    std::int64_t k_harm4 = count_of("R-HARM-4");

    std::int64_t plant_years = config.n_plants * config.n_years();
    if (k_app1 + k_ver2 + k_ver1 > plant_years)
        throw Error("infeasible injection: " + std::to_string(k_app1 + k_ver2 + k_ver1) +
                    " plant-year violations requested, only " + std::to_string(plant_years) +
                    " plant-years available");
    std::int64_t sector_years = config.n_sectors * config.n_years();
    if (k_harm4 > sector_years)
        throw Error("infeasible injection: " + std::to_string(k_harm4) +
                    " subsector-year violations requested, only " + std::to_string(sector_years) +
                    " available");

    rng::Stream stream(config.seed, "inject");
    InjectionPlan plan;

    std::vector<std::pair<std::int64_t, std::int64_t>> pool;
    pool.reserve(static_cast<std::size_t>(plant_years));
    for (std::int64_t p = 1; p <= config.n_plants; ++p)
        for (int y = config.year_begin; y <= config.year_end; ++y) pool.emplace_back(p, y);
    shuffle(pool, stream);

    std::size_t cursor = 0;
    auto take = [&](std::int64_t k, const char* rule, double lo, double hi,
                    std::map<std::pair<std::int64_t, std::int64_t>, double>& dest) {
        auto& entries = manifest.entries[rule];
        for (std::int64_t i = 0; i < k; ++i) {
            auto key = pool[cursor++];
            dest[key] = stream.uniform(lo, hi);
            entries.push_back({{"plant", Value{key.first}}, {"year", Value{key.second}}});
        }
        std::sort(entries.begin(), entries.end(),
                  [](const auto& a, const auto& b) {
                      return std::get<std::int64_t>(a.at("plant")) != std::get<std::int64_t>(b.at("plant"))
                                 ? std::get<std::int64_t>(a.at("plant")) < std::get<std::int64_t>(b.at("plant"))
                                 : std::get<std::int64_t>(a.at("year")) < std::get<std::int64_t>(b.at("year"));
                  });
    };
    take(k_app1, "R-APP-1", 0.1, 0.9, plan.app1);
    take(k_ver2, "R-VER-2", 0.6, 0.95, plan.ver2);
    take(k_ver1, "R-VER-1", 0.5, 1.0 - kBoundaryMargin, plan.ver1);

    std::vector<std::pair<std::int64_t, std::int64_t>> sector_pool;
    for (std::int64_t s = 1; s <= config.n_sectors; ++s)
        for (int y = config.year_begin; y <= config.year_end; ++y) sector_pool.emplace_back(s, y);
    shuffle(sector_pool, stream);
    auto& harm4_entries = manifest.entries["R-HARM-4"];
    for (std::int64_t i = 0; i < k_harm4; ++i) {
        auto key = sector_pool[static_cast<std::size_t>(i)];
        plan.harm4[key] = stream.uniform(1.01, 1.5);
        harm4_entries.push_back({{"subsector", Value{key.first}}, {"year", Value{key.second}}});
    }
    std::sort(harm4_entries.begin(), harm4_entries.end(), [](const auto& a, const auto& b) {
        return std::get<std::int64_t>(a.at("subsector")) != std::get<std::int64_t>(b.at("subsector"))
                   ? std::get<std::int64_t>(a.at("subsector")) < std::get<std::int64_t>(b.at("subsector"))
                   : std::get<std::int64_t>(a.at("year")) < std::get<std::int64_t>(b.at("year"));
    });
    if (k_harm4 == 0) manifest.entries.erase("R-HARM-4");
    if (k_app1 == 0) manifest.entries.erase("R-APP-1");
    if (k_ver2 == 0) manifest.entries.erase("R-VER-2");
    if (k_ver1 == 0) manifest.entries.erase("R-VER-1");
    return plan;
}

/// Sector sizes are Poisson draws rescaled to sum to n_plants (largest
/// remainder), so membership counts keep the Poisson shape while every plant
/// gets exactly one sector.
std::vector<std::int64_t> sector_sizes(const GenConfig& config, rng::Stream& stream) {
    std::int64_t k = config.n_sectors;
    Distribution d = config.dist("plant.sector_membership");
    double rate = d.a > 0.0 ? d.a
                            : static_cast<double>(config.n_plants) / static_cast<double>(k);
    std::vector<double> draws(static_cast<std::size_t>(k));
    double total = 0.0;
    for (auto& v : draws) {
        v = static_cast<double>(stream.poisson(rate));
        total += v;
    }
    if (total <= 0.0) {
        for (auto& v : draws) v = 1.0;
        total = static_cast<double>(k);
    }
    std::vector<std::int64_t> sizes(static_cast<std::size_t>(k), 0);
    std::vector<std::pair<double, std::size_t>> remainders;
    std::int64_t assigned = 0;
    for (std::size_t i = 0; i < draws.size(); ++i) {
        double exact = draws[i] * static_cast<double>(config.n_plants) / total;
        sizes[i] = static_cast<std::int64_t>(std::floor(exact));
        assigned += sizes[i];
        remainders.emplace_back(exact - std::floor(exact), i);
    }
    std::sort(remainders.begin(), remainders.end(), [](const auto& a, const auto& b) {
        return a.first != b.first ? a.first > b.first : a.second < b.second;
    });
    for (std::size_t i = 0; assigned < config.n_plants; ++i, ++assigned)
        ++sizes[remainders[i % remainders.size()].second];
    return sizes;
}

} // namespace

std::pair<store::Dataset, Manifest> generate_dataset(const GenConfig& config) {
    if (config.n_plants < 0) throw Error("n_plants must be non-negative");
    if (config.n_sectors <= 0) throw Error("n_sectors must be positive");
    if (config.year_end < config.year_begin) throw Error("empty year range");

    Manifest manifest;
    InjectionPlan inject = plan_injections(config, manifest);

    store::Dataset data = store::Dataset::empty_canonical();
    const int n_years = config.n_years();

    // industrial_sector
    {
        auto& table = data.table("industrial_sector");
        for (std::int64_t s = 1; s <= config.n_sectors; ++s) {
            std::size_t pool_index = static_cast<std::size_t>((s - 1) % kPoolSize);
            std::string name = kSectorNames[pool_index];
            if (s > static_cast<std::int64_t>(kPoolSize))
                name += " " + std::to_string((s - 1) / kPoolSize + 1);
            table.rows.push_back({Value{s}, Value{name}});
        }
    }

    // plant, with Poisson-shaped sector membership
    std::vector<std::int64_t> plant_sector(static_cast<std::size_t>(config.n_plants) + 1, 1);
    {
        rng::Stream stream(config.seed, "plant");
        auto sizes = sector_sizes(config, stream);
        auto& table = data.table("plant");
        std::int64_t plant_id = 1;
        for (std::size_t s = 0; s < sizes.size(); ++s) {
            for (std::int64_t i = 0; i < sizes[s] && plant_id <= config.n_plants; ++i, ++plant_id) {
                std::int64_t sector = static_cast<std::int64_t>(s) + 1;
                plant_sector[static_cast<std::size_t>(plant_id)] = sector;
                std::size_t pool_index = static_cast<std::size_t>(s % kPoolSize);
                table.rows.push_back({Value{plant_id}, Value{"Plant " + std::to_string(plant_id)},
                                      Value{std::string(kNacePool[pool_index])},
                                      Value{std::string(kActivityNames[pool_index])},
                                      Value{sector}});
            }
        }
    }

    auto plant_year_index = [&](std::int64_t plant, int year) {
        return (plant - 1) * n_years + (year - config.year_begin);
    };

    // natural_gas_burning: plant-major, year-minor
    std::vector<double> ng_fuel(static_cast<std::size_t>(config.n_plants * n_years));
    {
        rng::Stream stream(config.seed, "natural_gas_burning");
        Distribution d = config.dist("natural_gas_burning.quantity");
        auto& table = data.table("natural_gas_burning");
        std::int64_t id = 1;
        for (std::int64_t p = 1; p <= config.n_plants; ++p) {
            for (int y = config.year_begin; y <= config.year_end; ++y, ++id) {
                double fuel = sample(stream, d);
                ng_fuel[static_cast<std::size_t>(plant_year_index(p, y))] = fuel;
                table.rows.push_back({Value{id}, Value{p}, Value{std::int64_t{y}}, Value{fuel},
                                      Value{std::string("Sm3")}});
            }
        }
    }

    // total_plant_co2_emissions: ng CO2 derived from the plausibility bound,
    // lowered for injected R-APP-1 rows
    std::vector<double> ng_co2(static_cast<std::size_t>(config.n_plants * n_years));
    std::vector<double> total_co2(static_cast<std::size_t>(config.n_plants * n_years));
    {
        rng::Stream stream(config.seed, "total_plant_co2_emissions");
        Distribution other_share = config.dist("total_plant_co2_emissions.other_share");
        auto& table = data.table("total_plant_co2_emissions");
        std::int64_t id = 1;
        for (std::int64_t p = 1; p <= config.n_plants; ++p) {
            for (int y = config.year_begin; y <= config.year_end; ++y, ++id) {
                std::size_t idx = static_cast<std::size_t>(plant_year_index(p, y));
                double u_ng = stream.uniform01();
                double share = sample(stream, other_share);
                double threshold = 1.961 * ng_fuel[idx] / 2000.0;
                auto injected = inject.app1.find({p, y});
                double factor = injected != inject.app1.end()
                                    ? injected->second
                                    : 1.0 + kBoundaryMargin + u_ng * (0.5 - kBoundaryMargin);
                double ng = threshold * factor;
                double total = ng + share * ng;
                ng_co2[idx] = ng;
                total_co2[idx] = total;
                // natural_gas_burning rows were emitted in the same order,
                // so the fk for (p, y) equals this row's sequential id
                std::int64_t ngb_id = static_cast<std::int64_t>(idx) + 1;
                table.rows.push_back({Value{id}, Value{p}, Value{std::int64_t{y}}, Value{total},
                                      Value{ng}, Value{ngb_id}, Value{std::string("tCO2")}});
            }
        }
    }

    // fuel_use: one natural-gas energy row per plant-year (TJ or GJ), plus
    // coal recorded in tec and tep and petroleum in tep and GJ
    {
        rng::Stream stream(config.seed, "fuel_use");
        Distribution coal_d = config.dist("fuel_use.coal_tec");
        Distribution pet_d = config.dist("fuel_use.petroleum_tep");
        auto& table = data.table("fuel_use");
        std::int64_t id = 1;
        auto add = [&](std::int64_t p, int y, const char* fuel, double q, const char* unit) {
            table.rows.push_back({Value{id++}, Value{p}, Value{std::int64_t{y}},
                                  Value{std::string(fuel)}, Value{q}, Value{std::string(unit)}});
        };
        for (std::int64_t p = 1; p <= config.n_plants; ++p) {
            for (int y = config.year_begin; y <= config.year_end; ++y) {
                std::size_t idx = static_cast<std::size_t>(plant_year_index(p, y));
                double u_tj = stream.uniform01();
                double coal = sample(stream, coal_d);
                double petroleum = sample(stream, pet_d);

                auto injected = inject.ver1.find({p, y});
                double v = injected != inject.ver1.end()
                               ? injected->second
                               : 1.0 + kBoundaryMargin + u_tj * (1.0 - kBoundaryMargin);
                double tj = ng_co2[idx] / 56.0 * v;
                bool use_gj = ((p + y) % 2) == 0;
                if (use_gj) add(p, y, "natural_gas", tj * 1000.0, "GJ");
                else add(p, y, "natural_gas", tj, "TJ");

                add(p, y, "coal", coal, "tec");
                add(p, y, "coal", coal * 0.7, "tep");
                add(p, y, "petroleum", petroleum, "tep");
                add(p, y, "petroleum", petroleum * 41.868, "GJ");
            }
        }
    }

    // allocated_co2_emissions: covers the verified total unless injected
    {
        rng::Stream stream(config.seed, "allocated_co2_emissions");
        auto& table = data.table("allocated_co2_emissions");
        std::int64_t id = 1;
        for (std::int64_t p = 1; p <= config.n_plants; ++p) {
            for (int y = config.year_begin; y <= config.year_end; ++y, ++id) {
                std::size_t idx = static_cast<std::size_t>(plant_year_index(p, y));
                double u = stream.uniform01();
                auto injected = inject.ver2.find({p, y});
                double factor = injected != inject.ver2.end() ? injected->second : 1.0 + u * 0.3;
                table.rows.push_back({Value{id}, Value{p}, Value{std::int64_t{y}},
                                      Value{total_co2[idx] * factor}});
            }
        }
    }

    // co2_price: one row per context year
    {
        rng::Stream stream(config.seed, "co2_price");
        Distribution d = config.dist("co2_price.value");
        auto& table = data.table("co2_price");
        for (int y = config.year_begin; y <= config.year_end; ++y)
            table.rows.push_back({Value{std::int64_t{y}}, Value{clamp_min(sample(stream, d), 0.01)}});
    }

    // co2_emissions_by_industrial_sector
    {
        rng::Stream stream(config.seed, "co2_emissions_by_industrial_sector");
        Distribution d = config.dist("co2_emissions_by_industrial_sector.quantity");
        auto& table = data.table("co2_emissions_by_industrial_sector");
        std::int64_t id = 1;
        for (std::int64_t s = 1; s <= config.n_sectors; ++s)
            for (int y = config.year_begin; y <= config.year_end; ++y, ++id)
                table.rows.push_back({Value{id}, Value{s}, Value{std::int64_t{y}},
                                      Value{clamp_min(sample(stream, d), 0.0)}});
    }

    // annual_ets_scenario and its sector breakdown
    {
        rng::Stream stream(config.seed, "annual_ets_scenario");
        Distribution price_d = config.dist("annual_ets_scenario.energy_price");
        auto& table = data.table("annual_ets_scenario");
        std::int64_t id = 1;
        for (std::int64_t s = 0; s < config.n_scenarios; ++s) {
            std::string label = s == 0 ? "BAU" : "S" + std::to_string(s);
            for (int i = 0; i < config.n_scenario_years; ++i, ++id) {
                int year = config.scenario_year_begin + i * config.scenario_year_step;
                table.rows.push_back({Value{id}, Value{label}, Value{std::int64_t{year}},
                                      Value{clamp_min(sample(stream, price_d), 0.1)}});
            }
        }
    }
    {
        rng::Stream stream(config.seed, "annual_ets_scenario_by_industrial_sector");
        Distribution emp_d = config.dist("annual_ets_scenario_by_industrial_sector.employment");
        auto& table = data.table("annual_ets_scenario_by_industrial_sector");
        std::int64_t id = 1;
        std::int64_t scenario_rows = config.n_scenarios * config.n_scenario_years;
        for (std::int64_t sc = 1; sc <= scenario_rows; ++sc)
            for (std::int64_t sector = 1; sector <= config.n_sectors; ++sector, ++id)
                table.rows.push_back({Value{id}, Value{sc}, Value{sector},
                                      Value{clamp_min(sample(stream, emp_d), 0.0)}});
    }

    // consumer: bands cycle 1..4; A2 taxation ranges keep band 1 above
    // band 3 above band 4
    {
        rng::Stream stream(config.seed, "consumer");
        auto& table = data.table("consumer");
        for (std::int64_t i = 1; i <= config.n_consumers; ++i) {
            int band = static_cast<int>((i - 1) % 4) + 1;
            std::string suffix = std::to_string(band);
            double consumption = sample(stream, config.dist("consumer.consumption_band" + suffix));
            double a2 = sample(stream, config.dist("consumer.a2_band" + suffix));
            table.rows.push_back({Value{i}, Value{consumption}, Value{a2}});
        }
    }

    // activity: the distinct NACE codes in use
    std::vector<std::string> distinct_naces;
    {
        auto& table = data.table("activity");
        std::set<std::string> seen;
        std::int64_t id = 1;
        for (std::int64_t s = 0; s < config.n_sectors; ++s) {
            std::string nace = kNacePool[static_cast<std::size_t>(s % kPoolSize)];
            if (seen.insert(nace).second) {
                distinct_naces.push_back(nace);
                table.rows.push_back({Value{id++}, Value{nace}});
            }
        }
    }

    // product: PRODCOM codes built from registered NACE prefixes
    {
        rng::Stream stream(config.seed, "product");
        auto& table = data.table("product");
        for (std::int64_t i = 1; i <= config.n_products && !distinct_naces.empty(); ++i) {
            const std::string& nace =
                distinct_naces[static_cast<std::size_t>((i - 1) % distinct_naces.size())];
            std::int64_t suffix = stream.uniform_int(0, 9999);
            char buf[8];
            std::snprintf(buf, sizeof(buf), "%04lld", static_cast<long long>(suffix));
            table.rows.push_back({Value{i}, Value{nace + buf}});
        }
    }

    // company_energy + subsector_energy: totals are exact sums in row order,
    // scaled up for injected R-HARM-4 groups
    {
        rng::Stream stream(config.seed, "company_energy");
        Distribution d = config.dist("company_energy.consumption");
        auto& companies = data.table("company_energy");
        auto& subsectors = data.table("subsector_energy");
        std::int64_t company_id = 1;
        std::int64_t subsector_id = 1;
        for (std::int64_t s = 1; s <= config.n_sectors; ++s) {
            for (int y = config.year_begin; y <= config.year_end; ++y, ++subsector_id) {
                double sum = 0.0;
                for (std::int64_t c = 0; c < config.companies_per_subsector; ++c, ++company_id) {
                    double consumption = sample(stream, d);
                    sum += consumption;
                    companies.rows.push_back(
                        {Value{company_id},
                         Value{"C-" + std::to_string(s) + "-" + std::to_string(c + 1)}, Value{s},
                         Value{std::int64_t{y}}, Value{consumption}});
                }
                auto injected = inject.harm4.find({s, y});
                double total = injected != inject.harm4.end() ? sum * injected->second : sum;
                subsectors.rows.push_back(
                    {Value{subsector_id}, Value{s}, Value{std::int64_t{y}}, Value{total}});
            }
        }
    }

    return {std::move(data), std::move(manifest)};
}

std::string Manifest::to_json() const {
    nlohmann::ordered_json doc;
    doc["rules"] = nlohmann::ordered_json::object();
    for (const auto& [rule, list] : entries) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& entry : list) {
            nlohmann::ordered_json e;
            for (const auto& [key, value] : entry) {
                if (const auto* i = std::get_if<std::int64_t>(&value)) e[key] = *i;
                else if (const auto* d = std::get_if<double>(&value)) e[key] = *d;
                else e[key] = to_text(value);
            }
            arr.push_back(std::move(e));
        }
        doc["rules"][rule] = std::move(arr);
    }
    return doc.dump(2) + "\n";
}

void write_dataset(const GenConfig& config, const std::filesystem::path& dir) {
    auto [data, manifest] = generate_dataset(config);
    store::export_csv(data, dir);
    std::ofstream out(dir / "manifest.json", std::ios::binary);
    if (!out) throw Error("cannot write " + (dir / "manifest.json").string());
    out << manifest.to_json();
}

} // namespace ets::datagen
