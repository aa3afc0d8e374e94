#pragma once

#include "ets/store.hpp"
#include "ets/value.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace ets::datagen {

struct Distribution {
    enum class Family { Uniform, Gaussian, Poisson };
    Family family = Family::Uniform;
    double a = 0.0; // uniform lo / gaussian mean / poisson rate
    double b = 0.0; // uniform hi / gaussian sd
};

/// Shipped distribution defaults, keyed by "<table>.<column>"-style names.
/// These are artifact defaults, not published figures; every entry can be
/// overridden per column through GenConfig.
const std::map<std::string, Distribution>& default_value_ranges();

struct GenConfig {
    std::int64_t n_plants = 0;
    std::uint64_t seed = 0;
    std::int64_t n_sectors = 10;
    std::int64_t n_scenarios = 3;
    int year_begin = 2010;
    int year_end = 2014; // inclusive
    int scenario_year_begin = 2015;
    int scenario_year_step = 5;
    int n_scenario_years = 4;
    std::int64_t n_consumers = 24;
    std::int64_t n_products = 40;
    std::int64_t companies_per_subsector = 4;

    /// rule id -> violation count. Supported: R-APP-1, R-VER-2, R-VER-1,
    /// R-HARM-4. Counts are validated against the eligible row pools.
    std::map<std::string, std::int64_t> injected;

    std::map<std::string, Distribution> overrides;

    int n_years() const { return year_end - year_begin + 1; }
    Distribution dist(const std::string& key) const;
};

/// Ground truth for injected violations: rule id -> entity keys.
struct Manifest {
    std::map<std::string, std::vector<std::map<std::string, Value>>> entries;

    std::string to_json() const;
};

/// Deterministic synthetic dataset: identical config, identical output.
/// Non-injected rows satisfy every acquisition rule by construction;
/// injected rows violate exactly their designated rule.
std::pair<store::Dataset, Manifest> generate_dataset(const GenConfig& config);

/// Canonical CSV directory plus manifest.json.
void write_dataset(const GenConfig& config, const std::filesystem::path& dir);

} // namespace ets::datagen
