#include "ets/units.hpp"

#include "ets/errors.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace ets::units {

const std::vector<Unit>& known_units() {
    static const std::vector<Unit> units = {
        {"tec", "tons of coal equivalent"},
        {"tep", "tons of petroleum equivalent"},
        {"GJ", "gigajoule"},
        {"TJ", "terajoule"},
        {"Sm3", "standard cubic meters of gas"},
        {"GWh", "gigawatt hour"},
        {"tCO2", "tons of CO2"},
    };
    return units;
}

bool is_known_unit(const std::string& symbol) {
    for (const auto& u : known_units())
        if (u.symbol == symbol) return true;
    return false;
}

namespace {

bool close_rel(double a, double b, double tol) {
    double scale = std::max(std::abs(a), std::abs(b));
    return std::abs(a - b) <= tol * scale;
}

} // namespace

void ConversionRegistry::note_unit(const std::string& symbol) {
    if (!is_known_unit(symbol)) throw LookupError("unknown unit '" + symbol + "'");
    for (const auto& u : units_)
        if (u == symbol) return;
    units_.push_back(symbol);
}

void ConversionRegistry::register_factor(const std::string& from, const std::string& to,
                                         double value) {
    if (!(value > 0.0) || !std::isfinite(value))
        throw Error("conversion factor " + from + "->" + to + " must be a positive number");
    if (from == to) throw Error("conversion factor " + from + "->" + from + " is implicit");
    note_unit(from);
    note_unit(to);

    auto it = factors_.find({from, to});
    if (it != factors_.end()) {
        if (close_rel(it->second, value, kPathConsistencyTol)) return; // no-op re-registration
        throw Error("conflicting factor " + from + "->" + to + ": registered " +
                    std::to_string(it->second) + ", got " + std::to_string(value));
    }

    // New edge must agree with every already-composable 2-hop path.
    if (auto composed = factor(from, to)) {
        if (!close_rel(*composed, value, kPathConsistencyTol))
            throw Error("factor " + from + "->" + to + " disagrees with composed path");
    }

    factors_[{from, to}] = value;
    factors_[{to, from}] = 1.0 / value;
}

std::optional<double> ConversionRegistry::factor(const std::string& from,
                                                 const std::string& to) const {
    if (from == to) return 1.0;
    auto direct = factors_.find({from, to});
    if (direct != factors_.end()) return direct->second;
    for (const auto& mid : units_) {
        if (mid == from || mid == to) continue;
        auto a = factors_.find({from, mid});
        if (a == factors_.end()) continue;
        auto b = factors_.find({mid, to});
        if (b == factors_.end()) continue;
        return a->second * b->second;
    }
    return std::nullopt;
}

bool ConversionRegistry::convertible(const std::string& from, const std::string& to) const {
    return factor(from, to).has_value();
}

double ConversionRegistry::convert(double quantity, const std::string& from,
                                   const std::string& to) const {
    auto f = factor(from, to);
    if (!f) throw LookupError("no conversion path " + from + "->" + to);
    return quantity * *f;
}

ConversionRegistry ConversionRegistry::standard() {
    ConversionRegistry reg;
    for (const auto& u : known_units()) reg.note_unit(u.symbol);
    reg.register_factor("tec", "tep", 0.7);
    reg.register_factor("tep", "GJ", 41.868);
    reg.register_factor("TJ", "GJ", 1000.0);
    return reg;
}

ConversionRegistry ConversionRegistry::from_file(const std::filesystem::path& file) {
    ConversionRegistry reg = standard();
    std::ifstream in(file);
    if (!in) throw Error("cannot open " + file.string());
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        if (head != "factor") throw ParseError(file.string() + ": expected 'factor'", lineno);
        std::string from, to;
        double value = 0;
        if (!(ls >> from >> to >> value))
            throw ParseError(file.string() + ": malformed factor line", lineno);
        reg.register_factor(from, to, value);
    }
    return reg;
}

} // namespace ets::units
