#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ets::units {

struct Unit {
    std::string symbol;
    std::string description;
};

/// Known measurement units. Only tec->tep, tep->GJ and the SI-forced TJ->GJ
/// carry seed conversion factors; the others are registered symbols with no
/// cross-factors.
const std::vector<Unit>& known_units();
bool is_known_unit(const std::string& symbol);

/// Linear conversion factors between unit pairs. Registering (a,b,f) also
/// stores (b,a,1/f). Lookup composes through at most one intermediate unit.
class ConversionRegistry {
public:
    /// Seeded with tec->tep 0.7, tep->GJ 41.868, TJ->GJ 1000.
    static ConversionRegistry standard();

    /// Adds `factor <from> <to> <value>` lines from a file on top of the seed.
    static ConversionRegistry from_file(const std::filesystem::path& file);

    /// factor must be > 0. Re-registering an equal value (within 1e-12
    /// relative) is a no-op; a conflicting value is an error, as is a factor
    /// that breaks path consistency with existing 2-hop compositions.
    void register_factor(const std::string& from, const std::string& to, double factor);

    /// Composed factor, direct or via one intermediate; empty if no path.
    std::optional<double> factor(const std::string& from, const std::string& to) const;

    bool convertible(const std::string& from, const std::string& to) const;

    /// quantity x composed factor; throws LookupError if no path exists.
    double convert(double quantity, const std::string& from, const std::string& to) const;

private:
    // Unit insertion order fixes the 2-hop search order, so composition is
    // deterministic when several intermediates exist.
    std::vector<std::string> units_;
    std::map<std::pair<std::string, std::string>, double> factors_;

    void note_unit(const std::string& symbol);
};

inline constexpr double kPathConsistencyTol = 1e-12;

} // namespace ets::units
