#include "ets/classification.hpp"

#include "ets/csv.hpp"
#include "ets/errors.hpp"

#include <algorithm>
#include <cctype>

namespace ets::classification {

namespace {

bool all_digits(const std::string& s) {
    return std::all_of(s.begin(), s.end(),
                       [](unsigned char c) { return std::isdigit(c) != 0; });
}

} // namespace

NaceCode NaceCode::parse(const std::string& text) {
    if (text.size() != 4 || !all_digits(text))
        throw ParseError("malformed NACE code '" + text + "': expected 4 digits");
    return NaceCode{text};
}

ProdcomCode ProdcomCode::parse(const std::string& text) {
    if (text.size() != 8 || !all_digits(text))
        throw ParseError("malformed PRODCOM code '" + text + "': expected 8 digits");
    return ProdcomCode{text};
}

void CodeMap::add_pair(const ProdcomCode& p, const NaceCode& n) {
    pairs_[p] = n;
    registered_.insert(n);
}

void CodeMap::register_nace(const NaceCode& n) { registered_.insert(n); }

std::optional<NaceCode> CodeMap::prodcom_to_nace(const ProdcomCode& p) const {
    auto it = pairs_.find(p);
    if (it != pairs_.end()) return it->second;
    if (prefix_rule_) {
        NaceCode prefix = p.prefix();
        if (registered_.count(prefix)) return prefix;
    }
    return std::nullopt;
}

std::vector<ProdcomCode> CodeMap::nace_to_prodcom(const NaceCode& n) const {
    std::vector<ProdcomCode> out;
    for (const auto& [p, mapped] : pairs_)
        if (mapped == n) out.push_back(p);
    // pairs_ is ordered by code already; keep ascending order explicit anyway
    std::sort(out.begin(), out.end());
    return out;
}

CodeMap CodeMap::from_csv(const std::filesystem::path& file, bool prefix_rule) {
    auto records = csv::read_file(file);
    if (records.empty() || records[0].size() != 2 || records[0][0] != "prodcom" ||
        records[0][1] != "nace")
        throw SchemaError(file.string() + ": expected header 'prodcom,nace'");
    CodeMap map;
    map.set_prefix_rule(prefix_rule);
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != 2)
            throw SchemaError(file.string() + " row " + std::to_string(r) + ": expected 2 cells");
        map.add_pair(ProdcomCode::parse(records[r][0]), NaceCode::parse(records[r][1]));
    }
    return map;
}

CodeMap CodeMap::illustrative() {
    CodeMap map;
    // A few benchmarked-product correspondences; prefix-derived except the
    // last, whose product is filed under a different activity than its prefix.
    map.add_pair(ProdcomCode{"24101210"}, NaceCode{"2410"});
    map.add_pair(ProdcomCode{"23511100"}, NaceCode{"2351"});
    map.add_pair(ProdcomCode{"17121400"}, NaceCode{"1712"});
    map.add_pair(ProdcomCode{"20134325"}, NaceCode{"2013"});
    map.add_pair(ProdcomCode{"23521030"}, NaceCode{"2352"});
    map.add_pair(ProdcomCode{"19201100"}, NaceCode{"1920"});
    map.add_pair(ProdcomCode{"20601210"}, NaceCode{"2013"});
    return map;
}

} // namespace ets::classification
