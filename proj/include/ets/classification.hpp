#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ets::classification {

/// 4-digit EU activity code.
struct NaceCode {
    std::string digits;
    static NaceCode parse(const std::string& text); // throws ParseError
    friend auto operator<=>(const NaceCode&, const NaceCode&) = default;
};

/// 8-digit EU product code, generally constructed from a NACE prefix.
struct ProdcomCode {
    std::string digits;
    static ProdcomCode parse(const std::string& text); // throws ParseError
    NaceCode prefix() const { return NaceCode{digits.substr(0, 4)}; }
    friend auto operator<=>(const ProdcomCode&, const ProdcomCode&) = default;
};

/// PRODCOM -> NACE resolution: explicit pairs win; otherwise, when the
/// prefix rule is on and the 4-digit prefix is a registered NACE, the prefix
/// resolves. Each PRODCOM maps to at most one NACE.
class CodeMap {
public:
    CodeMap() = default;

    void add_pair(const ProdcomCode& p, const NaceCode& n); // also registers n
    void register_nace(const NaceCode& n);
    void set_prefix_rule(bool enabled) { prefix_rule_ = enabled; }
    bool prefix_rule() const { return prefix_rule_; }

    std::optional<NaceCode> prodcom_to_nace(const ProdcomCode& p) const;

    /// All registered PRODCOM codes resolving to n, ascending.
    std::vector<ProdcomCode> nace_to_prodcom(const NaceCode& n) const;

    /// CSV with header `prodcom,nace`.
    static CodeMap from_csv(const std::filesystem::path& file, bool prefix_rule);

    /// Small shipped correspondence table.
    static CodeMap illustrative();

private:
    std::map<ProdcomCode, NaceCode> pairs_;
    std::set<NaceCode> registered_;
    bool prefix_rule_ = true;
};

} // namespace ets::classification
