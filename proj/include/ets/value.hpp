#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>

namespace ets {

/// Identity of one row instance: the owning table plus its key value.
/// Canonical keys are integers (ids) or integers-as-years; text keys are
/// allowed for generality.
struct Ref {
    std::string table;
    std::variant<std::int64_t, std::string> key;

    friend bool operator==(const Ref& a, const Ref& b) {
        return a.table == b.table && a.key == b.key;
    }
    friend bool operator<(const Ref& a, const Ref& b) {
        if (a.table != b.table) return a.table < b.table;
        return a.key < b.key;
    }
};

/// A cell or binding value. Integers and decimals compare numerically
/// against each other; the total order puts numerics first, then text,
/// then refs (deterministic result ordering relies on this).
using Value = std::variant<std::int64_t, double, std::string, Ref>;

inline bool is_numeric(const Value& v) {
    return std::holds_alternative<std::int64_t>(v) || std::holds_alternative<double>(v);
}

inline double as_double(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return static_cast<double>(*i);
    return std::get<double>(v);
}

bool value_eq(const Value& a, const Value& b);
bool value_less(const Value& a, const Value& b);
std::size_t value_hash(const Value& v);

/// Shortest decimal text that round-trips through from_chars.
std::string format_double(double v);

/// Serialized form used in CSV cells and report bindings
/// (refs print as their key value).
std::string to_text(const Value& v);

struct ValueHash {
    std::size_t operator()(const Value& v) const { return value_hash(v); }
};
struct ValueEq {
    bool operator()(const Value& a, const Value& b) const { return value_eq(a, b); }
};

} // namespace ets
