#include "ets/value.hpp"

#include <charconv>
#include <cmath>

namespace ets {

namespace {

// Type class for the canonical order: numerics < text < refs.
int rank(const Value& v) {
    if (is_numeric(v)) return 0;
    if (std::holds_alternative<std::string>(v)) return 1;
    return 2;
}

} // namespace

bool value_eq(const Value& a, const Value& b) {
    if (is_numeric(a) && is_numeric(b)) return as_double(a) == as_double(b);
    if (a.index() != b.index()) return false;
    return a == b;
}

bool value_less(const Value& a, const Value& b) {
    int ra = rank(a), rb = rank(b);
    if (ra != rb) return ra < rb;
    switch (ra) {
        case 0: return as_double(a) < as_double(b);
        case 1: return std::get<std::string>(a) < std::get<std::string>(b);
        default: return std::get<Ref>(a) < std::get<Ref>(b);
    }
}

std::size_t value_hash(const Value& v) {
    if (is_numeric(v)) {
        double d = as_double(v);
        if (d == 0.0) d = 0.0; // unify -0.0 with 0.0
        return std::hash<double>{}(d);
    }
    if (const auto* s = std::get_if<std::string>(&v)) return std::hash<std::string>{}(*s);
    const auto& r = std::get<Ref>(v);
    std::size_t h = std::hash<std::string>{}(r.table);
    std::size_t k = r.key.index() == 0 ? std::hash<std::int64_t>{}(std::get<std::int64_t>(r.key))
                                       : std::hash<std::string>{}(std::get<std::string>(r.key));
    return h ^ (k + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2));
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

std::string to_text(const Value& v) {
    if (const auto* i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&v)) return format_double(*d);
    if (const auto* s = std::get_if<std::string>(&v)) return *s;
    const auto& r = std::get<Ref>(v);
    if (r.key.index() == 0) return std::to_string(std::get<std::int64_t>(r.key));
    return std::get<std::string>(r.key);
}

} // namespace ets
