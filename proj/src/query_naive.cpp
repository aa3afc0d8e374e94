#include "ets/errors.hpp"
#include "ets/query.hpp"

#include <unordered_map>

namespace ets::query {

namespace {

using mapping::Term;
using mapping::TriplePattern;
using mapping::VirtualTriple;

// Matching works over a growing substitution; a variable either binds the
// triple's part or must equal its prior binding. Backtracking unbinds only
// the variables a pattern freshly bound.
struct Bindings {
    std::unordered_map<std::string, Value> map;

    // Returns false on mismatch; appends freshly bound names to `bound`.
    bool unify(const Term& term, const Value& value, std::vector<std::string>& bound) {
        switch (term.kind) {
            case Term::Kind::Variable: {
                auto it = map.find(term.text);
                if (it == map.end()) {
                    map.emplace(term.text, value);
                    bound.push_back(term.text);
                    return true;
                }
                return value_eq(it->second, value);
            }
            case Term::Kind::Literal: return value_eq(term.literal, value);
            case Term::Kind::Name: return false; // rejected up front
        }
        return false;
    }

    void unbind(const std::vector<std::string>& names) {
        for (const auto& name : names) map.erase(name);
    }
};

} // namespace

ResultSet evaluate_naive(const QueryAst& ast, const mapping::MappingSpec& spec,
                         const store::Dataset& data) {
    for (const auto& p : ast.patterns) {
        if (p.subject.kind != Term::Kind::Variable)
            throw Error("constant subjects are not supported");
        if (p.predicate == "a" && p.object.kind != Term::Kind::Name)
            throw Error("type patterns require a constant class object");
        if (p.predicate != "a" && p.object.kind == Term::Kind::Name)
            throw Error("vocab: names are not supported in object position of property patterns");
        // Surface unmapped predicates the same way planning does.
        mapping::resolve_pattern(spec, p);
    }

    auto triples = mapping::virtual_triples(spec, data);
    std::unordered_map<std::string, std::vector<const VirtualTriple*>> by_predicate;
    for (const auto& t : triples) by_predicate[t.predicate].push_back(&t);

    ResultSet result;
    result.columns = ast.projected_vars;

    Bindings bindings;
    std::vector<const VirtualTriple*> empty;

    std::function<void(std::size_t)> match = [&](std::size_t pattern_index) {
        if (pattern_index == ast.patterns.size()) {
            auto lookup = [&](const std::string& var) -> const Value* {
                auto it = bindings.map.find(var);
                return it == bindings.map.end() ? nullptr : &it->second;
            };
            FilterOutcome outcome = eval_filter(ast.filter.get(), lookup);
            if (outcome.error) {
                ++result.filter_error_count;
                return;
            }
            if (!outcome.matched) return;
            std::vector<Value> row;
            row.reserve(ast.projected_vars.size());
            for (const auto& v : ast.projected_vars) row.push_back(bindings.map.at(v));
            result.rows.push_back(std::move(row));
            return;
        }
        const TriplePattern& p = ast.patterns[pattern_index];
        auto it = by_predicate.find(p.predicate);
        const auto& candidates = it == by_predicate.end() ? empty : it->second;
        std::vector<std::string> bound;
        for (const VirtualTriple* t : candidates) {
            if (p.predicate == "a") {
                if (!t->object_is_class || t->class_name != p.object.text) continue;
            } else if (t->object_is_class) {
                continue;
            }
            bound.clear();
            bool ok = bindings.unify(p.subject, t->subject, bound);
            if (ok && p.predicate != "a") ok = bindings.unify(p.object, t->object, bound);
            if (ok) match(pattern_index + 1);
            bindings.unbind(bound);
        }
    };
    match(0);

    // Same canonical ordering and DISTINCT treatment as the executor.
    auto row_less = [](const std::vector<Value>& a, const std::vector<Value>& b) {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (value_less(a[i], b[i])) return true;
            if (value_less(b[i], a[i])) return false;
        }
        return a.size() < b.size();
    };
    std::sort(result.rows.begin(), result.rows.end(), row_less);
    if (ast.distinct) {
        auto row_eq = [](const std::vector<Value>& a, const std::vector<Value>& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!value_eq(a[i], b[i])) return false;
            return true;
        };
        result.rows.erase(std::unique(result.rows.begin(), result.rows.end(), row_eq),
                          result.rows.end());
    }
    return result;
}

} // namespace ets::query
