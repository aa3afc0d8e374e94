#include "ets/errors.hpp"
#include "ets/query.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ets::query {

namespace {

using mapping::AccessSpec;
using mapping::Term;
using mapping::TriplePattern;

void reject_unsupported_terms(const QueryAst& ast) {
    for (const auto& p : ast.patterns) {
        if (p.subject.kind != Term::Kind::Variable)
            throw Error("constant subjects are not supported");
        if (p.predicate == "a" && p.object.kind != Term::Kind::Name)
            throw Error("type patterns require a constant class object");
        if (p.predicate != "a" && p.object.kind == Term::Kind::Name)
            throw Error("vocab: names are not supported in object position of property patterns");
    }
}

} // namespace

Plan plan_query(const QueryAst& ast, const mapping::MappingSpec& spec) {
    reject_unsupported_terms(ast);

    // Group patterns by subject variable, preserving first-appearance order.
    std::vector<std::string> subject_order;
    std::unordered_map<std::string, std::vector<const TriplePattern*>> groups;
    for (const auto& p : ast.patterns) {
        const std::string& s = p.subject.text;
        if (!groups.count(s)) subject_order.push_back(s);
        groups[s].push_back(&p);
    }

    std::vector<ScanNode> scans;
    for (const auto& subject : subject_order) {
        ScanNode scan;
        scan.subject_var = subject;
        auto constrain_table = [&](const std::string& table) {
            if (scan.table.empty()) scan.table = table;
            else if (scan.table != table) scan.impossible = true;
        };
        for (const TriplePattern* p : groups[subject]) {
            AccessSpec access = mapping::resolve_pattern(spec, *p);
            constrain_table(access.table);
            switch (access.kind) {
                case AccessSpec::Kind::TableScan: break; // membership only
                case AccessSpec::Kind::ColumnAccess:
                    if (p->object.kind == Term::Kind::Variable)
                        scan.value_binds.push_back({access.column, p->object.text});
                    else
                        scan.literal_eqs.push_back({access.column, p->object.literal});
                    break;
                case AccessSpec::Kind::FkJoin:
                    if (p->object.kind == Term::Kind::Variable)
                        scan.ref_binds.push_back({access.column, access.target_table, p->object.text});
                    else
                        scan.literal_eqs.push_back({access.column, p->object.literal});
                    break;
            }
        }
        scan.key_column = scan.impossible ? "" : spec.key_column_of(scan.table);
        scans.push_back(std::move(scan));
    }

    // Variables produced by each scan, for connectivity-driven join order.
    auto scan_vars = [](const ScanNode& s) {
        std::set<std::string> vars{s.subject_var};
        for (const auto& b : s.value_binds) vars.insert(b.var);
        for (const auto& b : s.ref_binds) vars.insert(b.var);
        return vars;
    };

    std::vector<ScanNode> ordered;
    std::set<std::string> bound;
    std::vector<bool> used(scans.size(), false);
    for (std::size_t step = 0; step < scans.size(); ++step) {
        std::size_t pick = scans.size();
        for (std::size_t i = 0; i < scans.size(); ++i) {
            if (used[i]) continue;
            if (step == 0) {
                pick = i;
                break;
            }
            auto vars = scan_vars(scans[i]);
            bool connected = std::any_of(vars.begin(), vars.end(),
                                         [&](const std::string& v) { return bound.count(v); });
            if (connected) {
                pick = i;
                break;
            }
            if (pick == scans.size()) pick = i; // fall back to cross join
        }
        used[pick] = true;
        for (const auto& v : scan_vars(scans[pick])) bound.insert(v);
        ordered.push_back(std::move(scans[pick]));
    }

    for (const auto& v : ast.projected_vars)
        if (!bound.count(v)) throw Error("unbound projected variable ?" + v);

    Plan plan;
    plan.scans = std::move(ordered);
    plan.filter = ast.filter ? ast.filter->clone() : nullptr;
    plan.projected_vars = ast.projected_vars;
    plan.distinct = ast.distinct;
    return plan;
}

namespace {

struct Relation {
    std::vector<std::string> vars;
    std::vector<std::vector<Value>> rows;

    int var_index(const std::string& v) const {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == v) return static_cast<int>(i);
        return -1;
    }
};

Relation materialize_scan(const ScanNode& scan, const store::Dataset& data) {
    Relation rel;
    rel.vars.push_back(scan.subject_var);
    // Deduplicated output variables; repeated mentions become equality checks.
    struct ColBind {
        int column;
        int slot;
    };
    if (scan.impossible) {
        for (const auto& b : scan.value_binds)
            if (rel.var_index(b.var) < 0) rel.vars.push_back(b.var);
        for (const auto& b : scan.ref_binds)
            if (rel.var_index(b.var) < 0) rel.vars.push_back(b.var);
        return rel;
    }

    const store::Table& table = data.table(scan.table);
    int key_col = table.column_index(scan.key_column);
    if (key_col < 0) throw SchemaError("table '" + scan.table + "' lacks key column");

    struct Produce {
        int column;
        int target; // -1: plain value; else index into ref target names
        int slot;
        bool check_only;
    };
    std::vector<std::string> ref_targets;
    std::vector<Produce> produces;
    auto slot_for = [&](const std::string& var, bool& fresh) {
        int idx = rel.var_index(var);
        fresh = idx < 0;
        if (fresh) {
            rel.vars.push_back(var);
            idx = static_cast<int>(rel.vars.size()) - 1;
        }
        return idx;
    };
    for (const auto& b : scan.value_binds) {
        int col = table.column_index(b.column);
        if (col < 0) throw SchemaError("table '" + scan.table + "' lacks column '" + b.column + "'");
        bool fresh = false;
        int slot = slot_for(b.var, fresh);
        produces.push_back({col, -1, slot, !fresh});
    }
    for (const auto& b : scan.ref_binds) {
        int col = table.column_index(b.fk_column);
        if (col < 0)
            throw SchemaError("table '" + scan.table + "' lacks column '" + b.fk_column + "'");
        ref_targets.push_back(b.target_table);
        bool fresh = false;
        int slot = slot_for(b.var, fresh);
        produces.push_back({col, static_cast<int>(ref_targets.size()) - 1, slot, !fresh});
    }
    std::vector<std::pair<int, Value>> literal_checks;
    for (const auto& eq : scan.literal_eqs) {
        int col = table.column_index(eq.column);
        if (col < 0) throw SchemaError("table '" + scan.table + "' lacks column '" + eq.column + "'");
        literal_checks.emplace_back(col, eq.value);
    }

    auto make_ref = [](const std::string& target, const Value& fk) {
        Ref ref{target, {}};
        if (const auto* i = std::get_if<std::int64_t>(&fk)) ref.key = *i;
        else ref.key = std::get<std::string>(fk);
        return Value{std::move(ref)};
    };

    for (std::size_t r = 0; r < table.rows.size(); ++r) {
        const auto& src = table.rows[r];
        bool ok = true;
        for (const auto& [col, expected] : literal_checks) {
            if (!value_eq(src[static_cast<std::size_t>(col)], expected)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;

        std::vector<Value> out(rel.vars.size(), Value{std::int64_t{0}});
        std::vector<bool> set(rel.vars.size(), false);
        out[0] = table.row_ref(r);
        set[0] = true;
        for (const auto& produce : produces) {
            Value v = produce.target < 0
                          ? src[static_cast<std::size_t>(produce.column)]
                          : make_ref(ref_targets[static_cast<std::size_t>(produce.target)],
                                     src[static_cast<std::size_t>(produce.column)]);
            std::size_t slot = static_cast<std::size_t>(produce.slot);
            if (set[slot]) {
                if (!value_eq(out[slot], v)) {
                    ok = false;
                    break;
                }
            } else {
                out[slot] = std::move(v);
                set[slot] = true;
            }
        }
        if (ok) rel.rows.push_back(std::move(out));
    }
    return rel;
}

Relation hash_join(Relation left, Relation right) {
    std::vector<std::pair<int, int>> key_pairs; // (left idx, right idx)
    std::vector<int> right_extra;               // right columns not joined
    for (std::size_t i = 0; i < right.vars.size(); ++i) {
        int li = left.var_index(right.vars[i]);
        if (li >= 0) key_pairs.emplace_back(li, static_cast<int>(i));
        else right_extra.push_back(static_cast<int>(i));
    }

    Relation out;
    out.vars = left.vars;
    for (int i : right_extra) out.vars.push_back(right.vars[static_cast<std::size_t>(i)]);

    if (key_pairs.empty()) { // cross join
        out.rows.reserve(left.rows.size() * right.rows.size());
        for (const auto& l : left.rows) {
            for (const auto& r : right.rows) {
                auto row = l;
                for (int i : right_extra) row.push_back(r[static_cast<std::size_t>(i)]);
                out.rows.push_back(std::move(row));
            }
        }
        return out;
    }

    auto key_hash = [](const std::vector<Value>& key) {
        std::size_t h = 0xcbf29ce484222325ull;
        for (const auto& v : key) h = (h ^ value_hash(v)) * 0x100000001b3ull;
        return h;
    };
    auto key_of = [&](const std::vector<Value>& row, bool from_left) {
        std::vector<Value> key;
        key.reserve(key_pairs.size());
        for (const auto& [li, ri] : key_pairs)
            key.push_back(row[static_cast<std::size_t>(from_left ? li : ri)]);
        return key;
    };
    auto keys_equal = [](const std::vector<Value>& a, const std::vector<Value>& b) {
        for (std::size_t i = 0; i < a.size(); ++i)
            if (!value_eq(a[i], b[i])) return false;
        return true;
    };

    // Build on the smaller side, probe with the larger.
    bool build_left = left.rows.size() <= right.rows.size();
    const Relation& build = build_left ? left : right;
    const Relation& probe = build_left ? right : left;

    std::unordered_map<std::size_t, std::vector<std::size_t>> table;
    table.reserve(build.rows.size() * 2);
    std::vector<std::vector<Value>> build_keys;
    build_keys.reserve(build.rows.size());
    for (std::size_t i = 0; i < build.rows.size(); ++i) {
        build_keys.push_back(key_of(build.rows[i], build_left));
        table[key_hash(build_keys.back())].push_back(i);
    }

    for (const auto& probe_row : probe.rows) {
        auto key = key_of(probe_row, !build_left);
        auto it = table.find(key_hash(key));
        if (it == table.end()) continue;
        for (std::size_t bi : it->second) {
            if (!keys_equal(key, build_keys[bi])) continue;
            const auto& left_row = build_left ? build.rows[bi] : probe_row;
            const auto& right_row = build_left ? probe_row : build.rows[bi];
            auto row = left_row;
            for (int i : right_extra) row.push_back(right_row[static_cast<std::size_t>(i)]);
            out.rows.push_back(std::move(row));
        }
    }
    return out;
}

} // namespace

FilterOutcome eval_filter(const FilterExpr* filter,
                          const std::function<const Value*(const std::string&)>& lookup) {
    if (!filter) return {true, false};

    struct Eval {
        const std::function<const Value*(const std::string&)>& lookup;
        bool error = false;

        double num(const FilterExpr& e) {
            switch (e.op) {
                case FilterExpr::Op::Number: return e.number;
                case FilterExpr::Op::Var: {
                    const Value* v = lookup(e.var);
                    if (!v || !is_numeric(*v)) {
                        error = true;
                        return 0.0;
                    }
                    return as_double(*v);
                }
                case FilterExpr::Op::Add: return num(*e.lhs) + num(*e.rhs);
                case FilterExpr::Op::Sub: return num(*e.lhs) - num(*e.rhs);
                case FilterExpr::Op::Mul: return num(*e.lhs) * num(*e.rhs);
                case FilterExpr::Op::Div: {
                    double l = num(*e.lhs);
                    double r = num(*e.rhs);
                    if (r == 0.0) {
                        error = true;
                        return 0.0;
                    }
                    return l / r;
                }
                default:
                    error = true; // boolean where a number is required
                    return 0.0;
            }
        }

        bool boolean(const FilterExpr& e) {
            switch (e.op) {
                case FilterExpr::Op::And: return boolean(*e.lhs) & boolean(*e.rhs);
                case FilterExpr::Op::Or: return boolean(*e.lhs) | boolean(*e.rhs);
                case FilterExpr::Op::Lt: return num(*e.lhs) < num(*e.rhs);
                case FilterExpr::Op::Le: return num(*e.lhs) <= num(*e.rhs);
                case FilterExpr::Op::Gt: return num(*e.lhs) > num(*e.rhs);
                case FilterExpr::Op::Ge: return num(*e.lhs) >= num(*e.rhs);
                case FilterExpr::Op::Eq: return num(*e.lhs) == num(*e.rhs);
                case FilterExpr::Op::Ne: return num(*e.lhs) != num(*e.rhs);
                default:
                    error = true; // bare number/variable is not a condition
                    return false;
            }
        }
    };

    Eval eval{lookup};
    bool matched = eval.boolean(*filter);
    if (eval.error) return {false, true};
    return {matched, false};
}

namespace {

void finalize(ResultSet& result, bool distinct) {
    auto row_less = [](const std::vector<Value>& a, const std::vector<Value>& b) {
        for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) {
            if (value_less(a[i], b[i])) return true;
            if (value_less(b[i], a[i])) return false;
        }
        return a.size() < b.size();
    };
    std::sort(result.rows.begin(), result.rows.end(), row_less);
    if (distinct) {
        auto row_eq = [](const std::vector<Value>& a, const std::vector<Value>& b) {
            if (a.size() != b.size()) return false;
            for (std::size_t i = 0; i < a.size(); ++i)
                if (!value_eq(a[i], b[i])) return false;
            return true;
        };
        result.rows.erase(std::unique(result.rows.begin(), result.rows.end(), row_eq),
                          result.rows.end());
    }
}

} // namespace

ResultSet execute_plan(const Plan& plan, const store::Dataset& data) {
    Relation acc;
    bool first = true;
    for (const auto& scan : plan.scans) {
        Relation rel = materialize_scan(scan, data);
        if (first) {
            acc = std::move(rel);
            first = false;
        } else {
            acc = hash_join(std::move(acc), std::move(rel));
        }
        if (acc.rows.empty()) break; // joins cannot resurrect rows
    }

    ResultSet result;
    result.columns = plan.projected_vars;

    std::vector<int> proj;
    for (const auto& v : plan.projected_vars) {
        int idx = acc.var_index(v);
        if (idx < 0 && !acc.rows.empty()) throw Error("unbound projected variable ?" + v);
        proj.push_back(idx);
    }

    for (const auto& row : acc.rows) {
        auto lookup = [&](const std::string& var) -> const Value* {
            int idx = acc.var_index(var);
            return idx < 0 ? nullptr : &row[static_cast<std::size_t>(idx)];
        };
        FilterOutcome outcome = eval_filter(plan.filter.get(), lookup);
        if (outcome.error) {
            ++result.filter_error_count;
            continue;
        }
        if (!outcome.matched) continue;
        std::vector<Value> out;
        out.reserve(proj.size());
        for (int idx : proj) out.push_back(row[static_cast<std::size_t>(idx)]);
        result.rows.push_back(std::move(out));
    }

    finalize(result, plan.distinct);
    return result;
}

bool ResultSet::same_rows(const ResultSet& other) const {
    if (columns != other.columns || rows.size() != other.rows.size()) return false;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != other.rows[r].size()) return false;
        for (std::size_t c = 0; c < rows[r].size(); ++c)
            if (!value_eq(rows[r][c], other.rows[r][c])) return false;
    }
    return true;
}

std::string to_csv(const ResultSet& result) {
    std::ostringstream out;
    for (std::size_t i = 0; i < result.columns.size(); ++i) {
        if (i) out << ',';
        out << result.columns[i];
    }
    out << '\n';
    for (const auto& row : result.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out << ',';
            std::string cell = to_text(row[i]);
            bool needs_quotes = cell.find_first_of(",\"\n\r") != std::string::npos;
            if (needs_quotes) {
                out << '"';
                for (char c : cell) {
                    if (c == '"') out << "\"\"";
                    else out << c;
                }
                out << '"';
            } else {
                out << cell;
            }
        }
        out << '\n';
    }
    return out.str();
}

} // namespace ets::query
