#pragma once

#include "ets/mapping.hpp"
#include "ets/store.hpp"
#include "ets/value.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ets::query {

/// Expression tree of a FILTER clause: variables, numeric literals, binary
/// arithmetic, comparisons, and boolean connectives.
struct FilterExpr {
    enum class Op { Number, Var, Add, Sub, Mul, Div, Lt, Le, Gt, Ge, Eq, Ne, And, Or };
    Op op = Op::Number;
    double number = 0.0;
    std::string var;
    std::unique_ptr<FilterExpr> lhs;
    std::unique_ptr<FilterExpr> rhs;

    bool equals(const FilterExpr& other) const;
    std::unique_ptr<FilterExpr> clone() const;
    void collect_vars(std::vector<std::string>& out) const;
};

struct QueryAst {
    std::vector<std::string> projected_vars; // without '?'
    bool distinct = false;
    std::vector<mapping::TriplePattern> patterns; // ';' lists already expanded
    std::unique_ptr<FilterExpr> filter;

    bool equals(const QueryAst& other) const;
};

/// Parses the catalogue query grammar subset: SELECT [DISTINCT], basic graph
/// patterns with ';' predicate lists and 'a' type assertions, one FILTER.
/// The vocab: prefix is stripped. Anything outside the subset raises a
/// named-unsupported-feature ParseError; syntax errors carry line:column.
QueryAst parse_query(const std::string& text);

/// Canonical text form; re-parsing yields an equal AST.
std::string pretty_print(const QueryAst& ast);

struct ScanColumnBind {
    std::string column;
    std::string var;
};
struct ScanRefBind {
    std::string fk_column;
    std::string target_table;
    std::string var;
};
struct ScanLiteralEq {
    std::string column;
    Value value;
};

/// One collapsed scan: all patterns sharing a subject variable over the same
/// table. Produces a Ref binding for the subject plus column/fk bindings.
struct ScanNode {
    std::string table;
    std::string key_column;
    std::string subject_var;
    std::vector<ScanColumnBind> value_binds;
    std::vector<ScanRefBind> ref_binds;
    std::vector<ScanLiteralEq> literal_eqs;
    bool impossible = false; // subject constrained to two different tables
};

struct Plan {
    std::vector<ScanNode> scans; // join order; shared variables are join keys
    std::unique_ptr<FilterExpr> filter;
    std::vector<std::string> projected_vars;
    bool distinct = false;
};

/// Collapses patterns into scans, orders joins by connectivity, pushes the
/// filter above the joins. Throws LookupError for unmapped predicates.
Plan plan_query(const QueryAst& ast, const mapping::MappingSpec& spec);

struct ResultSet {
    std::vector<std::string> columns;
    std::vector<std::vector<Value>> rows; // canonical sort over projected values
    std::uint64_t filter_error_count = 0; // rows dropped on division by zero etc.

    bool same_rows(const ResultSet& other) const;
};

/// Hash-join execution over an immutable dataset; deterministic output,
/// DISTINCT applied, canonical row ordering.
ResultSet execute_plan(const Plan& plan, const store::Dataset& data);

/// Independent oracle: enumerates the virtual triple set and matches
/// patterns by nested-loop unification in pattern order. Must agree with
/// execute_plan on every input.
ResultSet evaluate_naive(const QueryAst& ast, const mapping::MappingSpec& spec,
                         const store::Dataset& data);

std::string to_csv(const ResultSet& result);

/// Shared filter semantics: 64-bit float arithmetic, exact comparisons;
/// evaluation errors (division by zero, non-numeric operand) drop the row.
/// Exposed so both evaluators and the tests use one definition.
struct FilterOutcome {
    bool matched = false;
    bool error = false;
};
FilterOutcome eval_filter(const FilterExpr* filter,
                          const std::function<const Value*(const std::string&)>& lookup);

} // namespace ets::query
