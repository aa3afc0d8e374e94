#pragma once

#include "ets/ontology.hpp"
#include "ets/store.hpp"
#include "ets/value.hpp"

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace ets::mapping {

struct ClassMap {
    std::string table;
    std::string key_column;
};

struct DataPropertyMap {
    std::string table;
    std::string column;
};

struct ObjectPropertyMap {
    std::string source_table;
    std::string fk_column;
    std::string target_table;
};

/// Declarative binding of ontology classes to tables and of properties to
/// columns / foreign keys; one table row is one instance of one class, the
/// row key is the instance identity.
class MappingSpec {
public:
    void add_class(const std::string& name, ClassMap m);           // throws SchemaError
    void add_data_property(const std::string& name, DataPropertyMap m);
    void add_object_property(const std::string& name, ObjectPropertyMap m);

    const std::map<std::string, ClassMap>& classes() const { return classes_; }
    const std::map<std::string, DataPropertyMap>& data_properties() const { return dprops_; }
    const std::map<std::string, ObjectPropertyMap>& object_properties() const { return oprops_; }

    const ClassMap* find_class(const std::string& name) const;
    const DataPropertyMap* find_data_property(const std::string& name) const;
    const ObjectPropertyMap* find_object_property(const std::string& name) const;
    bool has_property(const std::string& name) const;

    /// Key column of the class mapped onto `table`; throws LookupError when
    /// no class maps the table (instances would have no identity).
    const std::string& key_column_of(const std::string& table) const;

    static MappingSpec parse(const std::string& text, const std::string& origin = "<string>");
    static MappingSpec load(const std::filesystem::path& file);

    /// Shipped spec covering the full canonical schema with the vocab
    /// property names used by the rule catalogue.
    static const std::string& default_text();
    static const MappingSpec& standard();

private:
    std::map<std::string, ClassMap> classes_;
    std::map<std::string, DataPropertyMap> dprops_;
    std::map<std::string, ObjectPropertyMap> oprops_;

    void check_new_property(const std::string& name) const;
};

/// One subject/predicate/object assertion template. Predicate "a" asserts
/// class membership.
struct Term {
    enum class Kind { Variable, Name, Literal };
    Kind kind = Kind::Variable;
    std::string text; // variable name (without '?') or vocab name
    Value literal;    // when kind == Literal

    static Term var(std::string name) { return {Kind::Variable, std::move(name), {}}; }
    static Term name(std::string n) { return {Kind::Name, std::move(n), {}}; }
    static Term lit(Value v) { return {Kind::Literal, "", std::move(v)}; }

    bool operator==(const Term& o) const {
        if (kind != o.kind || text != o.text) return false;
        return kind != Kind::Literal || value_eq(literal, o.literal);
    }
};

struct TriplePattern {
    Term subject;
    std::string predicate; // "a" or a property name
    Term object;

    bool operator==(const TriplePattern& o) const {
        return subject == o.subject && predicate == o.predicate && object == o.object;
    }
};

struct AccessSpec {
    enum class Kind { TableScan, ColumnAccess, FkJoin };
    Kind kind;
    std::string table;
    std::string column;       // ColumnAccess / FkJoin (fk column)
    std::string target_table; // FkJoin

    bool operator==(const AccessSpec&) const = default;
};

/// "a"/class patterns -> table scan; data properties -> column access;
/// object properties -> fk join. Throws LookupError on unmapped predicates.
AccessSpec resolve_pattern(const MappingSpec& spec, const TriplePattern& pattern);

struct ValidationFinding {
    std::string kind; // "unknown-table", "unknown-column", "unknown-class",
                      // "unknown-property-prefix", "bad-key", "bad-fk-target"
    std::string subject;
    std::string message;
};

/// Coherence of the spec against the canonical schema and the ontology
/// vocabulary. Empty result iff the spec is coherent.
std::vector<ValidationFinding> validate_mapping(const MappingSpec& spec,
                                                const ontology::Ontology& onto);

/// A virtual triple implied by one relational row under the mapping.
struct VirtualTriple {
    Value subject;          // always a Ref
    std::string predicate;  // "a" or property name
    bool object_is_class = false;
    std::string class_name; // when object_is_class
    Value object;           // otherwise: literal column value or Ref
};

/// The full virtual triple set implied by (spec, dataset); the naive
/// evaluator matches patterns directly against it.
std::vector<VirtualTriple> virtual_triples(const MappingSpec& spec, const store::Dataset& data);

} // namespace ets::mapping
