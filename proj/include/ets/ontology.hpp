#pragma once

#include <filesystem>
#include <set>
#include <string>
#include <vector>

namespace ets::ontology {

enum class View { Contextual, Scenario, Policy };

std::string view_name(View v);
View parse_view(const std::string& name); // throws ParseError

struct Concept {
    std::string name;
    std::set<View> views; // non-empty
    std::string definition;
};

enum class RelationKind { Specialization, Meronymy, Association };

struct Relation {
    RelationKind kind;
    std::string label; // association label; "isa"/"partof" otherwise
    std::string source;
    std::string target;
};

struct InconsistencyFinding {
    std::string invariant; // "specialization-cycle", "meronymy-cycle", "dangling-endpoint"
    std::vector<std::string> elements;
    std::string message;
};

/// The EREON concept graph: concepts grouped in the contextual, scenario and
/// policy views, extended through specialization and meronymy plus free
/// labeled associations. Immutable once loaded.
class Ontology {
public:
    void add_concept(Concept c); // throws SchemaError on duplicate name or empty views
    void add_relation(Relation r);

    bool has_concept(const std::string& name) const;
    const Concept& concept_named(const std::string& name) const; // throws LookupError
    const std::vector<Concept>& concepts() const { return concepts_; }
    const std::vector<Relation>& relations() const { return relations_; }

    /// Structural consistency: relation endpoints resolve and the
    /// specialization and meronymy graphs are acyclic. Empty result iff
    /// all invariants hold; each cycle is reported once, with its path.
    std::vector<InconsistencyFinding> check_consistency() const;

    /// Transitive closure of inverse specialization. Throws LookupError on
    /// an unknown concept.
    std::set<std::string> descendants(const std::string& name) const;

    std::string serialize() const;

    static Ontology parse(const std::string& text, const std::string& origin = "<string>");
    static Ontology load(const std::filesystem::path& file);

    /// Shipped seed: the 19 foundational concepts of the three views plus
    /// the NIMs-derived contextual subset the rule catalogue relies on.
    static const std::string& seed_text();
    static Ontology seed();

private:
    std::vector<Concept> concepts_;
    std::vector<Relation> relations_;
};

/// Lowercased, non-alphanumerics collapsed to single underscores; the form
/// under which mapping class names are matched against concept names.
std::string normalize_name(const std::string& name);

} // namespace ets::ontology
