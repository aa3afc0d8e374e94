#include "ets/mapping.hpp"

#include "ets/errors.hpp"

#include <fstream>
#include <sstream>

namespace ets::mapping {

namespace {

void require_table_column(const std::string& table, const std::string& column,
                          const std::string& context) {
    if (!store::is_canonical_table(table))
        throw SchemaError(context + ": unknown table '" + table + "'");
    if (store::table_schema(table).column_index(column) < 0)
        throw SchemaError(context + ": unknown column '" + table + "." + column + "'");
}

} // namespace

void MappingSpec::check_new_property(const std::string& name) const {
    if (has_property(name)) throw SchemaError("duplicate property '" + name + "'");
}

void MappingSpec::add_class(const std::string& name, ClassMap m) {
    if (classes_.count(name)) throw SchemaError("duplicate class '" + name + "'");
    require_table_column(m.table, m.key_column, "class " + name);
    classes_.emplace(name, std::move(m));
}

void MappingSpec::add_data_property(const std::string& name, DataPropertyMap m) {
    check_new_property(name);
    require_table_column(m.table, m.column, "dprop " + name);
    dprops_.emplace(name, std::move(m));
}

void MappingSpec::add_object_property(const std::string& name, ObjectPropertyMap m) {
    check_new_property(name);
    require_table_column(m.source_table, m.fk_column, "oprop " + name);
    if (!store::is_canonical_table(m.target_table))
        throw SchemaError("oprop " + name + ": unknown table '" + m.target_table + "'");
    oprops_.emplace(name, std::move(m));
}

const ClassMap* MappingSpec::find_class(const std::string& name) const {
    auto it = classes_.find(name);
    return it == classes_.end() ? nullptr : &it->second;
}

const DataPropertyMap* MappingSpec::find_data_property(const std::string& name) const {
    auto it = dprops_.find(name);
    return it == dprops_.end() ? nullptr : &it->second;
}

const ObjectPropertyMap* MappingSpec::find_object_property(const std::string& name) const {
    auto it = oprops_.find(name);
    return it == oprops_.end() ? nullptr : &it->second;
}

bool MappingSpec::has_property(const std::string& name) const {
    return dprops_.count(name) || oprops_.count(name);
}

const std::string& MappingSpec::key_column_of(const std::string& table) const {
    for (const auto& [name, cls] : classes_)
        if (cls.table == table) return cls.key_column;
    throw LookupError("no class maps table '" + table + "'");
}

MappingSpec MappingSpec::parse(const std::string& text, const std::string& origin) {
    MappingSpec spec;
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::istringstream ls(line);
        std::string head;
        if (!(ls >> head) || head[0] == '#') continue;
        try {
            if (head == "class") {
                std::string name, kw_table, table, kw_key, key;
                if (!(ls >> name >> kw_table >> table >> kw_key >> key) || kw_table != "table" ||
                    kw_key != "key")
                    throw ParseError("expected: class <name> table <table> key <column>");
                spec.add_class(name, {table, key});
            } else if (head == "dprop") {
                std::string name, target;
                if (!(ls >> name >> target)) throw ParseError("expected: dprop <name> <table>.<column>");
                auto dot = target.find('.');
                if (dot == std::string::npos)
                    throw ParseError("expected <table>.<column>, got '" + target + "'");
                spec.add_data_property(name, {target.substr(0, dot), target.substr(dot + 1)});
            } else if (head == "oprop") {
                std::string name, source, arrow, target;
                if (!(ls >> name >> source >> arrow >> target) || arrow != "->")
                    throw ParseError("expected: oprop <name> <table>.<fkColumn> -> <table>");
                auto dot = source.find('.');
                if (dot == std::string::npos)
                    throw ParseError("expected <table>.<fkColumn>, got '" + source + "'");
                spec.add_object_property(name,
                                         {source.substr(0, dot), source.substr(dot + 1), target});
            } else {
                throw ParseError("unknown directive '" + head + "'");
            }
        } catch (const Error& e) {
            throw ParseError(origin + ": " + e.what(), lineno);
        }
    }
    return spec;
}

MappingSpec MappingSpec::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), file.filename().string());
}

const MappingSpec& MappingSpec::standard() {
    static const MappingSpec spec = parse(default_text(), "default-mapping");
    return spec;
}

AccessSpec resolve_pattern(const MappingSpec& spec, const TriplePattern& pattern) {
    if (pattern.predicate == "a") {
        if (pattern.object.kind != Term::Kind::Name)
            throw LookupError("type pattern requires a class name object");
        const ClassMap* cls = spec.find_class(pattern.object.text);
        if (!cls) throw LookupError("class '" + pattern.object.text + "' not in class maps");
        return {AccessSpec::Kind::TableScan, cls->table, "", ""};
    }
    if (const DataPropertyMap* d = spec.find_data_property(pattern.predicate))
        return {AccessSpec::Kind::ColumnAccess, d->table, d->column, ""};
    if (const ObjectPropertyMap* o = spec.find_object_property(pattern.predicate))
        return {AccessSpec::Kind::FkJoin, o->source_table, o->fk_column, o->target_table};
    throw LookupError("unmapped predicate '" + pattern.predicate + "'");
}

std::vector<ValidationFinding> validate_mapping(const MappingSpec& spec,
                                                const ontology::Ontology& onto) {
    std::vector<ValidationFinding> findings;

    std::set<std::string> normalized_concepts;
    for (const auto& c : onto.concepts()) normalized_concepts.insert(ontology::normalize_name(c.name));

    auto check_table = [&](const std::string& owner, const std::string& table,
                           const std::string& column) {
        if (!store::is_canonical_table(table)) {
            findings.push_back({"unknown-table", owner, owner + " references unknown table '" + table + "'"});
            return;
        }
        if (!column.empty() && store::table_schema(table).column_index(column) < 0)
            findings.push_back({"unknown-column", owner,
                                owner + " references unknown column '" + table + "." + column + "'"});
    };

    for (const auto& [name, cls] : spec.classes()) {
        check_table("class " + name, cls.table, cls.key_column);
        if (!normalized_concepts.count(ontology::normalize_name(name)))
            findings.push_back({"unknown-class", name,
                                "class '" + name + "' has no concept in the ontology vocabulary"});
    }
    // Property names carry their owning class as a prefix; a property whose
    // prefix resolves to no concept is outside the vocabulary.
    auto check_property_prefix = [&](const std::string& name) {
        for (const auto& concept_name : normalized_concepts) {
            if (name.size() > concept_name.size() && name.rfind(concept_name + "_", 0) == 0) return;
        }
        findings.push_back({"unknown-property-prefix", name,
                            "property '" + name + "' is not prefixed by any ontology concept"});
    };
    for (const auto& [name, d] : spec.data_properties()) {
        check_table("dprop " + name, d.table, d.column);
        check_property_prefix(name);
    }
    for (const auto& [name, o] : spec.object_properties()) {
        check_table("oprop " + name, o.source_table, o.fk_column);
        check_table("oprop " + name, o.target_table, "");
        check_property_prefix(name);
        if (store::is_canonical_table(o.source_table) && store::is_canonical_table(o.target_table)) {
            // The fk column must be declared as a foreign key into the target.
            bool declared = false;
            for (const auto& [col, target] : store::table_schema(o.source_table).foreign_keys)
                declared = declared || (col == o.fk_column && target == o.target_table);
            if (!declared)
                findings.push_back({"bad-fk-target", name,
                                    "oprop '" + name + "': " + o.source_table + "." + o.fk_column +
                                        " is not a declared foreign key into " + o.target_table});
        }
    }
    return findings;
}

std::vector<VirtualTriple> virtual_triples(const MappingSpec& spec, const store::Dataset& data) {
    std::vector<VirtualTriple> triples;
    for (const auto& [class_name, cls] : spec.classes()) {
        if (!data.has_table(cls.table)) continue;
        const store::Table& table = data.table(cls.table);
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            VirtualTriple t;
            t.subject = table.row_ref(r);
            t.predicate = "a";
            t.object_is_class = true;
            t.class_name = class_name;
            triples.push_back(std::move(t));
        }
    }
    for (const auto& [prop, d] : spec.data_properties()) {
        if (!data.has_table(d.table)) continue;
        const store::Table& table = data.table(d.table);
        int col = table.column_index(d.column);
        if (col < 0) continue;
        for (std::size_t r = 0; r < table.rows.size(); ++r)
            triples.push_back({table.row_ref(r), prop, false, "",
                               table.rows[r][static_cast<std::size_t>(col)]});
    }
    for (const auto& [prop, o] : spec.object_properties()) {
        if (!data.has_table(o.source_table)) continue;
        const store::Table& table = data.table(o.source_table);
        int col = table.column_index(o.fk_column);
        if (col < 0) continue;
        for (std::size_t r = 0; r < table.rows.size(); ++r) {
            const Value& fk = table.rows[r][static_cast<std::size_t>(col)];
            Ref target{o.target_table, {}};
            if (const auto* i = std::get_if<std::int64_t>(&fk)) target.key = *i;
            else target.key = std::get<std::string>(fk);
            triples.push_back({table.row_ref(r), prop, false, "", target});
        }
    }
    return triples;
}

} // namespace ets::mapping
