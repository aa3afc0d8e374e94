#include "ets/ontology.hpp"

#include "ets/errors.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

namespace ets::ontology {

std::string view_name(View v) {
    switch (v) {
        case View::Contextual: return "contextual";
        case View::Scenario: return "scenario";
        case View::Policy: return "policy";
    }
    throw Error("unreachable view");
}

View parse_view(const std::string& name) {
    if (name == "contextual") return View::Contextual;
    if (name == "scenario") return View::Scenario;
    if (name == "policy") return View::Policy;
    throw ParseError("unknown view '" + name + "'");
}

void Ontology::add_concept(Concept c) {
    if (c.views.empty()) throw SchemaError("concept '" + c.name + "' has no views");
    if (has_concept(c.name)) throw SchemaError("duplicate concept '" + c.name + "'");
    concepts_.push_back(std::move(c));
}

void Ontology::add_relation(Relation r) { relations_.push_back(std::move(r)); }

bool Ontology::has_concept(const std::string& name) const {
    for (const auto& c : concepts_)
        if (c.name == name) return true;
    return false;
}

const Concept& Ontology::concept_named(const std::string& name) const {
    for (const auto& c : concepts_)
        if (c.name == name) return c;
    throw LookupError("unknown concept '" + name + "'");
}

namespace {

// All elementary cycles reachable by DFS, each reported once (rotated so the
// lexicographically smallest node comes first).
std::vector<std::vector<std::string>> find_cycles(
    const std::map<std::string, std::vector<std::string>>& adj) {
    std::vector<std::vector<std::string>> cycles;
    std::set<std::vector<std::string>> seen;
    std::map<std::string, int> color; // 0 white, 1 gray, 2 black
    std::vector<std::string> stack;

    std::function<void(const std::string&)> dfs = [&](const std::string& node) {
        color[node] = 1;
        stack.push_back(node);
        auto it = adj.find(node);
        if (it != adj.end()) {
            for (const auto& next : it->second) {
                if (color[next] == 1) {
                    auto start = std::find(stack.begin(), stack.end(), next);
                    std::vector<std::string> cycle(start, stack.end());
                    auto smallest = std::min_element(cycle.begin(), cycle.end());
                    std::rotate(cycle.begin(), smallest, cycle.end());
                    if (seen.insert(cycle).second) cycles.push_back(cycle);
                } else if (color[next] == 0) {
                    dfs(next);
                }
            }
        }
        stack.pop_back();
        color[node] = 2;
    };

    for (const auto& [node, _] : adj)
        if (color[node] == 0) dfs(node);
    return cycles;
}

std::string join(const std::vector<std::string>& parts, const std::string& sep) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) out += sep;
        out += parts[i];
    }
    return out;
}

} // namespace

std::vector<InconsistencyFinding> Ontology::check_consistency() const {
    std::vector<InconsistencyFinding> findings;

    for (const auto& r : relations_) {
        for (const auto& endpoint : {r.source, r.target}) {
            if (!has_concept(endpoint)) {
                findings.push_back({"dangling-endpoint",
                                    {endpoint},
                                    "relation '" + r.label + "' " + r.source + " -> " + r.target +
                                        " references undeclared concept '" + endpoint + "'"});
            }
        }
    }

    for (auto kind : {RelationKind::Specialization, RelationKind::Meronymy}) {
        std::map<std::string, std::vector<std::string>> adj;
        for (const auto& r : relations_) {
            if (r.kind != kind) continue;
            adj[r.source].push_back(r.target);
            adj[r.target]; // ensure node exists
        }
        const char* name =
            kind == RelationKind::Specialization ? "specialization-cycle" : "meronymy-cycle";
        for (auto& cycle : find_cycles(adj)) {
            findings.push_back(
                {name, cycle, std::string(name) + ": [" + join(cycle, ", ") + "]"});
        }
    }
    return findings;
}

std::set<std::string> Ontology::descendants(const std::string& name) const {
    if (!has_concept(name)) throw LookupError("unknown concept '" + name + "'");
    std::map<std::string, std::vector<std::string>> children; // parent -> children
    for (const auto& r : relations_)
        if (r.kind == RelationKind::Specialization) children[r.target].push_back(r.source);
    std::set<std::string> out;
    std::vector<std::string> work{name};
    while (!work.empty()) {
        std::string node = std::move(work.back());
        work.pop_back();
        for (const auto& child : children[node])
            if (out.insert(child).second) work.push_back(child);
    }
    out.erase(name); // irreflexive on acyclic input
    return out;
}

namespace {

// Names are bare words or double-quoted strings ('\' escapes '"' and '\').
struct LineLexer {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line;
    const std::string& origin;

    void skip_ws() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t')) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    std::string token() {
        skip_ws();
        if (pos >= text.size()) throw ParseError(origin + ": unexpected end of line", line);
        if (text[pos] == '"') {
            ++pos;
            std::string out;
            while (pos < text.size() && text[pos] != '"') {
                if (text[pos] == '\\' && pos + 1 < text.size()) ++pos;
                out += text[pos++];
            }
            if (pos >= text.size()) throw ParseError(origin + ": unterminated string", line);
            ++pos;
            return out;
        }
        std::size_t start = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        return text.substr(start, pos - start);
    }
};

std::string quote_name(const std::string& name) {
    bool bare = !name.empty() && name.find_first_of(" \t\"\\") == std::string::npos;
    if (bare) return name;
    std::string out = "\"";
    for (char c : name) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

Ontology Ontology::parse(const std::string& text, const std::string& origin) {
    Ontology onto;
    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        LineLexer lex{raw, 0, lineno, origin};
        if (lex.done()) continue;
        if (raw[lex.pos] == '#') continue;
        std::string head = lex.token();
        try {
            if (head == "concept") {
                Concept c;
                c.name = lex.token();
                std::string views = lex.token();
                if (views.rfind("views=", 0) != 0)
                    throw ParseError(origin + ": expected views=<...>", lineno);
                std::istringstream vs(views.substr(6));
                std::string v;
                while (std::getline(vs, v, ',')) c.views.insert(parse_view(v));
                if (c.views.empty()) throw ParseError(origin + ": empty view list", lineno);
                c.definition = lex.done() ? "" : lex.token();
                onto.add_concept(std::move(c));
            } else if (head == "isa" || head == "partof") {
                std::string a = lex.token();
                std::string b = lex.token();
                auto kind = head == "isa" ? RelationKind::Specialization : RelationKind::Meronymy;
                onto.add_relation({kind, head, a, b});
            } else if (head == "rel") {
                std::string label = lex.token();
                std::string a = lex.token();
                std::string b = lex.token();
                onto.add_relation({RelationKind::Association, label, a, b});
            } else {
                throw ParseError(origin + ": unknown directive '" + head + "'", lineno);
            }
        } catch (const SchemaError& e) {
            throw ParseError(origin + ": " + e.what(), lineno);
        }
        if (!lex.done()) throw ParseError(origin + ": trailing tokens", lineno);
    }
    return onto;
}

Ontology Ontology::load(const std::filesystem::path& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) throw Error("cannot open " + file.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), file.filename().string());
}

std::string Ontology::serialize() const {
    std::ostringstream out;
    for (const auto& c : concepts_) {
        out << "concept " << quote_name(c.name) << " views=";
        bool first = true;
        for (auto v : c.views) {
            if (!first) out << ',';
            out << view_name(v);
            first = false;
        }
        out << ' ' << quote_name(c.definition) << '\n';
    }
    for (const auto& r : relations_) {
        switch (r.kind) {
            case RelationKind::Specialization: out << "isa "; break;
            case RelationKind::Meronymy: out << "partof "; break;
            case RelationKind::Association: out << "rel " << quote_name(r.label) << ' '; break;
        }
        out << quote_name(r.source) << ' ' << quote_name(r.target) << '\n';
    }
    return out.str();
}

Ontology Ontology::seed() { return parse(seed_text(), "seed"); }

std::string normalize_name(const std::string& name) {
    std::string out;
    bool pending_sep = false;
    for (unsigned char c : name) {
        if (std::isalnum(c)) {
            if (pending_sep && !out.empty()) out += '_';
            pending_sep = false;
            out += static_cast<char>(std::tolower(c));
        } else {
            pending_sep = true;
        }
    }
    return out;
}

} // namespace ets::ontology
