#include "ets/errors.hpp"
#include "ets/query.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <set>
#include <sstream>

namespace ets::query {

namespace {

using mapping::Term;
using mapping::TriplePattern;

enum class TokKind { Select, Distinct, Where, Filter, TypeA, Var, VocabName, String, Number,
                     Punct, End };

struct Token {
    TokKind kind;
    std::string text; // var/vocab name, punct spelling
    double number = 0.0;
    std::size_t line = 1, col = 1;
};

const std::set<std::string>& unsupported_keywords() {
    static const std::set<std::string> kws = {
        "OPTIONAL", "UNION", "PREFIX", "BASE", "ORDER", "LIMIT", "OFFSET", "GROUP", "HAVING",
        "ASK", "CONSTRUCT", "DESCRIBE", "INSERT", "DELETE", "MINUS", "EXISTS", "NOT", "BIND",
        "VALUES", "SERVICE", "GRAPH", "REDUCED", "FROM", "NAMED", "AS", "UNDEF"};
    return kws;
}

struct Lexer {
    const std::string& text;
    std::size_t pos = 0;
    std::size_t line = 1, col = 1;

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("query syntax error at " + std::to_string(line) + ":" +
                         std::to_string(col) + ": " + msg);
    }

    void advance(std::size_t n = 1) {
        for (std::size_t i = 0; i < n && pos < text.size(); ++i, ++pos) {
            if (text[pos] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    }

    void skip_ws() {
        while (pos < text.size()) {
            char c = text[pos];
            if (c == '#') { // line comment
                while (pos < text.size() && text[pos] != '\n') advance();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                advance();
            } else {
                break;
            }
        }
    }

    static bool name_char(char c) {
        return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
    }

    Token next() {
        skip_ws();
        Token tok;
        tok.line = line;
        tok.col = col;
        if (pos >= text.size()) {
            tok.kind = TokKind::End;
            return tok;
        }
        char c = text[pos];

        if (c == '?') {
            advance();
            std::size_t start = pos;
            while (pos < text.size() && name_char(text[pos])) advance();
            if (pos == start) fail("expected variable name after '?'");
            tok.kind = TokKind::Var;
            tok.text = text.substr(start, pos - start);
            return tok;
        }
        if (c == '$') {
            advance();
            std::size_t start = pos;
            while (pos < text.size() && name_char(text[pos])) advance();
            fail("unbound template parameter $" + text.substr(start, pos - start));
        }
        if (c == '"') {
            advance();
            std::size_t start = pos;
            while (pos < text.size() && text[pos] != '"' && text[pos] != '\n') advance();
            if (pos >= text.size() || text[pos] != '"') fail("unterminated string literal");
            tok.kind = TokKind::String;
            tok.text = text.substr(start, pos - start);
            advance();
            return tok;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
            if (pos < text.size() && text[pos] == '.') {
                advance();
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
            }
            if (pos < text.size() && (text[pos] == 'e' || text[pos] == 'E')) {
                advance();
                if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) advance();
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) advance();
            }
            std::string num = text.substr(start, pos - start);
            tok.kind = TokKind::Number;
            auto res = std::from_chars(num.data(), num.data() + num.size(), tok.number);
            if (res.ec != std::errc() || res.ptr != num.data() + num.size())
                fail("malformed number '" + num + "'");
            return tok;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < text.size() && name_char(text[pos])) advance();
            std::string word = text.substr(start, pos - start);
            if (pos < text.size() && text[pos] == ':') {
                advance();
                std::size_t lstart = pos;
                while (pos < text.size() && name_char(text[pos])) advance();
                if (word != "vocab")
                    fail("unsupported feature: prefix '" + word + ":' (only vocab: is known)");
                if (pos == lstart) fail("expected name after 'vocab:'");
                tok.kind = TokKind::VocabName;
                tok.text = text.substr(lstart, pos - lstart);
                return tok;
            }
            std::string upper = word;
            std::transform(upper.begin(), upper.end(), upper.begin(),
                           [](unsigned char ch) { return std::toupper(ch); });
            if (upper == "SELECT") tok.kind = TokKind::Select;
            else if (upper == "DISTINCT") tok.kind = TokKind::Distinct;
            else if (upper == "WHERE") tok.kind = TokKind::Where;
            else if (upper == "FILTER") tok.kind = TokKind::Filter;
            else if (word == "a") tok.kind = TokKind::TypeA;
            else if (unsupported_keywords().count(upper))
                fail("unsupported feature: " + upper);
            else
                fail("unknown construct '" + word + "'");
            return tok;
        }
        // punctuation and operators
        static const char* two_char[] = {"<=", ">=", "!=", "&&", "||"};
        for (const char* op : two_char) {
            if (text.compare(pos, 2, op) == 0) {
                tok.kind = TokKind::Punct;
                tok.text = op;
                advance(2);
                return tok;
            }
        }
        static const std::string one_char = "{}();.<>=+-*/";
        if (one_char.find(c) != std::string::npos) {
            tok.kind = TokKind::Punct;
            tok.text = std::string(1, c);
            advance();
            return tok;
        }
        fail(std::string("unexpected character '") + c + "'");
    }
};

struct Parser {
    Lexer lex;
    Token tok;

    explicit Parser(const std::string& text) : lex{text} { tok = lex.next(); }

    [[noreturn]] void fail(const std::string& msg) const {
        throw ParseError("query syntax error at " + std::to_string(tok.line) + ":" +
                         std::to_string(tok.col) + ": " + msg);
    }

    void bump() { tok = lex.next(); }

    bool at_punct(const char* p) const { return tok.kind == TokKind::Punct && tok.text == p; }

    void expect_punct(const char* p) {
        if (!at_punct(p)) fail(std::string("expected '") + p + "'");
        bump();
    }

    QueryAst parse() {
        QueryAst ast;
        if (tok.kind != TokKind::Select) fail("expected SELECT");
        bump();
        if (tok.kind == TokKind::Distinct) {
            ast.distinct = true;
            bump();
        }
        while (tok.kind == TokKind::Var) {
            ast.projected_vars.push_back(tok.text);
            bump();
        }
        if (ast.projected_vars.empty()) fail("expected at least one projected variable");
        if (tok.kind != TokKind::Where) fail("expected WHERE");
        bump();
        expect_punct("{");

        while (!at_punct("}")) {
            if (tok.kind == TokKind::End) fail("unexpected end of query: unbalanced brace");
            if (tok.kind == TokKind::Filter) {
                if (ast.filter) fail("only one FILTER clause is supported");
                bump();
                expect_punct("(");
                ast.filter = parse_or();
                expect_punct(")");
                continue;
            }
            parse_triple_block(ast);
        }
        bump(); // '}'
        if (tok.kind != TokKind::End) fail("trailing input after '}'");

        validate(ast);
        return ast;
    }

    Term parse_term(bool object_position) {
        switch (tok.kind) {
            case TokKind::Var: {
                Term t = Term::var(tok.text);
                bump();
                return t;
            }
            case TokKind::VocabName: {
                Term t = Term::name(tok.text);
                bump();
                return t;
            }
            case TokKind::String: {
                if (!object_position) fail("literals may only appear in object position");
                Term t = Term::lit(Value{tok.text});
                bump();
                return t;
            }
            case TokKind::Number: {
                if (!object_position) fail("literals may only appear in object position");
                Term t = Term::lit(Value{tok.number});
                bump();
                return t;
            }
            default: fail("expected variable, vocab: name, or literal");
        }
    }

    void parse_triple_block(QueryAst& ast) {
        Term subject = parse_term(false);
        while (true) {
            std::string predicate;
            if (tok.kind == TokKind::TypeA) {
                predicate = "a";
                bump();
            } else if (tok.kind == TokKind::VocabName) {
                predicate = tok.text;
                bump();
            } else {
                fail("expected predicate ('a' or vocab: name)");
            }
            Term object = parse_term(true);
            ast.patterns.push_back({subject, predicate, object});
            if (at_punct(";")) {
                bump();
                continue;
            }
            if (at_punct(".")) {
                bump();
                return;
            }
            fail("expected ';' or '.' after triple pattern");
        }
    }

    std::unique_ptr<FilterExpr> make_node(FilterExpr::Op op, std::unique_ptr<FilterExpr> l,
                                          std::unique_ptr<FilterExpr> r) {
        auto node = std::make_unique<FilterExpr>();
        node->op = op;
        node->lhs = std::move(l);
        node->rhs = std::move(r);
        return node;
    }

    std::unique_ptr<FilterExpr> parse_or() {
        auto left = parse_and();
        while (at_punct("||")) {
            bump();
            left = make_node(FilterExpr::Op::Or, std::move(left), parse_and());
        }
        return left;
    }

    std::unique_ptr<FilterExpr> parse_and() {
        auto left = parse_cmp();
        while (at_punct("&&")) {
            bump();
            left = make_node(FilterExpr::Op::And, std::move(left), parse_cmp());
        }
        return left;
    }

    std::unique_ptr<FilterExpr> parse_cmp() {
        auto left = parse_add();
        if (tok.kind == TokKind::Punct) {
            FilterExpr::Op op;
            if (tok.text == "<") op = FilterExpr::Op::Lt;
            else if (tok.text == "<=") op = FilterExpr::Op::Le;
            else if (tok.text == ">") op = FilterExpr::Op::Gt;
            else if (tok.text == ">=") op = FilterExpr::Op::Ge;
            else if (tok.text == "=") op = FilterExpr::Op::Eq;
            else if (tok.text == "!=") op = FilterExpr::Op::Ne;
            else return left;
            bump();
            return make_node(op, std::move(left), parse_add());
        }
        return left;
    }

    std::unique_ptr<FilterExpr> parse_add() {
        auto left = parse_mul();
        while (at_punct("+") || at_punct("-")) {
            auto op = tok.text == "+" ? FilterExpr::Op::Add : FilterExpr::Op::Sub;
            bump();
            left = make_node(op, std::move(left), parse_mul());
        }
        return left;
    }

    std::unique_ptr<FilterExpr> parse_mul() {
        auto left = parse_primary();
        while (at_punct("*") || at_punct("/")) {
            auto op = tok.text == "*" ? FilterExpr::Op::Mul : FilterExpr::Op::Div;
            bump();
            left = make_node(op, std::move(left), parse_primary());
        }
        return left;
    }

    std::unique_ptr<FilterExpr> parse_primary() {
        if (at_punct("(")) {
            bump();
            auto inner = parse_or();
            expect_punct(")");
            return inner;
        }
        auto node = std::make_unique<FilterExpr>();
        if (tok.kind == TokKind::Number) {
            node->op = FilterExpr::Op::Number;
            node->number = tok.number;
            bump();
            return node;
        }
        if (tok.kind == TokKind::Var) {
            node->op = FilterExpr::Op::Var;
            node->var = tok.text;
            bump();
            return node;
        }
        fail("expected number, variable, or '(' in filter expression");
    }

    void validate(const QueryAst& ast) {
        std::set<std::string> pattern_vars;
        for (const auto& p : ast.patterns) {
            if (p.subject.kind == Term::Kind::Variable) pattern_vars.insert(p.subject.text);
            if (p.object.kind == Term::Kind::Variable) pattern_vars.insert(p.object.text);
        }
        for (const auto& v : ast.projected_vars)
            if (!pattern_vars.count(v))
                throw ParseError("projected variable ?" + v + " does not occur in any pattern");
        if (ast.filter) {
            std::vector<std::string> fvars;
            ast.filter->collect_vars(fvars);
            for (const auto& v : fvars)
                if (!pattern_vars.count(v))
                    throw ParseError("filter variable ?" + v + " does not occur in any pattern");
        }
    }
};

const char* op_spelling(FilterExpr::Op op) {
    switch (op) {
        case FilterExpr::Op::Add: return "+";
        case FilterExpr::Op::Sub: return "-";
        case FilterExpr::Op::Mul: return "*";
        case FilterExpr::Op::Div: return "/";
        case FilterExpr::Op::Lt: return "<";
        case FilterExpr::Op::Le: return "<=";
        case FilterExpr::Op::Gt: return ">";
        case FilterExpr::Op::Ge: return ">=";
        case FilterExpr::Op::Eq: return "=";
        case FilterExpr::Op::Ne: return "!=";
        case FilterExpr::Op::And: return "&&";
        case FilterExpr::Op::Or: return "||";
        default: return "?";
    }
}

void print_expr(const FilterExpr& e, std::ostream& out) {
    switch (e.op) {
        case FilterExpr::Op::Number: out << format_double(e.number); return;
        case FilterExpr::Op::Var: out << '?' << e.var; return;
        default:
            out << '(';
            print_expr(*e.lhs, out);
            out << ' ' << op_spelling(e.op) << ' ';
            print_expr(*e.rhs, out);
            out << ')';
            return;
    }
}

void print_term(const Term& t, std::ostream& out) {
    switch (t.kind) {
        case Term::Kind::Variable: out << '?' << t.text; return;
        case Term::Kind::Name: out << "vocab:" << t.text; return;
        case Term::Kind::Literal:
            if (std::holds_alternative<std::string>(t.literal))
                out << '"' << std::get<std::string>(t.literal) << '"';
            else
                out << to_text(t.literal);
            return;
    }
}

} // namespace

bool FilterExpr::equals(const FilterExpr& other) const {
    if (op != other.op) return false;
    switch (op) {
        case Op::Number: return number == other.number;
        case Op::Var: return var == other.var;
        default: return lhs->equals(*other.lhs) && rhs->equals(*other.rhs);
    }
}

std::unique_ptr<FilterExpr> FilterExpr::clone() const {
    auto copy = std::make_unique<FilterExpr>();
    copy->op = op;
    copy->number = number;
    copy->var = var;
    if (lhs) copy->lhs = lhs->clone();
    if (rhs) copy->rhs = rhs->clone();
    return copy;
}

void FilterExpr::collect_vars(std::vector<std::string>& out) const {
    if (op == Op::Var) out.push_back(var);
    if (lhs) lhs->collect_vars(out);
    if (rhs) rhs->collect_vars(out);
}

bool QueryAst::equals(const QueryAst& other) const {
    if (projected_vars != other.projected_vars || distinct != other.distinct) return false;
    if (patterns.size() != other.patterns.size()) return false;
    for (std::size_t i = 0; i < patterns.size(); ++i)
        if (!(patterns[i] == other.patterns[i])) return false;
    if (static_cast<bool>(filter) != static_cast<bool>(other.filter)) return false;
    return !filter || filter->equals(*other.filter);
}

QueryAst parse_query(const std::string& text) { return Parser(text).parse(); }

std::string pretty_print(const QueryAst& ast) {
    std::ostringstream out;
    out << "SELECT";
    if (ast.distinct) out << " DISTINCT";
    for (const auto& v : ast.projected_vars) out << " ?" << v;
    out << " WHERE {\n";
    for (std::size_t i = 0; i < ast.patterns.size(); ++i) {
        const auto& p = ast.patterns[i];
        bool same_subject_as_prev = i > 0 && ast.patterns[i - 1].subject == p.subject;
        if (!same_subject_as_prev) {
            out << "  ";
            print_term(p.subject, out);
            out << ' ';
        } else {
            out << "    ";
        }
        if (p.predicate == "a") out << "a ";
        else out << "vocab:" << p.predicate << ' ';
        print_term(p.object, out);
        bool next_same_subject = i + 1 < ast.patterns.size() && ast.patterns[i + 1].subject == p.subject;
        out << (next_same_subject ? " ;\n" : " .\n");
    }
    if (ast.filter) {
        out << "  FILTER ( ";
        print_expr(*ast.filter, out);
        out << " )\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace ets::query
