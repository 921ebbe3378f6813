#include "mdt/notation.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>

#include "json.hpp"

namespace mdt {

namespace {

// ---------------------------------------------------------------------------
// Lexer shared by all text syntaxes.

enum class Tok {
    Ident,
    Int,
    LParen,
    RParen,
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Comma,
    Colon,
    Semi,
    Dot,
    Equals,
    DashDash,
    Underscore,
    EmptySet, // the ∅ glyph
    End,
};

struct Token {
    Tok kind = Tok::End;
    std::string text;
    SourceSpan span;
};

class Lexer {
public:
    explicit Lexer(std::string_view src) : src_(src) { advance(); }

    const Token& peek() const { return tok_; }

    Token take() {
        Token t = tok_;
        advance();
        return t;
    }

    Token expect(Tok kind, const char* what) {
        if (tok_.kind != kind)
            throw ParseError(ParseErrorKind::Syntax, tok_.span,
                             std::string("expected ") + what + ", got '" + describe(tok_) + "'");
        return take();
    }

    static std::string describe(const Token& t) { return t.kind == Tok::End ? "<end>" : t.text; }

private:
    void advance() {
        while (pos_ < src_.size()) {
            char c = src_[pos_];
            if (c == '\n') {
                ++line_;
                col_ = 1;
                ++pos_;
            } else if (c == ' ' || c == '\t' || c == '\r') {
                ++col_;
                ++pos_;
            } else if (c == '#') { // comment to end of line
                while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
            } else {
                break;
            }
        }
        tok_ = Token{Tok::End, "", {line_, col_, 0}};
        if (pos_ >= src_.size()) return;

        SourceSpan span{line_, col_, 1};
        char c = src_[pos_];
        auto single = [&](Tok k) {
            tok_ = Token{k, std::string(1, c), span};
            ++pos_;
            ++col_;
        };
        if (std::isalpha(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() &&
                   (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
                ++pos_;
            span.length = static_cast<int>(pos_ - start);
            col_ += span.length;
            tok_ = Token{Tok::Ident, std::string(src_.substr(start, pos_ - start)), span};
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
            span.length = static_cast<int>(pos_ - start);
            col_ += span.length;
            tok_ = Token{Tok::Int, std::string(src_.substr(start, pos_ - start)), span};
        } else if (c == '-') {
            if (pos_ + 1 < src_.size() && src_[pos_ + 1] == '-') {
                span.length = 2;
                tok_ = Token{Tok::DashDash, "--", span};
                pos_ += 2;
                col_ += 2;
            } else {
                throw ParseError(ParseErrorKind::Syntax, span, "stray '-', bond token is '--'");
            }
        } else if (src_.compare(pos_, 3, "\xE2\x88\x85") == 0) { // ∅
            span.length = 3;
            tok_ = Token{Tok::EmptySet, "\xE2\x88\x85", span};
            pos_ += 3;
            ++col_;
        } else {
            switch (c) {
            case '(': single(Tok::LParen); return;
            case ')': single(Tok::RParen); return;
            case '{': single(Tok::LBrace); return;
            case '}': single(Tok::RBrace); return;
            case '[': single(Tok::LBracket); return;
            case ']': single(Tok::RBracket); return;
            case ',': single(Tok::Comma); return;
            case ':': single(Tok::Colon); return;
            case ';': single(Tok::Semi); return;
            case '.': single(Tok::Dot); return;
            case '=': single(Tok::Equals); return;
            case '_': single(Tok::Underscore); return;
            default:
                throw ParseError(ParseErrorKind::Syntax, span,
                                 std::string("unexpected character '") + c + "'");
            }
        }
    }

    std::string_view src_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token tok_;
};

int parse_int(const Token& t) { return std::stoi(t.text); }

// ---------------------------------------------------------------------------
// Term syntax.

class TermParser {
public:
    explicit TermParser(std::string_view text) : lex_(text) {}

    Molecule parse() {
        Token head = lex_.expect(Tok::Ident, "element letter");
        ElementKind kind = element_kind(head);
        std::string root = add_element(kind);
        if (kind == ElementKind::Monad) {
            // top-level monad optionally saturates its one port: M(M)
            if (lex_.peek().kind == Tok::LParen) {
                lex_.take();
                slot(root, 0);
                lex_.expect(Tok::RParen, "')'");
            }
        } else {
            int slots = arity(kind);
            expect_lparen(head, slots);
            for (int i = 0; i < slots; ++i) {
                if (i) expect_comma(head, slots);
                slot(root, i);
            }
            expect_rparen(head, slots);
        }
        if (lex_.peek().kind != Tok::End)
            throw ParseError(ParseErrorKind::Syntax, lex_.peek().span,
                             "trailing input after term: '" + Lexer::describe(lex_.peek()) + "'");
        return m_;
    }

private:
    static ElementKind element_kind(const Token& t) {
        if (t.text == "M") return ElementKind::Monad;
        if (t.text == "D") return ElementKind::Dyad;
        if (t.text == "T") return ElementKind::Triad;
        throw ParseError(ParseErrorKind::Syntax, t.span, "expected M, D or T, got '" + t.text + "'");
    }

    std::string add_element(ElementKind k) {
        std::string id = "e" + std::to_string(++counter_);
        m_.elements.emplace(id, k);
        return id;
    }

    void expect_lparen(const Token& head, int slots) {
        if (lex_.peek().kind != Tok::LParen)
            throw ParseError(ParseErrorKind::ArityMismatch, lex_.peek().span,
                             head.text + " here takes " + std::to_string(slots) + " slot(s)");
        lex_.take();
    }
    void expect_comma(const Token& head, int slots) {
        if (lex_.peek().kind != Tok::Comma)
            throw ParseError(ParseErrorKind::ArityMismatch, lex_.peek().span,
                             head.text + " here takes " + std::to_string(slots) + " slot(s), got '" +
                                 Lexer::describe(lex_.peek()) + "'");
        lex_.take();
    }
    void expect_rparen(const Token& head, int slots) {
        if (lex_.peek().kind != Tok::RParen)
            throw ParseError(ParseErrorKind::ArityMismatch, lex_.peek().span,
                             head.text + " here takes " + std::to_string(slots) + " slot(s), got '" +
                                 Lexer::describe(lex_.peek()) + "'");
        lex_.take();
    }

    // Fill parent's port `port`; a nested element spends its port 0 on the bond.
    void slot(const std::string& parent, int port) {
        if (lex_.peek().kind == Tok::Underscore) {
            lex_.take();
            return;
        }
        Token head = lex_.expect(Tok::Ident, "slot (M, D, T or _)");
        ElementKind kind = element_kind(head);
        std::string child = add_element(kind);
        m_.bonds.insert(Bond::make(PortRef{parent, port}, PortRef{child, 0}));
        int slots = arity(kind) - 1;
        if (slots == 0) {
            if (lex_.peek().kind == Tok::LParen)
                throw ParseError(ParseErrorKind::ArityMismatch, lex_.peek().span,
                                 "nested M takes no slots");
            return;
        }
        expect_lparen(head, slots);
        for (int i = 0; i < slots; ++i) {
            if (i) expect_comma(head, slots);
            slot(child, i + 1);
        }
        expect_rparen(head, slots);
    }

    Lexer lex_;
    Molecule m_;
    int counter_ = 0;
};

// ---------------------------------------------------------------------------
// Decl syntax.

struct DeclElem {
    std::string id;
    ElementKind kind;
    SourceSpan span;
};
struct DeclPort {
    std::string id;
    int index;
    SourceSpan span;
};
struct DeclBond {
    DeclPort a, b;
};

ElementKind decl_kind(const Token& t) {
    if (t.text == "M") return ElementKind::Monad;
    if (t.text == "D") return ElementKind::Dyad;
    if (t.text == "T") return ElementKind::Triad;
    throw ParseError(ParseErrorKind::Syntax, t.span, "element kind must be M, D or T, got '" + t.text + "'");
}

} // namespace

Molecule parse_term(std::string_view text) { return TermParser(text).parse(); }

Molecule parse_decl(std::string_view text) {
    Lexer lex(text);
    std::vector<DeclElem> elems;
    std::vector<DeclBond> bonds;
    while (lex.peek().kind != Tok::End) {
        Token head = lex.expect(Tok::Ident, "element declaration or 'bond'");
        if (head.text == "bond") {
            auto port = [&]() -> DeclPort {
                Token id = lex.expect(Tok::Ident, "element id");
                lex.expect(Tok::Dot, "'.'");
                Token idx = lex.expect(Tok::Int, "port index");
                return {id.text, parse_int(idx), id.span};
            };
            DeclPort a = port();
            lex.expect(Tok::DashDash, "'--'");
            DeclPort b = port();
            lex.expect(Tok::Semi, "';'");
            bonds.push_back({a, b});
        } else {
            lex.expect(Tok::Colon, "':'");
            Token kind = lex.expect(Tok::Ident, "element kind");
            lex.expect(Tok::Semi, "';'");
            elems.push_back({head.text, decl_kind(kind), head.span});
        }
    }

    Molecule m;
    for (const auto& e : elems) {
        if (m.elements.contains(e.id))
            throw ParseError(ParseErrorKind::DuplicateId, e.span, "duplicate element id '" + e.id + "'");
        m.elements.emplace(e.id, e.kind);
    }
    std::map<PortRef, SourceSpan> used;
    for (const auto& b : bonds) {
        for (const auto& p : {b.a, b.b}) {
            auto it = m.elements.find(p.id);
            if (it == m.elements.end())
                throw ParseError(ParseErrorKind::UnknownId, p.span, "unknown element '" + p.id + "'");
            if (p.index < 0 || p.index >= arity(it->second))
                throw ParseError(ParseErrorKind::ArityMismatch, p.span,
                                 "port " + p.id + "." + std::to_string(p.index) + " exceeds arity of " +
                                     kind_letter(it->second));
        }
        if (b.a.id == b.b.id)
            throw ParseError(ParseErrorKind::Syntax, b.a.span,
                             "bond joins element '" + b.a.id + "' to itself");
        for (const auto& p : {b.a, b.b}) {
            PortRef ref{p.id, p.index};
            if (used.contains(ref))
                throw ParseError(ParseErrorKind::PortReuse, p.span,
                                 "port " + p.id + "." + std::to_string(p.index) + " already saturated");
            used.emplace(ref, p.span);
        }
        m.bonds.insert(Bond::make(PortRef{b.a.id, b.a.index}, PortRef{b.b.id, b.b.index}));
    }
    return m;
}

namespace {

int canon_index(const std::string& id) { return std::stoi(id.substr(1)); }

} // namespace

std::string print_canonical(const Molecule& m) {
    Molecule c = canonical_relabel(m);
    std::vector<std::pair<int, std::string>> elems;
    for (const auto& [id, kind] : c.elements)
        elems.emplace_back(canon_index(id), id + ":" + kind_letter(kind) + ";");
    std::sort(elems.begin(), elems.end());

    std::vector<std::tuple<int, int, int, int, std::string>> bonds;
    for (const auto& b : c.bonds) {
        int i = canon_index(b.lo.element), j = canon_index(b.hi.element);
        PortRef lo = b.lo, hi = b.hi;
        if (std::tie(j, hi.index) < std::tie(i, lo.index)) {
            std::swap(i, j);
            std::swap(lo, hi);
        }
        bonds.emplace_back(i, lo.index, j, hi.index,
                           "bond " + lo.element + "." + std::to_string(lo.index) + "--" + hi.element +
                               "." + std::to_string(hi.index) + ";");
    }
    std::sort(bonds.begin(), bonds.end());

    std::ostringstream os;
    for (const auto& [i, line] : elems) os << line << '\n';
    for (const auto& b : bonds) os << std::get<4>(b) << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------
// JSON persistence.

std::string to_json(const Molecule& m) {
    nlohmann::ordered_json j;
    j["elements"] = nlohmann::ordered_json::array();
    for (const auto& [id, kind] : m.elements)
        j["elements"].push_back({{"id", id}, {"kind", std::string(1, kind_letter(kind))}});
    j["bonds"] = nlohmann::ordered_json::array();
    for (const auto& b : m.bonds) {
        nlohmann::ordered_json lo = nlohmann::ordered_json::array({b.lo.element, b.lo.index});
        nlohmann::ordered_json hi = nlohmann::ordered_json::array({b.hi.element, b.hi.index});
        j["bonds"].push_back(nlohmann::ordered_json::array({std::move(lo), std::move(hi)}));
    }
    if (!m.groups.empty()) {
        j["groups"] = nlohmann::ordered_json::array();
        for (const auto& g : m.groups) {
            nlohmann::ordered_json members = nlohmann::ordered_json::array();
            for (const auto& id : g.members) members.push_back(id);
            j["groups"].push_back({{"members", members}});
        }
    }
    return j.dump();
}

Molecule from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(ErrorKind::SchemaError, std::string("bad JSON: ") + e.what());
    }
    Molecule m;
    try {
        if (!j.is_object() || !j.contains("elements") || !j.contains("bonds"))
            throw DomainError(ErrorKind::SchemaError, "molecule JSON needs 'elements' and 'bonds'");
        for (const auto& e : j.at("elements")) {
            std::string id = e.at("id").get<std::string>();
            std::string kind = e.at("kind").get<std::string>();
            if (kind.size() != 1) throw DomainError(ErrorKind::SchemaError, "bad kind '" + kind + "'");
            if (m.elements.contains(id))
                throw DomainError(ErrorKind::SchemaError, "duplicate element id '" + id + "'");
            m.elements.emplace(std::move(id), kind_from_letter(kind[0]));
        }
        for (const auto& b : j.at("bonds")) {
            if (!b.is_array() || b.size() != 2)
                throw DomainError(ErrorKind::SchemaError, "bond must be a pair of ports");
            auto port = [](const nlohmann::json& p) {
                if (!p.is_array() || p.size() != 2)
                    throw DomainError(ErrorKind::SchemaError, "port must be [id, index]");
                return PortRef{p.at(0).get<std::string>(), p.at(1).get<int>()};
            };
            m.bonds.insert(Bond::make(port(b.at(0)), port(b.at(1))));
        }
        if (j.contains("groups")) {
            for (const auto& g : j.at("groups")) {
                GroupBoundary gb;
                for (const auto& id : g.at("members")) gb.members.insert(id.get<std::string>());
                m.groups.push_back(std::move(gb));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw DomainError(ErrorKind::SchemaError, std::string("bad molecule JSON: ") + e.what());
    }
    auto violations = validate(m);
    if (!violations.empty()) throw ValidationError(std::move(violations));
    // exported sets are derived data: recompute from current free ports
    if (!m.groups.empty())
        for (auto& g : m.groups)
            for (const auto& p : free_ends(m))
                if (g.members.contains(p.element)) g.exported.insert(p);
    return m;
}

// ---------------------------------------------------------------------------
// DOT export.

std::string to_dot(const Molecule& m) {
    std::ostringstream os;
    os << "graph mdt {\n";
    std::set<std::string> grouped;
    for (const auto& g : m.groups)
        for (const auto& id : g.members) grouped.insert(id);

    auto node_line = [&](const std::string& id, ElementKind kind, const char* indent) {
        const char* shape = kind == ElementKind::Monad  ? "circle"
                            : kind == ElementKind::Dyad ? "square"
                                                        : "triangle";
        os << indent << '"' << id << "\" [shape=" << shape << ",label=\"" << id << "\"];\n";
    };

    for (const auto& [id, kind] : m.elements)
        if (!grouped.contains(id)) node_line(id, kind, "  ");

    std::set<std::string> declared = grouped;
    size_t cluster = 0;
    std::set<std::string> emitted;
    for (const auto& g : m.groups) {
        os << "  subgraph cluster_" << cluster++ << " {\n    style=dashed;\n";
        for (const auto& id : g.members) {
            if (emitted.contains(id))
                os << "    \"" << id << "\";\n";
            else
                node_line(id, m.elements.at(id), "    ");
            emitted.insert(id);
        }
        os << "  }\n";
    }

    for (const auto& b : m.bonds)
        os << "  \"" << b.lo.element << "\" -- \"" << b.hi.element << "\" [label=\"◇\"];\n";

    for (const auto& p : free_ends(m)) {
        std::string fid = "f_" + p.element + "_" + std::to_string(p.index);
        os << "  \"" << fid << "\" [shape=circle,label=\"\",width=0.1];\n";
        os << "  \"" << p.element << "\" -- \"" << fid << "\" [style=dotted];\n";
    }
    os << "}\n";
    return os.str();
}

// ---------------------------------------------------------------------------
// Relation-term DSL.

namespace {

class RelationParser {
public:
    explicit RelationParser(std::string_view text) : lex_(text) {}

    TermPtr parse() {
        TermPtr t = term();
        if (lex_.peek().kind != Tok::End)
            throw ParseError(ParseErrorKind::Syntax, lex_.peek().span, "trailing input after term");
        return t;
    }

private:
    TermPtr term() {
        Token head = lex_.expect(Tok::Ident, "Q, D or T");
        if (head.text == "Q") {
            lex_.expect(Tok::LParen, "'('");
            Token label = lex_.expect(Tok::Ident, "quality label");
            lex_.expect(Tok::RParen, "')'");
            return RelationTerm::quality(label.text);
        }
        if (head.text == "D") {
            DyadAttrs attrs = lex_.peek().kind == Tok::LBracket ? parse_attrs() : DyadAttrs{};
            lex_.expect(Tok::LParen, "'('");
            TermPtr s1 = term();
            lex_.expect(Tok::Comma, "','");
            TermPtr s2 = term();
            lex_.expect(Tok::RParen, "')'");
            try {
                return RelationTerm::dyad(attrs, std::move(s1), std::move(s2));
            } catch (const DomainError& e) {
                throw ParseError(ParseErrorKind::Syntax, head.span, e.what());
            }
        }
        if (head.text == "T") {
            lex_.expect(Tok::LParen, "'('");
            TermPtr s1 = term();
            lex_.expect(Tok::Comma, "','");
            TermPtr s2 = term();
            lex_.expect(Tok::Comma, "','");
            TermPtr s3 = term();
            lex_.expect(Tok::RParen, "')'");
            return RelationTerm::triad(std::move(s1), std::move(s2), std::move(s3));
        }
        throw ParseError(ParseErrorKind::Syntax, head.span, "expected Q, D or T, got '" + head.text + "'");
    }

    DyadAttrs parse_attrs() {
        DyadAttrs attrs;
        lex_.expect(Tok::LBracket, "'['");
        while (true) {
            Token key = lex_.expect(Tok::Ident, "attribute");
            if (key.text == "identical") {
                attrs.subjects_identical = true;
            } else if (key.text == "dynamical") {
                attrs.dynamical = true;
            } else if (key.text == "order") {
                lex_.expect(Tok::Equals, "'='");
                Token v = lex_.expect(Tok::Ident, "material or formal");
                if (v.text == "material")
                    attrs.order = OrderKind::Material;
                else if (v.text == "formal")
                    attrs.order = OrderKind::Formal;
                else
                    throw ParseError(ParseErrorKind::Syntax, v.span,
                                     "order must be material or formal, got '" + v.text + "'");
            } else if (key.text == "action") {
                lex_.expect(Tok::Equals, "'='");
                attrs.action = lex_.expect(Tok::Ident, "action label").text;
            } else {
                throw ParseError(ParseErrorKind::Syntax, key.span, "unknown attribute '" + key.text + "'");
            }
            if (lex_.peek().kind == Tok::Comma) {
                lex_.take();
                continue;
            }
            break;
        }
        lex_.expect(Tok::RBracket, "']'");
        return attrs;
    }

    Lexer lex_;
};

} // namespace

TermPtr parse_relation(std::string_view text) { return RelationParser(text).parse(); }

// ---------------------------------------------------------------------------
// Graph files.

SimpleGraph parse_graph(std::string_view text) {
    Lexer lex(text);
    struct Edge {
        Token a, b;
    };
    std::vector<Token> nodes;
    std::vector<Edge> edges;
    while (lex.peek().kind != Tok::End) {
        Token head = lex.expect(Tok::Ident, "'node' or 'edge'");
        if (head.text == "node") {
            nodes.push_back(lex.expect(Tok::Ident, "vertex name"));
            lex.expect(Tok::Semi, "';'");
        } else if (head.text == "edge") {
            Token a = lex.expect(Tok::Ident, "vertex name");
            lex.expect(Tok::DashDash, "'--'");
            Token b = lex.expect(Tok::Ident, "vertex name");
            lex.expect(Tok::Semi, "';'");
            edges.push_back({a, b});
        } else {
            throw ParseError(ParseErrorKind::Syntax, head.span,
                             "expected 'node' or 'edge', got '" + head.text + "'");
        }
    }
    SimpleGraph g;
    for (const auto& n : nodes) g.add_vertex(n.text);
    for (const auto& e : edges) {
        if (!g.vertices.contains(e.a.text))
            throw ParseError(ParseErrorKind::UnknownId, e.a.span, "unknown vertex '" + e.a.text + "'");
        if (!g.vertices.contains(e.b.text))
            throw ParseError(ParseErrorKind::UnknownId, e.b.span, "unknown vertex '" + e.b.text + "'");
        if (e.a.text == e.b.text)
            throw ParseError(ParseErrorKind::Syntax, e.a.span, "edge endpoints must be distinct");
        g.add_edge(e.a.text, e.b.text);
    }
    return g;
}

// ---------------------------------------------------------------------------
// Set expressions.

namespace {
SetExpr parse_set_expr(Lexer& lex) {
    const Token& t = lex.peek();
    if (t.kind == Tok::EmptySet) {
        lex.take();
        return SetExpr::empty();
    }
    if (t.kind == Tok::Ident) return SetExpr::atom(lex.take().text);
    if (t.kind == Tok::LBrace) {
        lex.take();
        std::vector<SetExpr> members;
        if (lex.peek().kind != Tok::RBrace) {
            members.push_back(parse_set_expr(lex));
            while (lex.peek().kind == Tok::Comma) {
                lex.take();
                members.push_back(parse_set_expr(lex));
            }
        }
        lex.expect(Tok::RBrace, "'}'");
        return SetExpr::set(std::move(members));
    }
    throw ParseError(ParseErrorKind::Syntax, t.span,
                     "expected set expression, got '" + Lexer::describe(t) + "'");
}
} // namespace

SetExpr parse_set(std::string_view text) {
    Lexer lex(text);
    SetExpr e = parse_set_expr(lex);
    if (lex.peek().kind != Tok::End)
        throw ParseError(ParseErrorKind::Syntax, lex.peek().span, "trailing input after set expression");
    return e;
}

} // namespace mdt
