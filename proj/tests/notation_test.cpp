#include "doctest.h"

#include <random>

#include "mdt/enumerate.hpp"
#include "mdt/notation.hpp"
#include "mdt/rewrite.hpp"

using namespace mdt;

namespace {

// A span must point inside the source text (1-based line/column).
void check_span_in_bounds(const ParseError& e, std::string_view src) {
    int lines = 1;
    for (char c : src)
        if (c == '\n') ++lines;
    CHECK(e.span().line >= 1);
    CHECK(e.span().line <= lines);
    CHECK(e.span().column >= 1);
    CHECK(e.span().column <= static_cast<int>(src.size()) + 1);
}

ParseErrorKind decl_error(std::string_view src) {
    try {
        parse_decl(src);
    } catch (const ParseError& e) {
        check_span_in_bounds(e, src);
        return e.kind();
    }
    FAIL("expected ParseError");
    return ParseErrorKind::Syntax;
}

ParseErrorKind term_error(std::string_view src) {
    try {
        parse_term(src);
    } catch (const ParseError& e) {
        check_span_in_bounds(e, src);
        return e.kind();
    }
    FAIL("expected ParseError");
    return ParseErrorKind::Syntax;
}

} // namespace

TEST_CASE("term syntax builds the expected trees") {
    Molecule mm = parse_term("M(M)");
    CHECK(mm.elements.size() == 2);
    CHECK(mm.bonds.size() == 1);
    CHECK(is_medad(mm));

    Molecule lone = parse_term("M");
    CHECK(lone.elements.size() == 1);
    CHECK(lone.bonds.empty());
    CHECK(free_ends(lone).size() == 1);

    Molecule dmm = parse_term("D(M,M)");
    CHECK(dmm.count(ElementKind::Monad) == 2);
    CHECK(dmm.count(ElementKind::Dyad) == 1);
    CHECK(is_medad(dmm));

    Molecule arm = parse_term("T(M,M,_)");
    CHECK(free_ends(arm).size() == 1);

    // nested elements spend one port on the parent bond, so a nested T takes 2 slots
    Molecule nested = parse_term("T(M,D(M),T(M,_))");
    CHECK(validate(nested).empty());
    CHECK(nested.count(ElementKind::Triad) == 2);
    CHECK(nested.count(ElementKind::Dyad) == 1);
    CHECK(nested.count(ElementKind::Monad) == 3);
    CHECK(free_ends(nested).size() == 1);
}

TEST_CASE("term and decl syntax agree on tree molecules") {
    CHECK(isomorphic(parse_term("D(M,M)"),
                     parse_decl("a:M; b:M; d:D; bond d.0--a.0; bond d.1--b.0;")));
    CHECK(isomorphic(parse_term("M(M)"), parse_decl("a:M; b:M; bond a.0--b.0;")));
    CHECK(isomorphic(parse_term("T(M,M,M)"),
                     parse_decl("t:T; a:M; b:M; c:M;"
                                "bond t.0--a.0; bond t.1--b.0; bond t.2--c.0;")));
}

TEST_CASE("term parse errors carry kinds and in-bounds spans") {
    CHECK(term_error("D(M)") == ParseErrorKind::ArityMismatch);
    CHECK(term_error("T(M,M)") == ParseErrorKind::ArityMismatch);
    CHECK(term_error("D(M,M,M)") == ParseErrorKind::ArityMismatch);
    CHECK(term_error("D(M(M),M)") == ParseErrorKind::ArityMismatch); // nested M takes no slots
    CHECK(term_error("M(M,M)") == ParseErrorKind::Syntax);
    CHECK(term_error("X(M,M)") == ParseErrorKind::Syntax);
    CHECK(term_error("D(M,M) M") == ParseErrorKind::Syntax);
    CHECK(term_error("") == ParseErrorKind::Syntax);
    CHECK(term_error("D(M,") == ParseErrorKind::Syntax);
}

TEST_CASE("decl parse errors carry kinds and in-bounds spans") {
    CHECK(decl_error("a:M; a:D;") == ParseErrorKind::DuplicateId);
    CHECK(decl_error("a:M; bond a.0--b.0;") == ParseErrorKind::UnknownId);
    CHECK(decl_error("a:M; b:M; bond a.1--b.0;") == ParseErrorKind::ArityMismatch);
    CHECK(decl_error("a:M; b:M; c:M; bond a.0--b.0; bond a.0--c.0;") == ParseErrorKind::PortReuse);
    CHECK(decl_error("d:D; bond d.0--d.1;") == ParseErrorKind::Syntax); // self-bond
    CHECK(decl_error("a:Q;") == ParseErrorKind::Syntax);
    CHECK(decl_error("a:M") == ParseErrorKind::Syntax);
    CHECK(decl_error("bond ;") == ParseErrorKind::Syntax);
    CHECK(decl_error("a:M;\nb:M;\nbond a.0 -- b.9;") == ParseErrorKind::ArityMismatch);
}

TEST_CASE("decl syntax accepts comments and cycles") {
    Molecule cyc = parse_decl("# a two-dyad cycle\n"
                              "d1:D; d2:D;\n"
                              "bond d1.0--d2.0; # first strand\n"
                              "bond d1.1--d2.1;\n");
    CHECK(cyc.elements.size() == 2);
    CHECK(cyc.bonds.size() == 2);
    CHECK(is_medad(cyc));
}

TEST_CASE("print_canonical emits sorted statements with canonical ids") {
    Molecule mm = parse_decl("zz:M; aa:M; bond zz.0--aa.0;");
    CHECK(print_canonical(mm) == "e1:M;\ne2:M;\nbond e1.0--e2.0;\n");

    Molecule lone = make_element(ElementKind::Triad);
    CHECK(print_canonical(lone) == "e1:T;\n");
}

TEST_CASE("print_canonical is invariant under relabeling and idempotent") {
    const char* variants[] = {
        "a:M; b:M; d:D; bond d.0--a.0; bond d.1--b.0;",
        "x9:M; d:D; q:M; bond d.1--x9.0; bond q.0--d.0;",
        "m2:M; m1:M; dd:D; bond dd.0--m2.0; bond dd.1--m1.0;",
    };
    std::string first = print_canonical(parse_decl(variants[0]));
    for (const char* v : variants) CHECK(print_canonical(parse_decl(v)) == first);
    // parse-print round trip is a fixed point
    CHECK(print_canonical(parse_decl(first)) == first);
}

TEST_CASE("print_canonical and parse_decl round-trip enumerated molecules") {
    for (const auto& mol : enumerate_molecules({3, 2, 1, false, false})) {
        std::string text = print_canonical(mol);
        Molecule back = parse_decl(text);
        CHECK(isomorphic(back, mol));
        CHECK(print_canonical(back) == text);
    }
}

TEST_CASE("JSON round trip preserves structure exactly") {
    Molecule m = parse_decl("t:T; a:M; d:D; bond t.0--a.0; bond t.1--d.0;");
    Molecule back = from_json(to_json(m));
    CHECK(back == m);

    Molecule empty;
    CHECK(from_json(to_json(empty)) == empty);
}

TEST_CASE("JSON round trip preserves group boundaries") {
    Molecule arm = parse_term("T(M,M,_)");
    std::set<std::string> all;
    for (const auto& [id, k] : arm.elements) all.insert(id);
    Molecule grouped = make_group(arm, all);
    Molecule back = from_json(to_json(grouped));
    REQUIRE(back.groups.size() == 1);
    CHECK(back == grouped);
    CHECK(back.groups[0].exported == grouped.groups[0].exported);
}

TEST_CASE("from_json rejects malformed documents with SchemaError") {
    for (const char* bad : {
             "not json",
             "[]",
             "{}",
             R"({"elements":[]})",
             R"({"elements":[{"id":"a","kind":"Z"}],"bonds":[]})",
             R"({"elements":[{"id":"a","kind":"M"},{"id":"a","kind":"M"}],"bonds":[]})",
             R"({"elements":[{"id":"a","kind":"M"}],"bonds":[["a",0]]})",
             R"({"elements":[{"id":"a","kind":"M"}],"bonds":[[["a"],["a",0]]]})",
         }) {
        try {
            from_json(bad);
            FAIL("expected SchemaError for: ", bad);
        } catch (const DomainError& e) {
            CHECK(e.kind() == ErrorKind::SchemaError);
        }
    }
}

TEST_CASE("from_json surfaces structural violations as ValidationError") {
    // bond to port index 2 of a dyad
    const char* bad_arity =
        R"({"elements":[{"id":"a","kind":"M"},{"id":"d","kind":"D"}],"bonds":[[["a",0],["d",2]]]})";
    try {
        from_json(bad_arity);
        FAIL("expected ValidationError");
    } catch (const ValidationError& e) {
        REQUIRE(!e.violations().empty());
        CHECK(e.violations()[0].kind == ViolationKind::BadArity);
    }

    // same port used twice
    const char* oversaturated =
        R"({"elements":[{"id":"a","kind":"M"},{"id":"b","kind":"M"},{"id":"c","kind":"M"}],)"
        R"("bonds":[[["a",0],["b",0]],[["a",0],["c",0]]]})";
    CHECK_THROWS_AS(from_json(oversaturated), ValidationError);

    // bond references an undeclared element
    const char* dangling =
        R"({"elements":[{"id":"a","kind":"M"}],"bonds":[[["a",0],["ghost",0]]]})";
    CHECK_THROWS_AS(from_json(dangling), ValidationError);
}

TEST_CASE("JSON round trips all small enumerated molecules") {
    for (const auto& mol : enumerate_molecules({2, 2, 2, false, false})) {
        Molecule back = from_json(to_json(mol));
        CHECK(back == mol);
    }
}

TEST_CASE("DOT export is deterministic and shape-coded") {
    Molecule m = parse_decl("m:M; d:D; t:T; bond m.0--d.0; bond d.1--t.0;");
    std::string dot = to_dot(m);
    CHECK(dot == to_dot(m));
    CHECK(dot.find("graph mdt {") == 0);
    CHECK(dot.find("shape=circle") != std::string::npos);
    CHECK(dot.find("shape=square") != std::string::npos);
    CHECK(dot.find("shape=triangle") != std::string::npos);
    CHECK(dot.find("◇") != std::string::npos);
    // two free triad ports show as dotted stubs
    CHECK(dot.find("style=dotted") != std::string::npos);
    CHECK(dot.find("\"f_t_1\"") != std::string::npos);
    CHECK(dot.find("\"f_t_2\"") != std::string::npos);
}

TEST_CASE("DOT export draws group boundaries as dashed clusters") {
    Molecule arm = parse_term("T(M,M,_)");
    std::set<std::string> all;
    for (const auto& [id, k] : arm.elements) all.insert(id);
    std::string dot = to_dot(make_group(arm, all));
    CHECK(dot.find("subgraph cluster_0") != std::string::npos);
    CHECK(dot.find("style=dashed") != std::string::npos);
}

TEST_CASE("relation DSL parses qualities, attributed dyads and triads") {
    TermPtr q = parse_relation("Q(red)");
    CHECK(classify_dyad(*parse_relation("D(Q(scarlet),Q(red))")) == DyadClass::Essential);
    CHECK(classify_dyad(*parse_relation("D(Q(red),D(Q(a),Q(b)))")) == DyadClass::Inherential);
    CHECK(classify_dyad(*parse_relation(
              "D[identical](D(Q(a),Q(b)),D(Q(a),Q(b)))")) == DyadClass::RelationalIdentity);
    CHECK(classify_dyad(*parse_relation(
              "D[dynamical,order=formal,action=pushes](D(Q(a),Q(b)),D(Q(c),Q(d)))")) ==
          DyadClass::RelationalDiversityDynamicalFormalOrder);
    CHECK(classify_triad(*parse_relation("T(Q(a),Q(b),Q(c))")) == TriadClass::DegenerateMonadic);
    (void)q;

    CHECK_THROWS_AS(parse_relation("D[order=sideways](Q(a),Q(b))"), ParseError);
    CHECK_THROWS_AS(parse_relation("D[bogus](Q(a),Q(b))"), ParseError);
    CHECK_THROWS_AS(parse_relation("Q(red) Q(blue)"), ParseError);
    // attr invariant failures surface as parse errors with a span
    CHECK_THROWS_AS(parse_relation("D[identical,dynamical](Q(a),Q(b))"), ParseError);
}

TEST_CASE("graph files parse nodes and edges") {
    SimpleGraph g = parse_graph("node a; node b; node c;\nedge a--b;\nedge b--c;");
    CHECK(g.vertices.size() == 3);
    CHECK(g.edges.size() == 2);

    CHECK_THROWS_AS(parse_graph("edge a--b;"), ParseError);
    CHECK_THROWS_AS(parse_graph("node a; edge a--a;"), ParseError);
    CHECK_THROWS_AS(parse_graph("vertex a;"), ParseError);
}

TEST_CASE("set expressions parse the empty-set glyph and braces") {
    CHECK(print_set(parse_set("∅")) == "∅");
    CHECK(print_set(parse_set("{}")) == "∅");
    CHECK(set_equal(parse_set("{∅,{∅}}"), parse_set("{{∅},∅,∅}")));
    CHECK(parse_set("x").is_atom());
    CHECK_THROWS_AS(parse_set("{a,"), ParseError);
    CHECK_THROWS_AS(parse_set("{a} b"), ParseError);
}
