#include "doctest.h"

#include "mdt/notation.hpp"
#include "mdt/rewrite.hpp"

using namespace mdt;

namespace {

// Independent contraction oracle: repeatedly fuse any single adjacent dyad
// pair until none remain, counting fusions per surviving run.
Molecule fuse_once(const Molecule& m, bool& changed) {
    changed = false;
    for (const auto& bond : m.bonds) {
        if (m.elements.at(bond.lo.element) != ElementKind::Dyad ||
            m.elements.at(bond.hi.element) != ElementKind::Dyad)
            continue;
        const std::string keep = bond.lo.element;
        const std::string drop = bond.hi.element;
        // the dropped dyad's other port
        int other_index = -1;
        std::optional<PortRef> other_partner;
        for (int i = 0; i < 2; ++i) {
            PortRef p{drop, i};
            if (p == bond.hi) continue;
            other_index = i;
            for (const auto& b2 : m.bonds) {
                if (b2.lo == p) other_partner = b2.hi;
                if (b2.hi == p) other_partner = b2.lo;
            }
        }
        (void)other_index;
        if (other_partner && other_partner->element == keep) continue; // 2-cycle, not a chain
        Molecule out = m;
        out.elements.erase(drop);
        for (auto it = out.bonds.begin(); it != out.bonds.end();)
            if (it->lo.element == drop || it->hi.element == drop)
                it = out.bonds.erase(it);
            else
                ++it;
        if (other_partner) out.bonds.insert(Bond::make(bond.lo, *other_partner));
        changed = true;
        return out;
    }
    return m;
}

int fusion_count(Molecule m) {
    int fused = 0;
    bool changed = true;
    while (changed) {
        m = fuse_once(m, changed);
        if (changed) ++fused;
    }
    return fused;
}

} // namespace

TEST_CASE("insert_triad opens a medad by one free end") {
    Molecule mm = parse_decl("m1:M; m2:M; bond m1.0--m2.0;");
    Molecule opened = insert_triad(mm, *mm.bonds.begin());
    CHECK(free_ends(opened).size() == 1);
    CHECK(opened.count(ElementKind::Triad) == 1);
    CHECK(isomorphic(opened, parse_decl("m1:M; m2:M; t:T; bond m1.0--t.0; bond m2.0--t.1;")));

    Molecule dmm = parse_term("D(M,M)");
    Molecule arm = insert_triad(dmm, *dmm.bonds.begin());
    CHECK(free_ends(arm).size() == 1);
    CHECK(validate(arm).empty());

    CHECK_THROWS_AS(insert_triad(dmm, Bond::make({"e1", 1}, {"e2", 0})), DomainError);
}

TEST_CASE("insert_triad splice is reversible") {
    Molecule dmm = parse_term("D(M,M)");
    Bond original = *dmm.bonds.begin();
    Molecule opened = insert_triad(dmm, original);
    // the fresh triad is the only one
    std::string tid;
    for (const auto& [id, k] : opened.elements)
        if (k == ElementKind::Triad) tid = id;
    Molecule undone = erase_bond(erase_bond(opened, Bond::make(original.lo, {tid, 0})),
                                 Bond::make(original.hi, {tid, 1}));
    undone.elements.erase(tid);
    CHECK(form_bond(undone, original.lo, original.hi) == dmm);
}

TEST_CASE("triad_join of three arms is a medad with summed counts") {
    Molecule arm = parse_term("T(M,M,_)");
    Molecule joined = triad_join(arm, arm, arm);
    CHECK(is_medad(joined));
    CHECK(joined.count(ElementKind::Monad) == 6);
    CHECK(joined.count(ElementKind::Triad) == 4);
    CHECK(joined.bonds.size() == 9);

    CHECK_THROWS_AS(triad_join(arm, arm, parse_term("D(M,M)")), DomainError);
    try {
        triad_join(parse_term("D(M,M)"), arm, arm);
        FAIL("expected WrongAdicity");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::WrongAdicity);
    }
}

TEST_CASE("make_group exports exactly the members' free ports") {
    Molecule arm = parse_term("T(M,M,_)");
    std::set<std::string> all;
    for (const auto& [id, k] : arm.elements) all.insert(id);
    Molecule grouped = make_group(arm, all);
    REQUIRE(grouped.groups.size() == 1);
    CHECK(grouped.groups[0].exported.size() == 1); // functions as a monad

    Molecule medad = parse_term("D(M,M)");
    std::set<std::string> medad_all;
    for (const auto& [id, k] : medad.elements) medad_all.insert(id);
    CHECK(make_group(medad, medad_all).groups[0].exported.empty());

    CHECK_THROWS_AS(make_group(medad, {"e1"}), DomainError); // boundary crossed
    CHECK_THROWS_AS(make_group(medad, {"nope"}), DomainError);
    try {
        make_group(medad, {"e2"});
        FAIL("expected BoundaryCrossed");
    } catch (const DomainError& e) {
        CHECK(e.kind() == ErrorKind::BoundaryCrossed);
    }
}

TEST_CASE("normalize_lines contracts dyad chains to one dyad") {
    Molecule mddm = parse_decl("m1:M; m2:M; d1:D; d2:D; bond m1.0--d1.0; bond d1.1--d2.0; bond d2.1--m2.0;");
    auto cf = normalize_lines(mddm);
    CHECK(isomorphic(cf.skeleton, parse_term("D(M,M)")));
    REQUIRE(cf.chain_losses.size() == 1);
    CHECK(cf.chain_losses[0].original_count == 2);
    CHECK(fusion_count(mddm) == 1); // oracle: one fusion takes 2 dyads to 1

    Molecule mdm = parse_term("D(M,M)");
    auto cf2 = normalize_lines(mdm);
    CHECK(cf2.skeleton == mdm);
    CHECK(cf2.chain_losses.empty());

    Molecule mdddm = parse_decl(
        "m1:M; m2:M; d1:D; d2:D; d3:D;"
        "bond m1.0--d1.0; bond d1.1--d2.0; bond d2.1--d3.0; bond d3.1--m2.0;");
    auto cf3 = normalize_lines(mdddm);
    CHECK(isomorphic(cf3.skeleton, parse_term("D(M,M)")));
    REQUIRE(cf3.chain_losses.size() == 1);
    CHECK(cf3.chain_losses[0].original_count == 3);
    CHECK(fusion_count(mdddm) == 2); // 3 dyads need two single fusions
}

TEST_CASE("normalize_lines handles free-ended and cyclic chains") {
    Molecule open_chain = parse_decl("d1:D; d2:D; bond d1.1--d2.0;");
    auto cf = normalize_lines(open_chain);
    CHECK(cf.skeleton.elements.size() == 1);
    CHECK(free_ends(cf.skeleton).size() == 2);
    REQUIRE(cf.chain_losses.size() == 1);
    CHECK(cf.chain_losses[0].original_count == 2);

    // pure-dyad 3-cycle contracts to the 2-cycle
    Molecule cyc3 = parse_decl(
        "d1:D; d2:D; d3:D; bond d1.1--d2.0; bond d2.1--d3.0; bond d3.1--d1.0;");
    auto cfc = normalize_lines(cyc3);
    Molecule cyc2 = parse_decl("d1:D; d2:D; bond d1.0--d2.0; bond d1.1--d2.1;");
    CHECK(isomorphic(cfc.skeleton, cyc2));
    REQUIRE(cfc.chain_losses.size() == 1);
    CHECK(cfc.chain_losses[0].original_count == 3);

    // the 2-cycle itself is canonical
    auto cfc2 = normalize_lines(cyc2);
    CHECK(cfc2.skeleton == cyc2);
    CHECK(cfc2.chain_losses.empty());
}

TEST_CASE("normalize_lines leaves triad-terminated single dyads alone") {
    Molecule tdt = parse_decl("t:T; d:D; bond t.0--d.0; bond t.1--d.1;");
    auto cf = normalize_lines(tdt);
    CHECK(cf.skeleton == tdt);
    CHECK(cf.chain_losses.empty());
}

TEST_CASE("normalize_lines is idempotent") {
    for (const char* text : {
             "m1:M; m2:M; d1:D; d2:D; d3:D; bond m1.0--d1.0; bond d1.1--d2.0; bond d2.1--d3.0; bond d3.1--m2.0;",
             "t:T; d1:D; d2:D; m:M; bond t.0--d1.0; bond d1.1--d2.0; bond d2.1--m.0;",
             "d1:D; d2:D; d3:D; d4:D; bond d1.1--d2.0; bond d2.1--d3.0; bond d3.1--d4.0; bond d4.1--d1.0;",
         }) {
        auto once = normalize_lines(parse_decl(text));
        auto twice = normalize_lines(once.skeleton);
        CHECK(twice.skeleton == once.skeleton);
        CHECK(twice.chain_losses.empty());
    }
}

TEST_CASE("line_equivalent is coarser than isomorphic") {
    Molecule mdddm = parse_decl(
        "m1:M; m2:M; d1:D; d2:D; d3:D;"
        "bond m1.0--d1.0; bond d1.1--d2.0; bond d2.1--d3.0; bond d3.1--m2.0;");
    Molecule mdm = parse_term("D(M,M)");
    Molecule mm = parse_decl("m1:M; m2:M; bond m1.0--m2.0;");
    CHECK(line_equivalent(mdddm, mdm));
    CHECK_FALSE(line_equivalent(mdm, mm)); // a bare monad-monad bond stays its own case
    CHECK(line_equivalent(mm, mm));
    CHECK_FALSE(isomorphic(mdddm, mdm));
}

TEST_CASE("reduce_polyad chains k-2 triads into a medad") {
    Molecule m = make_element(ElementKind::Monad);
    Molecule four = reduce_polyad(4, {m, m, m, m});
    CHECK(is_medad(four));
    CHECK(four.count(ElementKind::Triad) == 2);
    CHECK(four.bonds.size() == 5);

    Molecule five = reduce_polyad(5, {m, m, m, m, m});
    CHECK(is_medad(five));
    CHECK(five.count(ElementKind::Triad) == 3);
    CHECK(five.bonds.size() == 7);

    CHECK_THROWS_AS(reduce_polyad(3, {m, m, m}), DomainError);
    CHECK_THROWS_AS(reduce_polyad(4, {m, m, m, make_element(ElementKind::Dyad)}), DomainError);
}
