#include "mdt/taxonomy.hpp"

#include <algorithm>

namespace mdt {

namespace {
void check_attrs(const DyadAttrs& a) {
    if (a.subjects_identical && (a.dynamical || a.order != OrderKind::None))
        throw DomainError(ErrorKind::IllFormed, "identity dyads cannot be dynamical or ordered");
    if (a.order != OrderKind::None && !a.dynamical)
        throw DomainError(ErrorKind::IllFormed, "ordered dyads must be dynamical");
}
} // namespace

TermPtr RelationTerm::quality(std::string label) {
    if (label.empty()) throw DomainError(ErrorKind::IllFormed, "quality labels must be nonempty");
    auto t = std::shared_ptr<RelationTerm>(new RelationTerm());
    t->node_ = Node::Quality;
    t->label_ = std::move(label);
    return t;
}

TermPtr RelationTerm::dyad(DyadAttrs attrs, TermPtr s1, TermPtr s2) {
    check_attrs(attrs);
    auto t = std::shared_ptr<RelationTerm>(new RelationTerm());
    t->node_ = Node::Dyad;
    t->attrs_ = std::move(attrs);
    t->subjects_ = {std::move(s1), std::move(s2)};
    return t;
}

TermPtr RelationTerm::triad(TermPtr s1, TermPtr s2, TermPtr s3) {
    auto t = std::shared_ptr<RelationTerm>(new RelationTerm());
    t->node_ = Node::Triad;
    t->subjects_ = {std::move(s1), std::move(s2), std::move(s3)};
    return t;
}

std::string to_string(DyadClass c) {
    switch (c) {
    case DyadClass::Essential: return "Essential";
    case DyadClass::Inherential: return "Inherential";
    case DyadClass::RelationalIdentity: return "Relational.Identity";
    case DyadClass::RelationalDiversityQualitative: return "Relational.Diversity.Qualitative";
    case DyadClass::RelationalDiversityDynamicalUnordered: return "Relational.Diversity.Dynamical.Unordered";
    case DyadClass::RelationalDiversityDynamicalMaterialOrder:
        return "Relational.Diversity.Dynamical.MaterialOrder";
    case DyadClass::RelationalDiversityDynamicalFormalOrder:
        return "Relational.Diversity.Dynamical.FormalOrder";
    }
    return "?";
}

std::string to_string(TriadClass c) {
    switch (c) {
    case TriadClass::DegenerateMonadic: return "DegenerateMonadic";
    case TriadClass::DegenerateDyadic: return "DegenerateDyadic";
    case TriadClass::Genuine: return "Genuine";
    }
    return "?";
}

std::string to_string(StructuralDyadClass c) {
    switch (c) {
    case StructuralDyadClass::Essential: return "Essential";
    case StructuralDyadClass::Inherential: return "Inherential";
    case StructuralDyadClass::Relational: return "Relational";
    case StructuralDyadClass::Incomplete: return "Incomplete";
    }
    return "?";
}

DyadClass classify_dyad(const RelationTerm& t) {
    if (t.node() != RelationTerm::Node::Dyad)
        throw DomainError(ErrorKind::IllFormed, "classify_dyad requires a dyadic term");
    const auto& s1 = *t.subjects()[0];
    const auto& s2 = *t.subjects()[1];
    for (const auto* s : {&s1, &s2})
        if (s->node() == RelationTerm::Node::Triad)
            throw DomainError(ErrorKind::IllFormed, "the dyad tree does not cover triadic subjects");

    bool q1 = s1.node() == RelationTerm::Node::Quality;
    bool q2 = s2.node() == RelationTerm::Node::Quality;
    if (q1 && q2) return DyadClass::Essential;
    if (q1 || q2) return DyadClass::Inherential;

    const DyadAttrs& a = t.attrs();
    check_attrs(a);
    if (a.subjects_identical) return DyadClass::RelationalIdentity;
    if (!a.dynamical) return DyadClass::RelationalDiversityQualitative;
    switch (a.order) {
    case OrderKind::None: return DyadClass::RelationalDiversityDynamicalUnordered;
    case OrderKind::Material: return DyadClass::RelationalDiversityDynamicalMaterialOrder;
    case OrderKind::Formal: return DyadClass::RelationalDiversityDynamicalFormalOrder;
    }
    return DyadClass::RelationalDiversityDynamicalUnordered;
}

TriadClass classify_triad(const RelationTerm& t) {
    if (t.node() != RelationTerm::Node::Triad)
        throw DomainError(ErrorKind::IllFormed, "classify_triad requires a triadic term");
    bool any_triad = false;
    bool all_quality = true;
    for (const auto& s : t.subjects()) {
        if (s->node() == RelationTerm::Node::Triad) any_triad = true;
        if (s->node() != RelationTerm::Node::Quality) all_quality = false;
    }
    if (any_triad) return TriadClass::Genuine;
    if (all_quality) return TriadClass::DegenerateMonadic;
    return TriadClass::DegenerateDyadic;
}

int degeneracy_rank(DyadClass c) {
    switch (c) {
    case DyadClass::Essential: return 0;
    case DyadClass::Inherential: return 1;
    case DyadClass::RelationalIdentity: return 2;
    case DyadClass::RelationalDiversityQualitative: return 3;
    case DyadClass::RelationalDiversityDynamicalUnordered: return 4;
    case DyadClass::RelationalDiversityDynamicalMaterialOrder: return 5;
    case DyadClass::RelationalDiversityDynamicalFormalOrder: return 6;
    }
    return -1;
}

namespace {

// Substructure reachable from one port of `d` without passing back through d.
struct Side {
    bool free = false;        // the dyad's own port is unbonded
    bool single_monad = false;
    bool has_dyad = false;
};

Side explore_side(const Molecule& m, const std::string& d, int port) {
    Side side;
    const PortRef start{d, port};
    std::optional<PortRef> entry;
    for (const auto& b : m.bonds) {
        if (b.lo == start) entry = b.hi;
        if (b.hi == start) entry = b.lo;
    }
    if (!entry) {
        side.free = true;
        return side;
    }
    std::set<std::string> seen{d};
    std::vector<std::string> stack{entry->element};
    seen.insert(entry->element);
    std::vector<std::string> reached{entry->element};
    while (!stack.empty()) {
        std::string cur = stack.back();
        stack.pop_back();
        for (const auto& b : m.bonds)
            for (const auto& [from, to] : {std::pair{b.lo, b.hi}, std::pair{b.hi, b.lo}})
                if (from.element == cur && !seen.contains(to.element)) {
                    seen.insert(to.element);
                    stack.push_back(to.element);
                    reached.push_back(to.element);
                }
    }
    side.single_monad =
        reached.size() == 1 && m.elements.at(reached.front()) == ElementKind::Monad;
    for (const auto& id : reached)
        if (m.elements.at(id) == ElementKind::Dyad) side.has_dyad = true;
    return side;
}

} // namespace

StructuralDyadClass structural_dyad_class(const Molecule& m, const std::string& dyad_id) {
    auto it = m.elements.find(dyad_id);
    if (it == m.elements.end() || it->second != ElementKind::Dyad)
        throw DomainError(ErrorKind::NotADyad, dyad_id + " is not a dyad in this molecule");
    Side a = explore_side(m, dyad_id, 0);
    Side b = explore_side(m, dyad_id, 1);
    if (a.free || b.free) return StructuralDyadClass::Incomplete;
    if (a.single_monad && b.single_monad) return StructuralDyadClass::Essential;
    if (a.single_monad || b.single_monad) return StructuralDyadClass::Inherential;
    return StructuralDyadClass::Relational;
}

} // namespace mdt
