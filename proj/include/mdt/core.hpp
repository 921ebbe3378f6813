#pragma once

#include <compare>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "mdt/errors.hpp"

namespace mdt {

enum class ElementKind { Monad, Dyad, Triad };

int arity(ElementKind kind);
char kind_letter(ElementKind kind);
ElementKind kind_from_letter(char c); // throws DomainError(SchemaError)

/// One open end of an element: (element id, port index).
struct PortRef {
    std::string element;
    int index = 0;

    auto operator<=>(const PortRef&) const = default;
};

/// Unordered pair of distinct ports; stored with ends sorted.
struct Bond {
    PortRef lo;
    PortRef hi;

    static Bond make(PortRef p, PortRef q);

    auto operator<=>(const Bond&) const = default;
};

/// Dashed-circle bookkeeping boundary.
struct GroupBoundary {
    std::set<std::string> members;
    std::set<PortRef> exported; // member ports that were free at formation

    bool operator==(const GroupBoundary&) const = default;
};

/// A multiset of valence-typed elements plus bonds between their ports.
/// Plain data: untrusted inputs may decode into invalid states, which
/// validate() reports rather than forbids.
struct Molecule {
    std::map<std::string, ElementKind> elements;
    std::set<Bond> bonds;
    std::vector<GroupBoundary> groups;

    bool operator==(const Molecule&) const = default;

    int count(ElementKind kind) const;
};

Molecule make_element(ElementKind kind);

/// Disjoint union; b's ids remapped deterministically on collision.
Molecule merge(const Molecule& a, const Molecule& b);

Molecule form_bond(const Molecule& m, const PortRef& p, const PortRef& q);
Molecule erase_bond(const Molecule& m, const Bond& b);

std::vector<PortRef> free_ends(const Molecule& m);
bool is_medad(const Molecule& m);

std::vector<Violation> validate(const Molecule& m);

/// Kind-preserving element bijection mapping bonds to bonds; ports within
/// an element are interchangeable. Backtracking search, no canonical forms.
bool isomorphic(const Molecule& a, const Molecule& b);

bool is_connected(const Molecule& m);

/// Smallest "e<k>" not already used as an element id.
std::string fresh_id(const Molecule& m);

/// Stable fingerprint of the isomorphism class (kind-colored multigraph
/// canonical labeling). Equal certificates iff isomorphic.
std::string certificate(const Molecule& m);

/// Same molecule with elements renamed e1..eN in certificate order and
/// bond port indices reassigned deterministically. Group memberships are
/// carried over; exported ports are recomputed.
Molecule canonical_relabel(const Molecule& m);

} // namespace mdt
