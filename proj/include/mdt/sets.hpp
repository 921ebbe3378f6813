#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "mdt/core.hpp"

namespace mdt {

/// Finite pure-set expression: a named atom or a finite list of members.
/// The representation keeps member order and duplicates; set_equal and
/// friends are extensional.
struct SetExpr {
    enum class Node { Atom, Set };

    Node node = Node::Set;
    std::string name;
    std::vector<SetExpr> members;

    static SetExpr atom(std::string n) { return SetExpr{Node::Atom, std::move(n), {}}; }
    static SetExpr set(std::vector<SetExpr> ms) { return SetExpr{Node::Set, {}, std::move(ms)}; }
    static SetExpr empty() { return set({}); }

    bool is_atom() const { return node == Node::Atom; }
};

bool set_equal(const SetExpr& a, const SetExpr& b);
bool set_member(const SetExpr& x, const SetExpr& s); // throws NotASet

/// Members of a that are extensionally present in b (the possible unit
/// identities between the two sets), deduplicated and canonically ordered.
SetExpr unit_identities(const SetExpr& a, const SetExpr& b);

/// Canonical text: ∅ for the empty set, braces with members sorted by
/// (depth, printed form). This is the golden-file format.
std::string print_set(const SetExpr& e);

int set_depth(const SetExpr& e);

/// Labeled vertices and undirected edges.
struct SimpleGraph {
    std::set<std::string> vertices;
    std::set<std::pair<std::string, std::string>> edges; // stored (lo, hi)

    void add_vertex(std::string v);
    void add_edge(const std::string& a, const std::string& b); // throws IllFormed
};

/// Two-sort encoding {V, E}: vertex atoms and 2-sets of endpoint atoms.
SetExpr encode_standard(const SimpleGraph& g);

/// Four-sort encoding {Ms, Ds, Ts, Bs}; ports are 2-sets of an element atom
/// and the port index as a finite ordinal (∅, {∅}, {∅,{∅}}).
SetExpr encode_mdt(const Molecule& m);

enum class MdtRole { Triad, DyadLike, Polyad };

std::string to_string(MdtRole r);

struct VertexReport {
    std::string vertex;
    int degree = 0;
    MdtRole role = MdtRole::Triad;
    int polyad_k = 0; // set iff role == Polyad
};

struct DegreeReport {
    std::vector<VertexReport> vertices; // sorted by vertex label
    std::map<int, int> histogram;       // degree -> count
};

/// Degree/role analysis in the Kempe style: vertices carry triad character
/// by connective capacity regardless of current degree; degree > 3 is a
/// polyad that a chain of (k-2) triads can realize. Edges are dyadic.
DegreeReport kempe_degree_report(const SimpleGraph& g);

std::string format_report(const DegreeReport& r);

} // namespace mdt
