#include "mdt/sets.hpp"

#include <algorithm>
#include <sstream>

namespace mdt {

bool set_equal(const SetExpr& a, const SetExpr& b) {
    if (a.is_atom() != b.is_atom()) return false;
    if (a.is_atom()) return a.name == b.name;
    auto contains = [](const SetExpr& s, const SetExpr& x) {
        for (const auto& m : s.members)
            if (set_equal(m, x)) return true;
        return false;
    };
    for (const auto& m : a.members)
        if (!contains(b, m)) return false;
    for (const auto& m : b.members)
        if (!contains(a, m)) return false;
    return true;
}

bool set_member(const SetExpr& x, const SetExpr& s) {
    if (s.is_atom()) throw DomainError(ErrorKind::NotASet, "membership test against an atom");
    for (const auto& m : s.members)
        if (set_equal(m, x)) return true;
    return false;
}

int set_depth(const SetExpr& e) {
    if (e.is_atom()) return 0;
    int d = 0;
    for (const auto& m : e.members) d = std::max(d, set_depth(m));
    return d + 1;
}

namespace {
bool canonical_less(const SetExpr& a, const SetExpr& b) {
    int da = set_depth(a), db = set_depth(b);
    if (da != db) return da < db;
    return print_set(a) < print_set(b);
}
} // namespace

std::string print_set(const SetExpr& e) {
    if (e.is_atom()) return e.name;
    if (e.members.empty()) return "∅";
    std::vector<SetExpr> ms = e.members;
    std::stable_sort(ms.begin(), ms.end(), canonical_less);
    std::ostringstream os;
    os << '{';
    for (size_t i = 0; i < ms.size(); ++i) {
        if (i) os << ',';
        os << print_set(ms[i]);
    }
    os << '}';
    return os.str();
}

SetExpr unit_identities(const SetExpr& a, const SetExpr& b) {
    if (a.is_atom() || b.is_atom())
        throw DomainError(ErrorKind::NotASet, "unit_identities requires two sets");
    std::vector<SetExpr> common;
    for (const auto& m : a.members) {
        if (!set_member(m, b)) continue;
        bool dup = false;
        for (const auto& c : common)
            if (set_equal(c, m)) dup = true;
        if (!dup) common.push_back(m);
    }
    std::sort(common.begin(), common.end(), canonical_less);
    return SetExpr::set(std::move(common));
}

void SimpleGraph::add_vertex(std::string v) { vertices.insert(std::move(v)); }

void SimpleGraph::add_edge(const std::string& a, const std::string& b) {
    if (a == b) throw DomainError(ErrorKind::IllFormed, "edge endpoints must be distinct: " + a);
    if (!vertices.contains(a) || !vertices.contains(b))
        throw DomainError(ErrorKind::IllFormed, "edge references undeclared vertex");
    edges.insert(std::minmax(a, b));
}

SetExpr encode_standard(const SimpleGraph& g) {
    std::vector<SetExpr> vs;
    for (const auto& v : g.vertices) vs.push_back(SetExpr::atom(v));
    std::vector<SetExpr> es;
    for (const auto& [a, b] : g.edges) es.push_back(SetExpr::set({SetExpr::atom(a), SetExpr::atom(b)}));
    return SetExpr::set({SetExpr::set(std::move(vs)), SetExpr::set(std::move(es))});
}

namespace {
SetExpr ordinal(int n) {
    SetExpr e = SetExpr::empty();
    for (int i = 0; i < n; ++i) {
        std::vector<SetExpr> ms = e.members;
        ms.push_back(e);
        e = SetExpr::set(std::move(ms));
    }
    return e;
}

SetExpr port_expr(const PortRef& p) {
    return SetExpr::set({SetExpr::atom(p.element), ordinal(p.index)});
}
} // namespace

SetExpr encode_mdt(const Molecule& m) {
    std::vector<SetExpr> ms, ds, ts, bs;
    for (const auto& [id, kind] : m.elements) {
        switch (kind) {
        case ElementKind::Monad: ms.push_back(SetExpr::atom(id)); break;
        case ElementKind::Dyad: ds.push_back(SetExpr::atom(id)); break;
        case ElementKind::Triad: ts.push_back(SetExpr::atom(id)); break;
        }
    }
    for (const auto& b : m.bonds) bs.push_back(SetExpr::set({port_expr(b.lo), port_expr(b.hi)}));
    return SetExpr::set({SetExpr::set(std::move(ms)), SetExpr::set(std::move(ds)),
                         SetExpr::set(std::move(ts)), SetExpr::set(std::move(bs))});
}

std::string to_string(MdtRole r) {
    switch (r) {
    case MdtRole::Triad: return "Triad";
    case MdtRole::DyadLike: return "Dyad-like";
    case MdtRole::Polyad: return "Polyad";
    }
    return "?";
}

DegreeReport kempe_degree_report(const SimpleGraph& g) {
    DegreeReport r;
    std::map<std::string, int> degree;
    for (const auto& v : g.vertices) degree[v] = 0;
    for (const auto& [a, b] : g.edges) {
        ++degree[a];
        ++degree[b];
    }
    for (const auto& [v, d] : degree) {
        VertexReport vr;
        vr.vertex = v;
        vr.degree = d;
        if (d > 3) {
            vr.role = MdtRole::Polyad;
            vr.polyad_k = d;
        } else {
            vr.role = MdtRole::Triad; // triad character by connective capacity
        }
        r.vertices.push_back(std::move(vr));
        ++r.histogram[d];
    }
    return r;
}

std::string format_report(const DegreeReport& r) {
    std::ostringstream os;
    for (const auto& v : r.vertices) {
        os << v.vertex << " degree=" << v.degree << " role=" << to_string(v.role);
        if (v.role == MdtRole::Polyad)
            os << '(' << v.polyad_k << ") [reducible to " << v.polyad_k - 2 << " chained triads]";
        os << '\n';
    }
    os << "edges: dyadic\nhistogram:";
    for (const auto& [d, n] : r.histogram) os << ' ' << d << ':' << n;
    os << '\n';
    return os.str();
}

} // namespace mdt
