#include "mdt/core.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace mdt {

std::string to_string(ViolationKind k) {
    switch (k) {
    case ViolationKind::BadArity: return "BadArity";
    case ViolationKind::OverSaturated: return "OverSaturated";
    case ViolationKind::DanglingRef: return "DanglingRef";
    case ViolationKind::SelfBond: return "SelfBond";
    }
    return "?";
}

namespace {
std::string join_violations(const std::vector<Violation>& vs) {
    std::ostringstream os;
    os << "invalid molecule:";
    for (const auto& v : vs) os << " [" << to_string(v.kind) << "] " << v.detail << ";";
    return os.str();
}
} // namespace

ValidationError::ValidationError(std::vector<Violation> violations)
    : std::runtime_error(join_violations(violations)), violations_(std::move(violations)) {}

int arity(ElementKind kind) {
    switch (kind) {
    case ElementKind::Monad: return 1;
    case ElementKind::Dyad: return 2;
    case ElementKind::Triad: return 3;
    }
    return 0;
}

char kind_letter(ElementKind kind) {
    switch (kind) {
    case ElementKind::Monad: return 'M';
    case ElementKind::Dyad: return 'D';
    case ElementKind::Triad: return 'T';
    }
    return '?';
}

ElementKind kind_from_letter(char c) {
    switch (c) {
    case 'M': return ElementKind::Monad;
    case 'D': return ElementKind::Dyad;
    case 'T': return ElementKind::Triad;
    }
    throw DomainError(ErrorKind::SchemaError, std::string("unknown element kind '") + c + "'");
}

Bond Bond::make(PortRef p, PortRef q) {
    if (q < p) std::swap(p, q);
    return Bond{std::move(p), std::move(q)};
}

int Molecule::count(ElementKind kind) const {
    int n = 0;
    for (const auto& [id, k] : elements)
        if (k == kind) ++n;
    return n;
}

Molecule make_element(ElementKind kind) {
    Molecule m;
    m.elements.emplace("e1", kind);
    return m;
}

std::string fresh_id(const Molecule& m) {
    for (int k = 1;; ++k) {
        std::string id = "e" + std::to_string(k);
        if (!m.elements.contains(id)) return id;
    }
}

Molecule merge(const Molecule& a, const Molecule& b) {
    Molecule out = a;
    std::map<std::string, std::string> remap;
    for (const auto& [id, kind] : b.elements) {
        std::string name = out.elements.contains(id) ? fresh_id(out) : id;
        remap.emplace(id, name);
        out.elements.emplace(name, kind);
    }
    for (const auto& bond : b.bonds)
        out.bonds.insert(Bond::make(PortRef{remap.at(bond.lo.element), bond.lo.index},
                                    PortRef{remap.at(bond.hi.element), bond.hi.index}));
    for (const auto& g : b.groups) {
        GroupBoundary ng;
        for (const auto& id : g.members) ng.members.insert(remap.at(id));
        for (const auto& p : g.exported) ng.exported.insert(PortRef{remap.at(p.element), p.index});
        out.groups.push_back(std::move(ng));
    }
    return out;
}

namespace {

bool port_exists(const Molecule& m, const PortRef& p) {
    auto it = m.elements.find(p.element);
    return it != m.elements.end() && p.index >= 0 && p.index < arity(it->second);
}

bool port_bonded(const Molecule& m, const PortRef& p) {
    for (const auto& b : m.bonds)
        if (b.lo == p || b.hi == p) return true;
    return false;
}

std::string port_str(const PortRef& p) {
    return p.element + "." + std::to_string(p.index);
}

} // namespace

Molecule form_bond(const Molecule& m, const PortRef& p, const PortRef& q) {
    if (!port_exists(m, p)) throw DomainError(ErrorKind::UnknownPort, "unknown port " + port_str(p));
    if (!port_exists(m, q)) throw DomainError(ErrorKind::UnknownPort, "unknown port " + port_str(q));
    if (p.element == q.element)
        throw DomainError(ErrorKind::SelfBond, "self-bond " + port_str(p) + "--" + port_str(q));
    if (port_bonded(m, p)) throw DomainError(ErrorKind::PortSaturated, "port already saturated: " + port_str(p));
    if (port_bonded(m, q)) throw DomainError(ErrorKind::PortSaturated, "port already saturated: " + port_str(q));
    Molecule out = m;
    out.bonds.insert(Bond::make(p, q));
    return out;
}

Molecule erase_bond(const Molecule& m, const Bond& b) {
    Bond key = Bond::make(b.lo, b.hi);
    if (!m.bonds.contains(key))
        throw DomainError(ErrorKind::NoSuchBond, "no bond " + port_str(key.lo) + "--" + port_str(key.hi));
    Molecule out = m;
    out.bonds.erase(key);
    return out;
}

std::vector<PortRef> free_ends(const Molecule& m) {
    std::set<PortRef> bonded;
    for (const auto& b : m.bonds) {
        bonded.insert(b.lo);
        bonded.insert(b.hi);
    }
    std::vector<PortRef> out;
    for (const auto& [id, kind] : m.elements)
        for (int i = 0; i < arity(kind); ++i) {
            PortRef p{id, i};
            if (!bonded.contains(p)) out.push_back(p);
        }
    return out;
}

bool is_medad(const Molecule& m) { return free_ends(m).empty(); }

std::vector<Violation> validate(const Molecule& m) {
    std::vector<Violation> out;
    std::map<PortRef, int> uses;
    for (const auto& b : m.bonds) {
        for (const auto& p : {b.lo, b.hi}) {
            auto it = m.elements.find(p.element);
            if (it == m.elements.end()) {
                out.push_back({ViolationKind::DanglingRef, "bond references unknown element " + p.element});
            } else if (p.index < 0 || p.index >= arity(it->second)) {
                out.push_back({ViolationKind::BadArity,
                               "port " + port_str(p) + " exceeds arity of " + kind_letter(it->second)});
            }
            ++uses[p];
        }
        if (b.lo.element == b.hi.element)
            out.push_back({ViolationKind::SelfBond, "bond " + port_str(b.lo) + "--" + port_str(b.hi) +
                                                        " joins an element to itself"});
    }
    for (const auto& [p, n] : uses)
        if (n > 1)
            out.push_back({ViolationKind::OverSaturated,
                           "port " + port_str(p) + " participates in " + std::to_string(n) + " bonds"});
    for (const auto& g : m.groups)
        for (const auto& id : g.members)
            if (!m.elements.contains(id))
                out.push_back({ViolationKind::DanglingRef, "group references unknown element " + id});
    return out;
}

// ---------------------------------------------------------------------------
// Multigraph view: elements as kind-colored vertices, bonds as edges with
// multiplicity. Port indices are immaterial for isomorphism (ports within an
// element are symmetric).

namespace {

struct MultiGraph {
    std::vector<std::string> ids;  // index -> element id, sorted
    std::vector<ElementKind> kinds;
    std::map<std::pair<int, int>, int> mult; // normalized (i<j) -> multiplicity

    int n() const { return static_cast<int>(ids.size()); }

    int multiplicity(int i, int j) const {
        auto it = mult.find(std::minmax(i, j));
        return it == mult.end() ? 0 : it->second;
    }
};

MultiGraph to_multigraph(const Molecule& m) {
    MultiGraph g;
    std::map<std::string, int> index;
    for (const auto& [id, kind] : m.elements) {
        index.emplace(id, g.n());
        g.ids.push_back(id);
        g.kinds.push_back(kind);
    }
    for (const auto& b : m.bonds) {
        int i = index.at(b.lo.element);
        int j = index.at(b.hi.element);
        ++g.mult[std::minmax(i, j)];
    }
    return g;
}

std::vector<std::vector<std::pair<int, int>>> adjacency(const MultiGraph& g) {
    std::vector<std::vector<std::pair<int, int>>> adj(g.n()); // (neighbor, mult)
    for (const auto& [e, c] : g.mult) {
        adj[e.first].emplace_back(e.second, c);
        adj[e.second].emplace_back(e.first, c);
    }
    return adj;
}

int degree_of(const MultiGraph& g, int v) {
    int d = 0;
    for (const auto& [e, c] : g.mult)
        if (e.first == v || e.second == v) d += c;
    return d;
}

// --- canonical labeling of one connected component --------------------------

struct ComponentCanon {
    std::string cert;
    std::vector<int> order; // canonical position -> vertex index (in component-local terms)
};

class CanonSearch {
public:
    CanonSearch(const MultiGraph& g, std::vector<int> verts)
        : g_(g), verts_(std::move(verts)), local_adj_(verts_.size()) {
        std::map<int, int> local;
        for (int i = 0; i < static_cast<int>(verts_.size()); ++i) local[verts_[i]] = i;
        for (const auto& [e, c] : g_.mult) {
            auto a = local.find(e.first);
            auto b = local.find(e.second);
            if (a != local.end() && b != local.end()) {
                local_adj_[a->second].emplace_back(b->second, c);
                if (a != b) local_adj_[b->second].emplace_back(a->second, c);
            }
        }
    }

    ComponentCanon run() {
        int n = static_cast<int>(verts_.size());
        std::vector<int> colors(n);
        for (int i = 0; i < n; ++i) colors[i] = static_cast<int>(g_.kinds[verts_[i]]);
        normalize(colors);
        refine(colors);
        search(colors);
        return {best_cert_, best_order_};
    }

private:
    // Re-rank colors to 0..k-1 preserving order.
    static void normalize(std::vector<int>& colors) {
        std::vector<int> sorted = colors;
        std::sort(sorted.begin(), sorted.end());
        sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
        for (auto& c : colors)
            c = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), c) - sorted.begin());
    }

    void refine(std::vector<int>& colors) const {
        int n = static_cast<int>(colors.size());
        while (true) {
            std::vector<std::pair<std::vector<int>, int>> sigs(n);
            for (int v = 0; v < n; ++v) {
                std::vector<int> sig;
                sig.push_back(colors[v]);
                std::vector<std::pair<int, int>> nb; // (neighbor color, mult)
                for (const auto& [u, c] : local_adj_[v]) nb.emplace_back(colors[u], c);
                std::sort(nb.begin(), nb.end());
                for (const auto& [col, c] : nb) {
                    sig.push_back(col);
                    sig.push_back(c);
                }
                sigs[v] = {std::move(sig), v};
            }
            auto sorted = sigs;
            std::sort(sorted.begin(), sorted.end());
            std::vector<int> next(n);
            int rank = -1;
            for (int i = 0; i < n; ++i) {
                if (i == 0 || sorted[i].first != sorted[i - 1].first) ++rank;
                next[sorted[i].second] = rank;
            }
            if (next == colors || rank + 1 == countColors(colors)) {
                // no further splitting possible once class count is stable
                if (next == colors) return;
                colors = next;
                return;
            }
            colors = next;
        }
    }

    static int countColors(const std::vector<int>& colors) {
        return colors.empty() ? 0 : *std::max_element(colors.begin(), colors.end()) + 1;
    }

    void search(std::vector<int> colors) {
        int n = static_cast<int>(colors.size());
        int classes = countColors(colors);
        if (classes == n) {
            emit(colors);
            return;
        }
        // first non-singleton color class
        int target = -1;
        std::vector<int> counts(classes, 0);
        for (int c : colors) ++counts[c];
        for (int c = 0; c < classes; ++c)
            if (counts[c] > 1) {
                target = c;
                break;
            }
        for (int v = 0; v < n; ++v) {
            if (colors[v] != target) continue;
            std::vector<int> next = colors;
            for (int u = 0; u < n; ++u)
                next[u] = next[u] * 2 + (u == v ? 0 : 1);
            normalize(next);
            refine(next);
            search(std::move(next));
        }
    }

    void emit(const std::vector<int>& colors) {
        int n = static_cast<int>(colors.size());
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[colors[v]] = v;
        std::ostringstream os;
        for (int pos = 0; pos < n; ++pos) {
            int v = order[pos];
            os << kind_letter(g_.kinds[verts_[v]]);
            std::vector<std::pair<int, int>> nb;
            for (const auto& [u, c] : local_adj_[v]) nb.emplace_back(colors[u], c);
            std::sort(nb.begin(), nb.end());
            for (const auto& [pos2, c] : nb) os << ' ' << pos2 << 'x' << c;
            os << ';';
        }
        std::string cert = os.str();
        if (best_cert_.empty() || cert < best_cert_) {
            best_cert_ = std::move(cert);
            best_order_ = std::move(order);
        }
    }

    const MultiGraph& g_;
    std::vector<int> verts_;
    std::vector<std::vector<std::pair<int, int>>> local_adj_;
    std::string best_cert_;
    std::vector<int> best_order_;
};

std::vector<std::vector<int>> components(const MultiGraph& g) {
    auto adj = adjacency(g);
    std::vector<std::vector<int>> comps;
    std::vector<bool> seen(g.n(), false);
    for (int s = 0; s < g.n(); ++s) {
        if (seen[s]) continue;
        std::vector<int> comp, stack{s};
        seen[s] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            comp.push_back(v);
            for (const auto& [u, c] : adj[v])
                if (!seen[u]) {
                    seen[u] = true;
                    stack.push_back(u);
                }
        }
        std::sort(comp.begin(), comp.end());
        comps.push_back(std::move(comp));
    }
    return comps;
}

struct CanonResult {
    std::string cert;
    std::vector<int> order; // canonical position -> global vertex index
};

CanonResult canonize(const MultiGraph& g) {
    struct CompCanon {
        std::string cert;
        std::vector<int> global_order;
        int min_id;
    };
    std::vector<CompCanon> canons;
    for (auto& comp : components(g)) {
        CanonSearch cs(g, comp);
        auto cc = cs.run();
        std::vector<int> global;
        global.reserve(comp.size());
        for (int local : cc.order) global.push_back(comp[local]);
        canons.push_back({std::move(cc.cert), std::move(global), comp.front()});
    }
    std::sort(canons.begin(), canons.end(), [](const CompCanon& a, const CompCanon& b) {
        if (a.cert != b.cert) return a.cert < b.cert;
        return a.min_id < b.min_id;
    });
    CanonResult out;
    std::ostringstream os;
    for (const auto& c : canons) {
        os << c.cert << '#';
        out.order.insert(out.order.end(), c.global_order.begin(), c.global_order.end());
    }
    out.cert = os.str();
    return out;
}

} // namespace

std::string certificate(const Molecule& m) {
    return canonize(to_multigraph(m)).cert;
}

Molecule canonical_relabel(const Molecule& m) {
    MultiGraph g = to_multigraph(m);
    CanonResult canon = canonize(g);
    int n = g.n();
    std::vector<int> pos(n); // vertex -> canonical position
    for (int p = 0; p < n; ++p) pos[canon.order[p]] = p;

    Molecule out;
    std::map<std::string, std::string> rename;
    for (int p = 0; p < n; ++p) {
        int v = canon.order[p];
        std::string name = "e" + std::to_string(p + 1);
        rename.emplace(g.ids[v], name);
        out.elements.emplace(std::move(name), g.kinds[v]);
    }
    // Reassign port indices: bonds sorted by canonical endpoint positions,
    // each endpoint takes its element's next unused index.
    std::vector<std::pair<int, int>> edges;
    for (const auto& b : m.bonds) {
        int i = pos[static_cast<int>(std::distance(g.ids.begin(),
                                                   std::lower_bound(g.ids.begin(), g.ids.end(), b.lo.element)))];
        int j = pos[static_cast<int>(std::distance(g.ids.begin(),
                                                   std::lower_bound(g.ids.begin(), g.ids.end(), b.hi.element)))];
        edges.push_back(std::minmax(i, j));
    }
    std::sort(edges.begin(), edges.end());
    std::vector<int> next_index(n, 0);
    for (const auto& [i, j] : edges) {
        PortRef p{"e" + std::to_string(i + 1), next_index[i]++};
        PortRef q{"e" + std::to_string(j + 1), next_index[j]++};
        out.bonds.insert(Bond::make(std::move(p), std::move(q)));
    }
    for (const auto& grp : m.groups) {
        GroupBoundary ng;
        for (const auto& id : grp.members) ng.members.insert(rename.at(id));
        out.groups.push_back(std::move(ng));
    }
    if (!out.groups.empty()) {
        auto frees = free_ends(out);
        for (auto& grp : out.groups)
            for (const auto& p : frees)
                if (grp.members.contains(p.element)) grp.exported.insert(p);
    }
    return out;
}

bool is_connected(const Molecule& m) {
    MultiGraph g = to_multigraph(m);
    return g.n() <= 1 || components(g).size() == 1;
}

bool isomorphic(const Molecule& a, const Molecule& b) {
    if (a.elements.size() != b.elements.size() || a.bonds.size() != b.bonds.size()) return false;
    for (auto k : {ElementKind::Monad, ElementKind::Dyad, ElementKind::Triad})
        if (a.count(k) != b.count(k)) return false;

    MultiGraph ga = to_multigraph(a);
    MultiGraph gb = to_multigraph(b);
    int n = ga.n();

    std::vector<int> da(n), db(n);
    std::multiset<std::pair<int, int>> inv_a, inv_b; // (kind, degree)
    for (int v = 0; v < n; ++v) {
        da[v] = degree_of(ga, v);
        db[v] = degree_of(gb, v);
        inv_a.emplace(static_cast<int>(ga.kinds[v]), da[v]);
        inv_b.emplace(static_cast<int>(gb.kinds[v]), db[v]);
    }
    if (inv_a != inv_b) return false;

    // Order a's vertices so each (after the first in a component) touches an
    // earlier one; keeps the mapping constrained early.
    auto adj_a = adjacency(ga);
    std::vector<int> order;
    std::vector<bool> placed(n, false);
    while (static_cast<int>(order.size()) < n) {
        int pick = -1;
        for (int v = 0; v < n; ++v) {
            if (placed[v]) continue;
            bool touches = false;
            for (const auto& [u, c] : adj_a[v])
                if (placed[u]) touches = true;
            if (touches) {
                pick = v;
                break;
            }
        }
        if (pick < 0)
            for (int v = 0; v < n && pick < 0; ++v)
                if (!placed[v]) pick = v;
        placed[pick] = true;
        order.push_back(pick);
    }

    std::vector<int> map_ab(n, -1);
    std::vector<bool> used(n, false);
    auto backtrack = [&](auto&& self, int depth) -> bool {
        if (depth == n) return true;
        int v = order[depth];
        for (int w = 0; w < n; ++w) {
            if (used[w] || gb.kinds[w] != ga.kinds[v] || db[w] != da[v]) continue;
            bool ok = true;
            for (int d = 0; d < depth && ok; ++d) {
                int u = order[d];
                if (ga.multiplicity(v, u) != gb.multiplicity(w, map_ab[u])) ok = false;
            }
            if (!ok) continue;
            map_ab[v] = w;
            used[w] = true;
            if (self(self, depth + 1)) return true;
            used[w] = false;
            map_ab[v] = -1;
        }
        return false;
    };
    return backtrack(backtrack, 0);
}

} // namespace mdt
