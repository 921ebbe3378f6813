#include "mdt/enumerate.hpp"

#include <algorithm>
#include <map>

namespace mdt {

namespace {

struct PortTable {
    std::vector<std::string> ids;     // element index -> id
    std::vector<ElementKind> kinds;   // element index -> kind
    std::vector<int> port_elem;       // global port -> element index
    std::vector<int> elem_first_port; // element index -> first global port
};

PortTable build_table(const EnumSpec& spec) {
    PortTable t;
    auto add = [&](ElementKind k, int count) {
        for (int i = 0; i < count; ++i) {
            int e = static_cast<int>(t.ids.size());
            t.ids.push_back("e" + std::to_string(e + 1));
            t.kinds.push_back(k);
            t.elem_first_port.push_back(static_cast<int>(t.port_elem.size()));
            for (int p = 0; p < arity(k); ++p) t.port_elem.push_back(e);
        }
    };
    add(ElementKind::Monad, spec.monads);
    add(ElementKind::Dyad, spec.dyads);
    add(ElementKind::Triad, spec.triads);
    return t;
}

constexpr int kUndecided = -2;
constexpr int kFree = -1;

Molecule realize(const PortTable& t, const std::vector<int>& mate) {
    Molecule m;
    for (size_t e = 0; e < t.ids.size(); ++e) m.elements.emplace(t.ids[e], t.kinds[e]);
    for (int p = 0; p < static_cast<int>(mate.size()); ++p) {
        int q = mate[p];
        if (q > p) {
            int pe = t.port_elem[p];
            int qe = t.port_elem[q];
            m.bonds.insert(Bond::make(PortRef{t.ids[pe], p - t.elem_first_port[pe]},
                                      PortRef{t.ids[qe], q - t.elem_first_port[qe]}));
        }
    }
    return m;
}

struct Generator {
    const PortTable& table;
    const EnumSpec& spec;
    bool prune_symmetry;
    std::vector<int> mate;
    std::vector<Molecule> out;
    std::map<std::string, Molecule>* classes = nullptr; // set iff deduping

    void run() {
        mate.assign(table.port_elem.size(), kUndecided);
        step(0);
    }

    bool element_untouched(int e) const {
        int first = table.elem_first_port[e];
        for (int p = first; p < first + arity(table.kinds[e]); ++p)
            if (mate[p] != kUndecided) return false;
        return true;
    }

    bool first_undecided_of_element(int q) const {
        int e = table.port_elem[q];
        for (int p = table.elem_first_port[e]; p < q; ++p)
            if (mate[p] == kUndecided) return false;
        return true;
    }

    void step(int pos) {
        int n = static_cast<int>(mate.size());
        while (pos < n && mate[pos] != kUndecided) ++pos;
        if (pos == n) {
            emit();
            return;
        }
        if (!spec.medads_only) {
            mate[pos] = kFree;
            step(pos + 1);
            mate[pos] = kUndecided;
        }
        std::set<ElementKind> fresh_kinds_tried;
        for (int q = pos + 1; q < n; ++q) {
            if (mate[q] != kUndecided) continue;
            if (table.port_elem[q] == table.port_elem[pos]) continue; // self-bond
            if (prune_symmetry) {
                if (!first_undecided_of_element(q)) continue; // ports within an element are symmetric
                int e = table.port_elem[q];
                if (element_untouched(e)) {
                    // untouched elements of equal kind are interchangeable
                    if (fresh_kinds_tried.contains(table.kinds[e])) continue;
                    fresh_kinds_tried.insert(table.kinds[e]);
                }
            }
            mate[pos] = q;
            mate[q] = pos;
            step(pos + 1);
            mate[pos] = kUndecided;
            mate[q] = kUndecided;
        }
    }

    void emit() {
        Molecule m = realize(table, mate);
        if (spec.connected_only && !is_connected(m)) return;
        if (classes) {
            std::string cert = certificate(m);
            if (!classes->contains(cert)) classes->emplace(std::move(cert), canonical_relabel(m));
        } else {
            out.push_back(std::move(m));
        }
    }
};

} // namespace

std::vector<Molecule> enumerate_molecules(const EnumSpec& spec) {
    if (spec.total_ports() > spec.cap)
        throw DomainError(ErrorKind::CapExceeded, "port count " + std::to_string(spec.total_ports()) +
                                                      " exceeds cap " + std::to_string(spec.cap));
    PortTable table = build_table(spec);
    std::map<std::string, Molecule> classes;
    Generator gen{table, spec, /*prune_symmetry=*/true};
    gen.classes = &classes;
    gen.run();
    std::vector<Molecule> out;
    out.reserve(classes.size());
    for (auto& [cert, m] : classes) out.push_back(std::move(m));
    return out;
}

long long count_medads(int monads, int dyads, int triads, bool connected, int cap) {
    EnumSpec spec{monads, dyads, triads, /*medads_only=*/true, connected, cap};
    return static_cast<long long>(enumerate_molecules(spec).size());
}

std::vector<Molecule> pairing_oracle(const EnumSpec& spec) {
    if (spec.total_ports() > 10)
        throw DomainError(ErrorKind::CapExceeded,
                          "oracle port count " + std::to_string(spec.total_ports()) + " exceeds cap 10");
    PortTable table = build_table(spec);
    EnumSpec all = spec;
    all.medads_only = false; // generate everything, then filter
    all.connected_only = false;
    Generator gen{table, all, /*prune_symmetry=*/false};
    gen.run();

    std::vector<Molecule> reps;
    for (auto& m : gen.out) {
        if (spec.medads_only && !is_medad(m)) continue;
        if (spec.connected_only && !is_connected(m)) continue;
        bool known = false;
        for (const auto& r : reps)
            if (isomorphic(r, m)) {
                known = true;
                break;
            }
        if (!known) reps.push_back(std::move(m));
    }
    return reps;
}

} // namespace mdt
