#include "mdt/rewrite.hpp"

#include <algorithm>
#include <map>
#include <optional>

namespace mdt {

Molecule insert_triad(const Molecule& m, const Bond& b) {
    Molecule out = erase_bond(m, b); // throws NoSuchBond
    std::string tid = fresh_id(out);
    out.elements.emplace(tid, ElementKind::Triad);
    out = form_bond(out, b.lo, PortRef{tid, 0});
    out = form_bond(out, b.hi, PortRef{tid, 1});
    return out;
}

namespace {

std::set<PortRef> free_port_set(const Molecule& m) {
    auto v = free_ends(m);
    return {v.begin(), v.end()};
}

PortRef sole_free_end(const Molecule& m, const char* what) {
    auto frees = free_ends(m);
    if (frees.size() != 1)
        throw DomainError(ErrorKind::WrongAdicity, std::string(what) + " must have exactly 1 free end, got " +
                                                       std::to_string(frees.size()));
    return frees.front();
}

// Merge `piece` into `base` and return the piece's single free port as named
// inside the merged molecule.
std::pair<Molecule, PortRef> absorb(const Molecule& base, const Molecule& piece, const char* what) {
    sole_free_end(piece, what);
    auto before = free_port_set(base);
    Molecule merged = merge(base, piece);
    for (const auto& p : free_port_set(merged))
        if (!before.contains(p)) return {std::move(merged), p};
    throw DomainError(ErrorKind::WrongAdicity, "attachment contributed no free end");
}

} // namespace

Molecule triad_join(const Molecule& a, const Molecule& b, const Molecule& c) {
    Molecule out;
    std::vector<PortRef> arms;
    for (const Molecule* piece : {&a, &b, &c}) {
        auto [merged, port] = absorb(out, *piece, "triad_join input");
        out = std::move(merged);
        arms.push_back(port);
    }
    std::string tid = fresh_id(out);
    out.elements.emplace(tid, ElementKind::Triad);
    for (int i = 0; i < 3; ++i) out = form_bond(out, arms[i], PortRef{tid, i});
    return out;
}

Molecule make_group(const Molecule& m, const std::set<std::string>& members) {
    if (members.empty()) throw DomainError(ErrorKind::UnknownElement, "group members must be nonempty");
    for (const auto& id : members)
        if (!m.elements.contains(id)) throw DomainError(ErrorKind::UnknownElement, "unknown element " + id);
    for (const auto& b : m.bonds) {
        bool in_lo = members.contains(b.lo.element);
        bool in_hi = members.contains(b.hi.element);
        if (in_lo != in_hi)
            throw DomainError(ErrorKind::BoundaryCrossed, "bond " + b.lo.element + "." +
                                                              std::to_string(b.lo.index) + "--" + b.hi.element +
                                                              "." + std::to_string(b.hi.index) +
                                                              " crosses the group boundary");
    }
    GroupBoundary g;
    g.members = members;
    for (const auto& p : free_ends(m))
        if (members.contains(p.element)) g.exported.insert(p);
    Molecule out = m;
    out.groups.push_back(std::move(g));
    return out;
}

namespace {

struct PortAttachment {
    std::optional<PortRef> partner; // nullopt = free end
};

} // namespace

CanonicalForm normalize_lines(const Molecule& m) {
    // Dyad-dyad adjacency: components are paths or cycles (a dyad has 2 ports).
    std::map<PortRef, PortRef> partner;
    for (const auto& b : m.bonds) {
        partner.emplace(b.lo, b.hi);
        partner.emplace(b.hi, b.lo);
    }
    auto is_dyad = [&](const std::string& id) {
        auto it = m.elements.find(id);
        return it != m.elements.end() && it->second == ElementKind::Dyad;
    };

    std::map<std::string, std::vector<std::string>> dyad_adj;
    for (const auto& b : m.bonds)
        if (is_dyad(b.lo.element) && is_dyad(b.hi.element)) {
            dyad_adj[b.lo.element].push_back(b.hi.element);
            dyad_adj[b.hi.element].push_back(b.lo.element);
        }

    CanonicalForm out;
    out.skeleton = m;
    std::set<std::string> seen;
    std::vector<std::pair<std::string, int>> losses;

    for (const auto& [id, kind] : m.elements) {
        if (kind != ElementKind::Dyad || seen.contains(id) || !dyad_adj.contains(id)) continue;
        // collect the chain component
        std::vector<std::string> comp{id};
        seen.insert(id);
        for (size_t i = 0; i < comp.size(); ++i)
            for (const auto& nb : dyad_adj[comp[i]])
                if (!seen.contains(nb)) {
                    seen.insert(nb);
                    comp.push_back(nb);
                }
        int k = static_cast<int>(comp.size());
        if (k < 2) continue;

        bool cycle = true;
        for (const auto& d : comp)
            if (dyad_adj[d].size() != 2) cycle = false;

        std::sort(comp.begin(), comp.end());
        std::set<std::string> comp_set(comp.begin(), comp.end());

        // outer attachments: chain-end ports not bonded to a chain dyad
        std::vector<PortAttachment> outers;
        for (const auto& d : comp)
            for (int i = 0; i < 2; ++i) {
                PortRef p{d, i};
                auto it = partner.find(p);
                if (it == partner.end())
                    outers.push_back({std::nullopt});
                else if (!comp_set.contains(it->second.element))
                    outers.push_back({it->second});
            }

        // drop the whole run from the skeleton
        for (const auto& d : comp) out.skeleton.elements.erase(d);
        for (auto it = out.skeleton.bonds.begin(); it != out.skeleton.bonds.end();)
            if (comp_set.contains(it->lo.element) || comp_set.contains(it->hi.element))
                it = out.skeleton.bonds.erase(it);
            else
                ++it;

        if (cycle) {
            if (k == 2) {
                // a dyad 2-cycle is already canonical; restore it untouched
                const std::string &d1 = comp[0], &d2 = comp[1];
                out.skeleton.elements.emplace(d1, ElementKind::Dyad);
                out.skeleton.elements.emplace(d2, ElementKind::Dyad);
                out.skeleton.bonds.insert(Bond::make(PortRef{d1, 0}, PortRef{d2, 0}));
                out.skeleton.bonds.insert(Bond::make(PortRef{d1, 1}, PortRef{d2, 1}));
                continue;
            }
            const std::string &d1 = comp[0], &d2 = comp[1];
            out.skeleton.elements.emplace(d1, ElementKind::Dyad);
            out.skeleton.elements.emplace(d2, ElementKind::Dyad);
            out.skeleton.bonds.insert(Bond::make(PortRef{d1, 0}, PortRef{d2, 0}));
            out.skeleton.bonds.insert(Bond::make(PortRef{d1, 1}, PortRef{d2, 1}));
            losses.emplace_back(d1, k);
        } else {
            const std::string& kept = comp[0];
            out.skeleton.elements.emplace(kept, ElementKind::Dyad);
            int port = 0;
            std::sort(outers.begin(), outers.end(), [](const PortAttachment& a, const PortAttachment& b) {
                if (a.partner.has_value() != b.partner.has_value()) return a.partner.has_value();
                if (!a.partner) return false;
                return *a.partner < *b.partner;
            });
            for (const auto& o : outers) {
                if (o.partner)
                    out.skeleton.bonds.insert(Bond::make(PortRef{kept, port}, *o.partner));
                ++port;
            }
            losses.emplace_back(kept, k);
        }
    }

    std::sort(losses.begin(), losses.end());
    for (auto& [d, k] : losses) out.chain_losses.push_back({d, k});
    return out;
}

bool line_equivalent(const Molecule& a, const Molecule& b) {
    return isomorphic(normalize_lines(a).skeleton, normalize_lines(b).skeleton);
}

Molecule reduce_polyad(int k, const std::vector<Molecule>& attachments) {
    if (k <= 3) throw DomainError(ErrorKind::WrongAdicity, "reduce_polyad requires arity > 3");
    if (static_cast<int>(attachments.size()) != k)
        throw DomainError(ErrorKind::WrongAdicity, "expected " + std::to_string(k) + " attachments, got " +
                                                       std::to_string(attachments.size()));

    Molecule out;
    std::vector<std::string> triads;
    for (int i = 0; i < k - 2; ++i) {
        std::string id = fresh_id(out);
        out.elements.emplace(id, ElementKind::Triad);
        triads.push_back(id);
    }
    for (int i = 0; i + 1 < k - 2; ++i)
        out = form_bond(out, PortRef{triads[i], 1}, PortRef{triads[i + 1], 0});

    std::vector<PortRef> open;
    open.push_back({triads.front(), 0});
    for (const auto& t : triads) open.push_back({t, 2});
    open.push_back({triads.back(), 1});

    for (int i = 0; i < k; ++i) {
        auto [merged, port] = absorb(out, attachments[i], "reduce_polyad attachment");
        out = std::move(merged);
        out = form_bond(out, open[i], port);
    }
    return out;
}

} // namespace mdt
