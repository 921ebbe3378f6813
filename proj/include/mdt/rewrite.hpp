#pragma once

#include <set>
#include <string>
#include <vector>

#include "mdt/core.hpp"

namespace mdt {

/// One contracted linear run of dyads: the surviving dyad's id and how many
/// dyads the run originally held (always >= 2).
struct ChainLoss {
    std::string dyad;
    int original_count = 0;

    bool operator==(const ChainLoss&) const = default;
};

/// Line-normalized molecule: no two dyads left bonded end-to-end in a row.
struct CanonicalForm {
    Molecule skeleton;
    std::vector<ChainLoss> chain_losses;
};

/// Splice a fresh triad into an existing bond; its third port stays free.
Molecule insert_triad(const Molecule& m, const Bond& b);

/// Bond three one-free-end molecules to a fresh central triad. Always a medad.
Molecule triad_join(const Molecule& a, const Molecule& b, const Molecule& c);

/// Record a dashed-circle boundary around `members`; no bond may cross it.
Molecule make_group(const Molecule& m, const std::set<std::string>& members);

CanonicalForm normalize_lines(const Molecule& m);

bool line_equivalent(const Molecule& a, const Molecule& b);

/// Realize a k-ary junction (k > 3) as a linear chain of k-2 triads with the
/// k attachments bonded to the chain's open ports.
Molecule reduce_polyad(int k, const std::vector<Molecule>& attachments);

} // namespace mdt
