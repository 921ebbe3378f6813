#pragma once

#include <vector>

#include "mdt/core.hpp"

namespace mdt {

struct EnumSpec {
    int monads = 0;
    int dyads = 0;
    int triads = 0;
    bool medads_only = false;
    bool connected_only = false;
    int cap = 12;

    int total_ports() const { return monads + 2 * dyads + 3 * triads; }
};

/// One canonical representative per isomorphism class matching the spec,
/// sorted by certificate. Generation prunes symmetric branches; classes are
/// deduplicated by canonical labeling.
std::vector<Molecule> enumerate_molecules(const EnumSpec& spec);

long long count_medads(int monads, int dyads, int triads, bool connected, int cap = 12);

/// Independent oracle: generate every self-bond-free partial matching on the
/// port set with no symmetry pruning, then bucket via the isomorphic()
/// predicate. Capped at 10 ports.
std::vector<Molecule> pairing_oracle(const EnumSpec& spec);

} // namespace mdt
