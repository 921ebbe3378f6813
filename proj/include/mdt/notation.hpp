#pragma once

#include <string>
#include <string_view>

#include "mdt/core.hpp"
#include "mdt/sets.hpp"
#include "mdt/taxonomy.hpp"

namespace mdt {

/// Tree shorthand, e.g. "D(M,M)" or "T(M,M,_)". Top-level M/D/T take
/// 0-or-1/2/3 slots; nested elements spend one port on the parent bond.
Molecule parse_term(std::string_view text);

/// Declarative syntax, e.g. "d1:D; bond d1.0--d1.1;". Required for cycles.
Molecule parse_decl(std::string_view text);

/// Decl-syntax text with canonical ids (e1..eN) and sorted statements.
/// Identical for all relabelings of the same molecule.
std::string print_canonical(const Molecule& m);

std::string to_json(const Molecule& m);

/// Throws DomainError(SchemaError) on malformed JSON and ValidationError
/// when the decoded molecule breaks structural invariants.
Molecule from_json(std::string_view text);

/// Deterministic DOT: circle=monad, square=dyad, triangle=triad, diamond
/// glyph on bond edges, small open nodes for free ends, dashed clusters
/// for group boundaries.
std::string to_dot(const Molecule& m);

/// Relation-term DSL: Q(label), D[attrs](s1,s2), T(s1,s2,s3) with attrs
/// among identical, dynamical, order=material|formal, action=<label>.
TermPtr parse_relation(std::string_view text);

/// Graph files: "node a;" and "edge a--b;" statements.
SimpleGraph parse_graph(std::string_view text);

/// Set expressions: atoms, ∅ (or {}), and {a,b,...}.
SetExpr parse_set(std::string_view text);

} // namespace mdt
