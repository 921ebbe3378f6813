#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "mdt/core.hpp"

namespace mdt {

enum class OrderKind { None, Material, Formal };

/// Caller-supplied character of a dyadic relationship. `action` is an
/// uninterpreted label; the finer kinds of ordered action are never
/// enumerated.
struct DyadAttrs {
    bool subjects_identical = false;
    bool dynamical = false;
    OrderKind order = OrderKind::None;
    std::optional<std::string> action;

    bool operator==(const DyadAttrs&) const = default;
};

class RelationTerm;
using TermPtr = std::shared_ptr<const RelationTerm>;

/// Recursive semantic description of a relation: a quality leaf, a dyad with
/// two subjects, or a triad with three.
class RelationTerm {
public:
    enum class Node { Quality, Dyad, Triad };

    static TermPtr quality(std::string label);
    static TermPtr dyad(DyadAttrs attrs, TermPtr s1, TermPtr s2);
    static TermPtr triad(TermPtr s1, TermPtr s2, TermPtr s3);

    Node node() const { return node_; }
    const std::string& label() const { return label_; }
    const DyadAttrs& attrs() const { return attrs_; }
    const std::vector<TermPtr>& subjects() const { return subjects_; }

private:
    RelationTerm() = default;

    Node node_ = Node::Quality;
    std::string label_;
    DyadAttrs attrs_;
    std::vector<TermPtr> subjects_;
};

enum class DyadClass {
    Essential,
    Inherential,
    RelationalIdentity,
    RelationalDiversityQualitative,
    RelationalDiversityDynamicalUnordered,
    RelationalDiversityDynamicalMaterialOrder,
    RelationalDiversityDynamicalFormalOrder,
};

enum class TriadClass { DegenerateMonadic, DegenerateDyadic, Genuine };

enum class StructuralDyadClass { Essential, Inherential, Relational, Incomplete };

std::string to_string(DyadClass c);
std::string to_string(TriadClass c);
std::string to_string(StructuralDyadClass c);

/// Classify a dyadic term by its subjects, refined by the relationship
/// attributes when both subjects are dyadic. Triadic subjects are not
/// covered by the tree and raise IllFormed.
DyadClass classify_dyad(const RelationTerm& t);

TriadClass classify_triad(const RelationTerm& t);

/// Total degeneracy order over dyad classes; 0 = most degenerate.
int degeneracy_rank(DyadClass c);

/// Classify a dyad element inside a molecule by the substructure hanging off
/// its two ports. Semantic sub-branches are not structurally derivable.
StructuralDyadClass structural_dyad_class(const Molecule& m, const std::string& dyad_id);

} // namespace mdt
