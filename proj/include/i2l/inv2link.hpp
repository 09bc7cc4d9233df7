#pragma once

#include "i2l/finset.hpp"
#include "i2l/report.hpp"

#include <array>
#include <optional>
#include <variant>
#include <vector>

namespace i2l {

/// A morphism m: C2 -> C1 equipped with two involutions theta, phi on C2
/// satisfying the interlink identity theta.phi.theta = phi.theta.phi, and
/// such that {m, m.theta, m.phi} is jointly monomorphic. The struct itself
/// is plain data; validate_link decides the invariants.
struct Inv2Link {
    FinMap m;     // C2 -> C1
    FinMap theta; // C2 -> C2
    FinMap phi;   // C2 -> C2

    const FinSet& c2() const { return m.dom(); }
    const FinSet& c1() const { return m.cod(); }
};

/// Checks, in order: the involution laws, the interlink identity, and joint
/// monomorphy of {m, m.theta, m.phi}. All three verdicts are always
/// reported. When theta is the identity, an extra corollary verdict checks
/// that phi is forced to be the identity too. Throws on shape mismatch.
Report validate_link(const Inv2Link& link);

/// Order of the permutation group generated by theta and phi under
/// composition. Divides 6 on valid links; computable on any pair of tables.
std::size_t dihedral_order(const Inv2Link& link);

struct FbarFailure {
    std::size_t element;                // source C2 element with no preimage
    std::array<std::size_t, 3> triple;  // the unmatched (fm, fm.theta, fm.phi)
    std::string detail;
};

/// The unique fbar with m'.fbar = f.m, m'.theta'.fbar = f.m.theta and
/// m'.phi'.fbar = f.m.phi, found by matching triples against the target's
/// jointly-monomorphic tri-graph; the equivariance equations
/// theta'.fbar = fbar.theta and phi'.fbar = fbar.phi are re-verified.
std::variant<FinMap, FbarFailure>
induce_fbar(const Inv2Link& source, const Inv2Link& target, const FinMap& f);

struct Inv2LinkMorphism {
    Inv2Link source;
    Inv2Link target;
    FinMap f;    // source.c1 -> target.c1
    FinMap fbar; // source.c2 -> target.c2
};

/// Wraps induce_fbar into a morphism value; nullopt when no fbar exists.
std::optional<Inv2LinkMorphism>
make_morphism(const Inv2Link& source, const Inv2Link& target, const FinMap& f);

Inv2LinkMorphism identity_morphism(const Inv2Link& link);

/// Composite morphism; requires f.target and g.source to coincide.
Inv2LinkMorphism compose_morphisms(const Inv2LinkMorphism& g, const Inv2LinkMorphism& f);

/// Searches for a bijection f on C1 whose induced fbar is bijective.
/// The inverse tables then automatically form the inverse morphism.
std::optional<Inv2LinkMorphism>
links_isomorphic(const Inv2Link& left, const Inv2Link& right);

/// All morphisms left -> right, by exhaustive enumeration of candidate f
/// maps. Guarded: throws std::domain_error when |c1'|^|c1| exceeds the cap.
std::vector<Inv2LinkMorphism>
enumerate_link_morphisms(const Inv2Link& source, const Inv2Link& target,
                         std::size_t cap = 1u << 20);

} // namespace i2l
