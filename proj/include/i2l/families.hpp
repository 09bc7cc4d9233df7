#pragma once

#include "i2l/finset.hpp"
#include "i2l/inv2link.hpp"
#include "i2l/report.hpp"

#include <utility>
#include <variant>
#include <vector>

namespace i2l {

using Table2 = std::vector<std::vector<std::size_t>>; // binary operation table

/// Finite group given by tables; make() validates exhaustively and throws.
struct FinGroup {
    FinSet carrier;
    Table2 op;
    std::size_t unit = 0;
    std::vector<std::size_t> inv;

    static FinGroup make(FinSet carrier, Table2 op, std::size_t unit,
                         std::vector<std::size_t> inv);
};
Report validate_group_tables(const FinSet& carrier, const Table2& op,
                             std::size_t unit, const std::vector<std::size_t>& inv);

struct FinMonoid {
    FinSet carrier;
    Table2 op;
    std::size_t unit = 0;

    static FinMonoid make(FinSet carrier, Table2 op, std::size_t unit);
};
Report validate_monoid_tables(const FinSet& carrier, const Table2& op, std::size_t unit);

/// Inverse semigroup: associative, x x' x = x, x' x x' = x', and commuting
/// idempotents (equivalent to the uniqueness of inverses).
struct FinInverseSemigroup {
    FinSet carrier;
    Table2 op;
    std::vector<std::size_t> inv;

    static FinInverseSemigroup make(FinSet carrier, Table2 op, std::vector<std::size_t> inv);
};
Report validate_inverse_semigroup_tables(const FinSet& carrier, const Table2& op,
                                         const std::vector<std::size_t>& inv);

/// An indexed family of subsets of a base set. Covering the base is not
/// required; the constructions below never use it.
struct OpenCover {
    FinSet base;
    std::vector<std::vector<std::size_t>> parts; // each sorted, distinct, in range

    static OpenCover make(FinSet base, std::vector<std::vector<std::size_t>> parts);
};

struct GroupAction {
    FinGroup group;
    FinSet points;
    Table2 xi; // xi[g][x]

    static GroupAction make(FinGroup group, FinSet points, Table2 xi);
};
Report validate_action_tables(const FinGroup& group, const FinSet& points, const Table2& xi);

// ---- the example families -------------------------------------------------

/// Discrete: C1 = C2 = X, everything the identity.
Inv2Link discrete(const FinSet& x);

/// Codiscrete: C1 = X^2, C2 = X^3, m(x,y,z) = (x,z), theta swaps the first
/// two coordinates, phi swaps the last two.
Inv2Link codiscrete(const FinSet& x);

/// Equivalence relation R on X as a groupoid-link: C1 = R, C2 = the chains
/// x R y R z, with the codiscrete coordinate maps.
Report validate_equivalence(const FinSet& x,
                            const std::vector<std::pair<std::size_t, std::size_t>>& rel);
Inv2Link from_equivalence_relation(const FinSet& x,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& rel);

/// All pairs/triples of overlapping chart tags: C1 = sum of U_i n U_j,
/// C2 = sum of triple intersections, m drops the middle tag.
Inv2Link cech(const OpenCover& cover);

/// One-object groupoid of a group: C1 = G, C2 = G^2, m = multiplication,
/// theta(x,y) = (x^-1, xy), phi(x,y) = (xy, y^-1).
Inv2Link from_group(const FinGroup& g);

/// Action groupoid: C1 = G x X, C2 = G x G x X.
Inv2Link from_group_action(const GroupAction& action);

/// Group-to-monoid homomorphism h: C1 = G x M, C2 = G x G x M with
/// phi(a,b,c) = (ab, b^-1, h(b).c). The monoid is written multiplicatively.
Report validate_group_monoid_hom(const FinGroup& g, const FinMonoid& m,
                                 const std::vector<std::size_t>& h);
Inv2Link from_group_monoid_hom(const FinGroup& g, const FinMonoid& m,
                               const std::vector<std::size_t>& h);

/// Underlying groupoid of an inverse semigroup: C1 = S,
/// C2 = {(x,y) : x^-1 x = y y^-1}.
Inv2Link from_inverse_semigroup(const FinInverseSemigroup& s);

/// The smallest involutive-2-link that is not a groupoid: C1 = {0,1},
/// C2 = {"1","2","3"}, m = [0,1,0], theta swaps 1,2 and phi swaps 2,3.
Inv2Link minimal_non_groupoid();

/// Inputs of the combined relation-action construction: maps g: S -> B and
/// phi: B x X -> X compatible with the inverse semigroup, and a relation
/// R in S x X closed under the two stated conditions.
struct RelationActionData {
    FinInverseSemigroup s;
    FinSet points;                 // X
    FinSet tags;                   // B
    std::vector<std::size_t> g;    // S -> B
    Table2 phi;                    // phi[b][x]
    std::vector<std::pair<std::size_t, std::size_t>> relation; // subset of S x X
};
Report validate_relation_action(const RelationActionData& data);
Inv2Link from_relation_action(const RelationActionData& data);

/// Involutive magma (X, m, i) with i.m = m(i x pi2, i x pi1): yields the
/// link (theta, phi, m) on C2 = X^2 iff m(i(x), m(x,y)) = y and
/// m(m(x,y), i(y)) = x; otherwise the first offending pair is returned.
/// Violating the involution or antihomomorphism hypothesis throws.
struct MagmaWitness {
    std::size_t x, y;
    std::string condition;
};
std::variant<Inv2Link, MagmaWitness>
from_involutive_magma(const FinSet& x, const Table2& op, const std::vector<std::size_t>& inv);

/// Report form of the magma hypotheses and cancellation conditions,
/// for diagnostic use on raw tables.
Report validate_magma_tables(const FinSet& x, const Table2& op,
                             const std::vector<std::size_t>& inv);

// ---- small stock algebras used by the CLI and the test suites -------------

FinGroup cyclic_group(std::size_t n);
FinGroup klein_four();
FinGroup symmetric_group_3();
FinMonoid trivial_monoid();
/// Meet monoid on the chain 0 < 1 < ... < n-1 with unit n-1.
FinMonoid chain_monoid(std::size_t n);
FinMonoid monoid_from_group(const FinGroup& g);
FinInverseSemigroup inverse_semigroup_from_group(const FinGroup& g);
/// Meet semilattice on a chain, every element its own inverse.
FinInverseSemigroup chain_semilattice(std::size_t n);
/// Partial injections on a 2-element set: 7 elements.
FinInverseSemigroup symmetric_inverse_monoid_2();
/// Five-element Brandt semigroup (2x2 matrix units and zero).
FinInverseSemigroup brandt_b2();

/// Equivalence relation from a partition given as class ids per element.
std::vector<std::pair<std::size_t, std::size_t>>
relation_from_partition(const std::vector<std::size_t>& class_ids);

} // namespace i2l
