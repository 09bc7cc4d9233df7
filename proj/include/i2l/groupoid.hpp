#pragma once

#include "i2l/finset.hpp"
#include "i2l/report.hpp"

#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace i2l {

/// An internal groupoid in finite sets: objects C0, arrows C1, composable
/// pairs C2, with domain d, codomain c, unit e, inverse i, projections
/// pi1, pi2 and composition m. An arrow pair (pi1 x, pi2 x) composes as
/// "pi2 x first, then pi1 x": d.pi1 = c.pi2 and m x goes d(pi2 x) -> c(pi1 x).
struct InternalGroupoid {
    FinMap d, c;      // C1 -> C0
    FinMap e;         // C0 -> C1
    FinMap i;         // C1 -> C1
    FinMap pi1, pi2;  // C2 -> C1
    FinMap m;         // C2 -> C1

    const FinSet& c0() const { return d.cod(); }
    const FinSet& c1() const { return d.dom(); }
    const FinSet& c2() const { return m.dom(); }

    /// The composable-pairs square {top: pi2, left: pi1, bottom: d, right: c}.
    CommSquare pairs_square() const;
};

/// Checks every groupoid axiom and reports a verdict per group: the
/// reflexive-graph equations, the compatibility equations, the involution
/// equations, the pullback property of the composable-pairs square, unit
/// laws, inverse laws, and associativity through the reconstructed triple
/// object. Throws on shape mismatch.
Report validate_groupoid(const InternalGroupoid& g);

struct InvolutionFailure {
    std::string kind;    // "kernel_square_not_pullback" or "postcheck"
    std::string witness;
};

/// Reconstruction of the inverse from the kernel-pair square: requires the reflexive-graph and
/// compatibility equations plus the composable-pairs pullback (throws
/// otherwise); then decides whether the square d.m = d.pi2 is a pullback.
/// On success returns i := pi1 . <ed, 1> and re-verifies the involution
/// and inverse laws; any re-verification failure is returned as a value.
std::variant<FinMap, InvolutionFailure>
derive_involution(const FinMap& d, const FinMap& c, const FinMap& e,
                  const FinMap& m, const FinMap& pi1, const FinMap& pi2);

struct GroupoidBuildFailure {
    std::string stage; // "involution" or "axioms"
    std::string detail;
    Report report;     // populated when stage == "axioms"
};

/// Builds the canonical composable-pairs object as pullback(d, c), attaches
/// the supplied multiplication table (indexed over that pullback), derives
/// the inverse, and validates fully.
std::variant<InternalGroupoid, GroupoidBuildFailure>
make_groupoid_from_multiplicative_data(const FinMap& d, const FinMap& c,
                                       const FinMap& e,
                                       const std::vector<std::size_t>& m_table);

/// A functor is carried by (f0, f1); compatibility with composition is
/// checked through the induced map <f1.pi1, f1.pi2> into the target's
/// composable-pairs pullback.
struct GroupoidFunctor {
    InternalGroupoid source;
    InternalGroupoid target;
    FinMap f0; // C0 -> C0'
    FinMap f1; // C1 -> C1'
};

/// Validates the functor equations; nullopt when any fails.
std::optional<GroupoidFunctor>
make_functor(const InternalGroupoid& source, const InternalGroupoid& target,
             const FinMap& f0, const FinMap& f1);

/// Backtracking search for a functor with bijective f0, f1 (whose inverse
/// pair is then also a functor). Returns the (f0, f1) pair of one.
std::optional<std::pair<FinMap, FinMap>>
groupoids_isomorphic(const InternalGroupoid& left, const InternalGroupoid& right);

/// All functors source -> target by exhaustive enumeration of f1 tables
/// (f0 is forced by f0 = d'.f1.e since d is split epi). Guarded by cap.
std::vector<GroupoidFunctor>
enumerate_functors(const InternalGroupoid& source, const InternalGroupoid& target,
                   std::size_t cap = 1u << 20);

} // namespace i2l
