#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace i2l {

/// A finite set with elements canonically indexed 0..size-1. Labels, when
/// present, are pairwise-distinct display strings used in witnesses and
/// serialized documents; they take no part in any computation.
class FinSet {
public:
    FinSet() = default;
    explicit FinSet(std::size_t size) : size_(size) {}
    FinSet(std::size_t size, std::vector<std::string> labels);

    std::size_t size() const { return size_; }
    const std::optional<std::vector<std::string>>& labels() const { return labels_; }

    /// Display name of element k: its label if labels exist, else "k".
    std::string label(std::size_t k) const;

    bool operator==(const FinSet&) const = default;

private:
    std::size_t size_ = 0;
    std::optional<std::vector<std::string>> labels_;
};

/// A total map between finite sets, stored as a table of codomain indices.
class FinMap {
public:
    FinMap(FinSet dom, FinSet cod, std::vector<std::size_t> table);

    const FinSet& dom() const { return dom_; }
    const FinSet& cod() const { return cod_; }
    const std::vector<std::size_t>& table() const { return table_; }

    std::size_t operator()(std::size_t k) const { return table_[k]; }

    bool operator==(const FinMap&) const = default;

private:
    FinSet dom_;
    FinSet cod_;
    std::vector<std::size_t> table_;
};

FinMap identity(const FinSet& a);

/// g after f; requires f.cod() == g.dom().
FinMap compose(const FinMap& g, const FinMap& f);

bool is_mono(const FinMap& f);
bool is_epi(const FinMap& f);

/// True iff the tupling a |-> (f1(a), ..., fn(a)) is injective. All maps
/// must share their domain and the family must be nonempty.
bool is_jointly_mono(std::span<const FinMap> family);

/// A commutative square, oriented as
///
///     apex --top--> B
///      |            |
///     left        right
///      v            v
///      A --bottom-> C
///
/// Construction rejects shape mismatches and non-commuting data
/// (right . top must equal bottom . left).
class CommSquare {
public:
    CommSquare(FinMap top, FinMap left, FinMap bottom, FinMap right);

    const FinMap& top() const { return top_; }
    const FinMap& left() const { return left_; }
    const FinMap& bottom() const { return bottom_; }
    const FinMap& right() const { return right_; }

    const FinSet& apex() const { return top_.dom(); }
    const FinSet& coapex() const { return bottom_.cod(); }

private:
    FinMap top_, left_, bottom_, right_;
};

/// Pullback of the cospan (f, g) with f.cod() == g.cod(). The apex
/// enumerates pairs (a, b) with f(a) = g(b) in lexicographic order of
/// (a, b); p1 and p2 are the projections to dom(f) and dom(g).
struct PullbackResult {
    FinSet apex;
    FinMap p1;
    FinMap p2;

    /// The pullback as a square: {top: p2, left: p1, bottom: f, right: g}.
    CommSquare square(const FinMap& f, const FinMap& g) const;
};
PullbackResult pullback(const FinMap& f, const FinMap& g);

/// Pushout of the span (f, g) with f.dom() == g.dom(). The coapex is
/// cod(f) + cod(g) quotiented by the equivalence generated by f(x) ~ g(x),
/// classes indexed by ascending smallest representative with cod(f)
/// elements indexed before cod(g). q1 and q2 are the class maps.
struct PushoutResult {
    FinSet coapex;
    FinMap q1;
    FinMap q2;

    /// The pushout as a square: {top: g, left: f, bottom: q1, right: q2}.
    CommSquare square(const FinMap& f, const FinMap& g) const;
};
PushoutResult pushout(const FinMap& f, const FinMap& g);

/// Pullback / pushout / exactness as *properties* of a square, decided by
/// bijectivity of the canonical comparison map against the constructed
/// pullback (resp. pushout) of the square's cospan (resp. span).
bool is_pullback(const CommSquare& sq);
bool is_pushout(const CommSquare& sq);
bool is_exact(const CommSquare& sq);

/// Exhaustive universal-property decision procedures, used as cross-checks
/// for the comparison-map predicates. Cones (cocones) are enumerated from
/// one test object per size up to max corner size + 1, and mediating maps
/// are counted per cone; the square passes iff every count is exactly one.
/// Throws std::domain_error when a corner exceeds `corner_bound`.
bool universal_pullback_oracle(const CommSquare& sq, std::size_t corner_bound = 6);
bool universal_pushout_oracle(const CommSquare& sq, std::size_t corner_bound = 6);

/// The unique h with left . h = u and top . h = v, for a pullback square
/// and a cone (u, v) satisfying bottom . u = right . v. Throws when the
/// square is not a pullback or the cone equation fails.
FinMap induced_to_pullback(const CommSquare& sq, const FinMap& u, const FinMap& v);

/// Dual: the unique h with h . bottom = u and h . right = v, for a pushout
/// square and a cocone (u, v) satisfying u . left = v . top.
FinMap induced_from_pushout(const CommSquare& sq, const FinMap& u, const FinMap& v);

/// The completed zig-zag of a parallel pair (pi1, pi2): the bottom square
/// is the pushout of the span (pi1, pi2) and must also be a pullback; the
/// top square is the pullback of the cospan (pi2, pi1) and must also be a
/// pushout. Both squares then being exact makes the pair bi-exact.
struct BiexactCompletion {
    FinSet c3;
    FinMap p1, p2; // c3 -> dom(pi1), with pi2 . p1 = pi1 . p2
    FinSet c0;
    FinMap d, c; // cod(pi1) -> c0, with d . pi1 = c . pi2

    CommSquare top_square(const FinMap& pi1, const FinMap& pi2) const;
    CommSquare bottom_square(const FinMap& pi1, const FinMap& pi2) const;
};

struct BiexactFailure {
    std::string witness; // names the square and the exactness that failed
};

std::variant<BiexactCompletion, BiexactFailure>
complete_biexact(const FinMap& pi1, const FinMap& pi2);

} // namespace i2l
