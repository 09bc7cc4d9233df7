#include "i2l/groupoid.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

namespace i2l {

namespace {

void check_shapes(const InternalGroupoid& g)
{
    if (g.c.dom() != g.c1() || g.c.cod() != g.c0())
        throw std::invalid_argument("InternalGroupoid: d and c must be parallel C1 -> C0");
    if (g.e.dom() != g.c0() || g.e.cod() != g.c1())
        throw std::invalid_argument("InternalGroupoid: e must map C0 -> C1");
    if (g.i.dom() != g.c1() || g.i.cod() != g.c1())
        throw std::invalid_argument("InternalGroupoid: i must be an endomap of C1");
    if (g.pi1.dom() != g.c2() || g.pi2.dom() != g.c2()
        || g.pi1.cod() != g.c1() || g.pi2.cod() != g.c1() || g.m.cod() != g.c1())
        throw std::invalid_argument("InternalGroupoid: pi1, pi2, m must be parallel C2 -> C1");
}

// First element where two parallel maps disagree, as a witness string.
std::optional<std::string> first_disagreement(const FinMap& f, const FinMap& g,
                                              const std::string& equation)
{
    for (std::size_t k = 0; k < f.dom().size(); ++k) {
        if (f(k) != g(k))
            return equation + " fails at element " + f.dom().label(k);
    }
    return std::nullopt;
}

struct EquationSet {
    bool pass = true;
    std::string witness;

    void require(const FinMap& lhs, const FinMap& rhs, const std::string& equation)
    {
        if (!pass)
            return;
        if (auto w = first_disagreement(lhs, rhs, equation)) {
            pass = false;
            witness = *w;
        }
    }
};

} // namespace

CommSquare InternalGroupoid::pairs_square() const
{
    return CommSquare(pi2, pi1, d, c);
}

Report validate_groupoid(const InternalGroupoid& g)
{
    check_shapes(g);
    Report report;

    const FinMap id1 = identity(g.c1());
    const FinMap ed = compose(g.e, g.d);
    const FinMap ec = compose(g.e, g.c);

    EquationSet sections;
    sections.require(compose(g.d, g.e), identity(g.c0()), "d.e = 1");
    sections.require(compose(g.c, g.e), identity(g.c0()), "c.e = 1");
    report.add("unit_section_identities", sections.pass, sections.witness);

    EquationSet compat;
    compat.require(compose(g.d, g.m), compose(g.d, g.pi2), "d.m = d.pi2");
    compat.require(compose(g.c, g.m), compose(g.c, g.pi1), "c.m = c.pi1");
    compat.require(compose(g.d, g.pi1), compose(g.c, g.pi2), "d.pi1 = c.pi2");
    report.add("graph_compatibilities", compat.pass, compat.witness);

    EquationSet involution;
    involution.require(compose(g.d, g.i), g.c, "d.i = c");
    involution.require(compose(g.c, g.i), g.d, "c.i = d");
    involution.require(compose(g.i, g.i), id1, "i.i = 1");
    involution.require(compose(g.i, g.e), g.e, "i.e = e");
    report.add("involution_equations", involution.pass, involution.witness);

    const bool square_commutes = compose(g.d, g.pi1) == compose(g.c, g.pi2);
    bool pairs_pullback = false;
    if (square_commutes) {
        pairs_pullback = is_pullback(g.pairs_square());
        report.add("composable_pairs_pullback", pairs_pullback,
                   pairs_pullback ? "" : "comparison into pullback(d, c) is not a bijection");
    } else {
        report.add("composable_pairs_pullback", false,
                   "not evaluated: d.pi1 = c.pi2 fails");
    }

    auto blocked = [&](const char* need) {
        return std::string("not evaluated: ") + need;
    };

    // pairings <u, v> satisfy pi1.<u,v> = u and pi2.<u,v> = v
    if (pairs_pullback && sections.pass) {
        CommSquare sq = g.pairs_square();
        EquationSet p2;
        p2.require(compose(g.m, induced_to_pullback(sq, id1, ed)), id1, "m<1, ed> = 1");
        p2.require(compose(g.m, induced_to_pullback(sq, ec, id1)), id1, "m<ec, 1> = 1");
        report.add("unit_laws", p2.pass, p2.witness);
    } else {
        report.add("unit_laws", false,
                   blocked("needs the pairs pullback and the section identities"));
    }

    if (pairs_pullback && sections.pass && involution.pass) {
        CommSquare sq = g.pairs_square();
        EquationSet p3;
        p3.require(compose(g.m, induced_to_pullback(sq, id1, g.i)), ec, "m<1, i> = ec");
        p3.require(compose(g.m, induced_to_pullback(sq, g.i, id1)), ed, "m<i, 1> = ed");
        report.add("inverse_laws", p3.pass, p3.witness);
    } else {
        report.add("inverse_laws", false,
                   blocked("needs the pairs pullback and the involution equations"));
    }

    // the triple object always completes the cospan (d.pi2, c) in finite sets
    PullbackResult triples = pullback(compose(g.d, g.pi2), g.c);
    report.add("triples_pullback", true, "");

    if (pairs_pullback && compat.pass) {
        CommSquare sq = g.pairs_square();
        EquationSet p5;
        FinMap m_first = induced_to_pullback(sq, compose(g.m, triples.p1), triples.p2);
        FinMap inner = induced_to_pullback(sq, compose(g.pi2, triples.p1), triples.p2);
        FinMap m_second = induced_to_pullback(sq, compose(g.pi1, triples.p1),
                                              compose(g.m, inner));
        p5.require(compose(g.m, m_first), compose(g.m, m_second),
                   "m(m x 1) = m(1 x m)");
        report.add("associativity", p5.pass, p5.witness);
    } else {
        report.add("associativity", false,
                   blocked("needs the pairs pullback and the graph compatibilities"));
    }

    return report;
}

std::variant<FinMap, InvolutionFailure>
derive_involution(const FinMap& d, const FinMap& c, const FinMap& e,
                  const FinMap& m, const FinMap& pi1, const FinMap& pi2)
{
    InternalGroupoid shape{d, c, e, identity(d.dom()), pi1, pi2, m};
    check_shapes(shape);

    const FinMap id1 = identity(d.dom());
    if (compose(d, e) != identity(d.cod()) || compose(c, e) != identity(d.cod()))
        throw std::invalid_argument("derive_involution: d.e = 1 = c.e must hold");
    if (compose(d, m) != compose(d, pi2) || compose(c, m) != compose(c, pi1)
        || compose(d, pi1) != compose(c, pi2))
        throw std::invalid_argument("derive_involution: the compatibility equations must hold");
    CommSquare pairs(pi2, pi1, d, c);
    if (!is_pullback(pairs))
        throw std::invalid_argument("derive_involution: the composable-pairs square must be a pullback");

    // an involution exists iff the square d.m = d.pi2 is a pullback
    CommSquare kernel(pi2, m, d, d);
    if (!is_pullback(kernel)) {
        // witness: a fiber of the comparison x |-> (m x, pi2 x) of size != 1
        std::map<std::pair<std::size_t, std::size_t>, std::size_t> fiber;
        for (std::size_t x = 0; x < m.dom().size(); ++x)
            ++fiber[{m(x), pi2(x)}];
        for (std::size_t u = 0; u < d.dom().size(); ++u) {
            for (std::size_t v = 0; v < d.dom().size(); ++v) {
                if (d(u) != d(v))
                    continue;
                auto it = fiber.find({u, v});
                std::size_t count = it == fiber.end() ? 0 : it->second;
                if (count != 1) {
                    return InvolutionFailure{"kernel_square_not_pullback",
                        "fiber over (" + d.dom().label(u) + "," + d.dom().label(v)
                        + ") has " + std::to_string(count) + " elements"};
                }
            }
        }
        return InvolutionFailure{"kernel_square_not_pullback",
                                 "comparison into pullback(d, d) is not a bijection"};
    }

    FinMap section = induced_to_pullback(kernel, compose(e, d), id1);
    FinMap inv = compose(pi1, section);

    auto postcheck = [&](const FinMap& lhs, const FinMap& rhs,
                         const std::string& equation) -> std::optional<InvolutionFailure> {
        if (auto w = first_disagreement(lhs, rhs, equation))
            return InvolutionFailure{"postcheck", *w};
        return std::nullopt;
    };

    if (auto bad = postcheck(compose(d, inv), c, "d.i = c"))
        return *bad;
    if (auto bad = postcheck(compose(c, inv), d, "c.i = d"))
        return *bad;
    if (auto bad = postcheck(compose(inv, inv), id1, "i.i = 1"))
        return *bad;
    if (auto bad = postcheck(compose(inv, e), e, "i.e = e"))
        return *bad;
    if (auto bad = postcheck(compose(m, induced_to_pullback(pairs, id1, inv)),
                             compose(e, c), "m<1, i> = ec"))
        return *bad;
    if (auto bad = postcheck(compose(m, induced_to_pullback(pairs, inv, id1)),
                             compose(e, d), "m<i, 1> = ed"))
        return *bad;
    return inv;
}

std::variant<InternalGroupoid, GroupoidBuildFailure>
make_groupoid_from_multiplicative_data(const FinMap& d, const FinMap& c,
                                       const FinMap& e,
                                       const std::vector<std::size_t>& m_table)
{
    if (d.dom() != c.dom() || d.cod() != c.cod())
        throw std::invalid_argument("make_groupoid: d and c must be parallel");
    if (e.dom() != d.cod() || e.cod() != d.dom())
        throw std::invalid_argument("make_groupoid: e must map C0 -> C1");
    if (compose(d, e) != identity(d.cod()) || compose(c, e) != identity(d.cod()))
        throw std::invalid_argument("make_groupoid: d.e = 1 = c.e must hold");

    PullbackResult pairs = pullback(d, c);
    FinMap m(pairs.apex, d.dom(), m_table);

    std::variant<FinMap, InvolutionFailure> derived = InvolutionFailure{};
    try {
        derived = derive_involution(d, c, e, m, pairs.p1, pairs.p2);
    } catch (const std::invalid_argument& e_) {
        // a multiplication violating the compatibility equations cannot
        // reach the involution derivation
        return GroupoidBuildFailure{"involution", e_.what(), Report{}};
    }
    if (auto* failure = std::get_if<InvolutionFailure>(&derived)) {
        return GroupoidBuildFailure{"involution",
                                    failure->kind + ": " + failure->witness, Report{}};
    }
    InternalGroupoid g{d, c, e, std::get<FinMap>(derived), pairs.p1, pairs.p2, m};
    Report report = validate_groupoid(g);
    if (!report.passed())
        return GroupoidBuildFailure{"axioms", "axiom validation failed", std::move(report)};
    return g;
}

std::optional<GroupoidFunctor>
make_functor(const InternalGroupoid& source, const InternalGroupoid& target,
             const FinMap& f0, const FinMap& f1)
{
    check_shapes(source);
    check_shapes(target);
    if (f0.dom() != source.c0() || f0.cod() != target.c0()
        || f1.dom() != source.c1() || f1.cod() != target.c1())
        throw std::invalid_argument("make_functor: f0, f1 do not fit the groupoids");

    if (compose(f0, source.d) != compose(target.d, f1))
        return std::nullopt;
    if (compose(f0, source.c) != compose(target.c, f1))
        return std::nullopt;
    if (compose(f1, source.e) != compose(target.e, f0))
        return std::nullopt;
    if (compose(f1, source.i) != compose(target.i, f1))
        return std::nullopt;
    try {
        FinMap f2 = induced_to_pullback(target.pairs_square(),
                                        compose(f1, source.pi1),
                                        compose(f1, source.pi2));
        if (compose(f1, source.m) != compose(target.m, f2))
            return std::nullopt;
    } catch (const std::invalid_argument&) {
        return std::nullopt;
    }
    return GroupoidFunctor{source, target, f0, f1};
}

namespace {

struct ObjectInvariant {
    std::size_t out = 0;   // arrows with this domain
    std::size_t in = 0;    // arrows with this codomain
    std::size_t loops = 0; // arrows with equal endpoints here

    auto operator<=>(const ObjectInvariant&) const = default;
};

std::vector<ObjectInvariant> object_invariants(const InternalGroupoid& g)
{
    std::vector<ObjectInvariant> inv(g.c0().size());
    for (std::size_t x = 0; x < g.c1().size(); ++x) {
        ++inv[g.d(x)].out;
        ++inv[g.c(x)].in;
        if (g.d(x) == g.c(x))
            ++inv[g.d(x)].loops;
    }
    return inv;
}

std::optional<std::pair<FinMap, FinMap>>
try_iso(const InternalGroupoid& left, const InternalGroupoid& right,
        const std::vector<std::size_t>& t0, const std::vector<std::size_t>& t1)
{
    FinMap f0(left.c0(), right.c0(), t0);
    FinMap f1(left.c1(), right.c1(), t1);
    if (!is_mono(f1) || !is_epi(f1) || !is_mono(f0) || !is_epi(f0))
        return std::nullopt;
    if (!make_functor(left, right, f0, f1))
        return std::nullopt;
    // the inverse pair must be a functor as well
    std::vector<std::size_t> b0(t0.size()), b1(t1.size());
    for (std::size_t k = 0; k < t0.size(); ++k)
        b0[t0[k]] = k;
    for (std::size_t k = 0; k < t1.size(); ++k)
        b1[t1[k]] = k;
    if (!make_functor(right, left, FinMap(right.c0(), left.c0(), b0),
                      FinMap(right.c1(), left.c1(), b1)))
        return std::nullopt;
    return std::make_pair(f0, f1);
}

} // namespace

std::optional<std::pair<FinMap, FinMap>>
groupoids_isomorphic(const InternalGroupoid& left, const InternalGroupoid& right)
{
    if (left.c0().size() != right.c0().size()
        || left.c1().size() != right.c1().size()
        || left.c2().size() != right.c2().size())
        return std::nullopt;

    const std::size_t n0 = left.c0().size();
    const std::size_t n1 = left.c1().size();

    {
        std::vector<std::size_t> id0(n0), id1(n1);
        std::iota(id0.begin(), id0.end(), std::size_t{0});
        std::iota(id1.begin(), id1.end(), std::size_t{0});
        if (auto iso = try_iso(left, right, id0, id1))
            return iso;
    }

    std::vector<ObjectInvariant> left_inv = object_invariants(left);
    std::vector<ObjectInvariant> right_inv = object_invariants(right);
    std::vector<std::vector<std::size_t>> object_candidates(n0);
    for (std::size_t o = 0; o < n0; ++o)
        for (std::size_t o2 = 0; o2 < n0; ++o2)
            if (left_inv[o] == right_inv[o2])
                object_candidates[o].push_back(o2);

    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> f0(n0, unset), f1(n1, unset);
    std::vector<bool> used0(n0, false), used1(n1, false);
    std::optional<std::pair<FinMap, FinMap>> found;

    auto arrows_dfs = [&](auto&& self, std::size_t x) -> bool {
        if (x == n1) {
            found = try_iso(left, right, f0, f1);
            return found.has_value();
        }
        for (std::size_t y = 0; y < n1; ++y) {
            if (used1[y] || right.d(y) != f0[left.d(x)] || right.c(y) != f0[left.c(x)])
                continue;
            f1[x] = y;
            used1[y] = true;
            if (self(self, x + 1))
                return true;
            f1[x] = unset;
            used1[y] = false;
        }
        return false;
    };

    auto objects_dfs = [&](auto&& self, std::size_t o) -> bool {
        if (o == n0)
            return arrows_dfs(arrows_dfs, 0);
        for (std::size_t o2 : object_candidates[o]) {
            if (used0[o2])
                continue;
            f0[o] = o2;
            used0[o2] = true;
            if (self(self, o + 1))
                return true;
            f0[o] = unset;
            used0[o2] = false;
        }
        return false;
    };

    objects_dfs(objects_dfs, 0);
    return found;
}

std::vector<GroupoidFunctor>
enumerate_functors(const InternalGroupoid& source, const InternalGroupoid& target,
                   std::size_t cap)
{
    const std::size_t n = source.c1().size();
    const std::size_t m = target.c1().size();
    double total = 1;
    for (std::size_t k = 0; k < n; ++k) {
        total *= static_cast<double>(m);
        if (total > static_cast<double>(cap))
            throw std::domain_error("enumerate_functors: search space exceeds cap");
    }
    std::vector<GroupoidFunctor> out;
    if ((m == 0 && n > 0) || (target.c0().size() == 0 && source.c0().size() > 0))
        return out;
    std::vector<std::size_t> table(n, 0);
    while (true) {
        FinMap f1(source.c1(), target.c1(), table);
        // d' is split epi, so any functor satisfies f0 = d'.f1.e
        std::vector<std::size_t> t0(source.c0().size());
        for (std::size_t o = 0; o < t0.size(); ++o)
            t0[o] = target.d(f1(source.e(o)));
        FinMap f0(source.c0(), target.c0(), t0);
        if (auto functor = make_functor(source, target, f0, f1))
            out.push_back(std::move(*functor));
        std::size_t k = 0;
        while (k < n && ++table[k] == m) {
            table[k] = 0;
            ++k;
        }
        if (k == n)
            break;
    }
    return out;
}

} // namespace i2l
