#include "i2l/finset.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

namespace i2l {

namespace {

[[noreturn]] void fail(const std::string& what)
{
    throw std::invalid_argument(what);
}

} // namespace

FinSet::FinSet(std::size_t size, std::vector<std::string> labels) : size_(size)
{
    if (labels.size() != size)
        fail("FinSet: label count does not match size");
    std::set<std::string> distinct(labels.begin(), labels.end());
    if (distinct.size() != labels.size())
        fail("FinSet: labels are not pairwise distinct");
    if (!labels.empty())
        labels_ = std::move(labels);
}

std::string FinSet::label(std::size_t k) const
{
    if (labels_ && k < labels_->size())
        return (*labels_)[k];
    return std::to_string(k);
}

FinMap::FinMap(FinSet dom, FinSet cod, std::vector<std::size_t> table)
    : dom_(std::move(dom)), cod_(std::move(cod)), table_(std::move(table))
{
    if (table_.size() != dom_.size())
        fail("FinMap: table length does not match domain size");
    for (std::size_t v : table_) {
        if (v >= cod_.size())
            fail("FinMap: table entry " + std::to_string(v) + " out of codomain range");
    }
}

FinMap identity(const FinSet& a)
{
    std::vector<std::size_t> table(a.size());
    std::iota(table.begin(), table.end(), std::size_t{0});
    return FinMap(a, a, std::move(table));
}

FinMap compose(const FinMap& g, const FinMap& f)
{
    if (f.cod() != g.dom())
        fail("compose: codomain of inner map differs from domain of outer map");
    std::vector<std::size_t> table(f.dom().size());
    for (std::size_t k = 0; k < table.size(); ++k)
        table[k] = g(f(k));
    return FinMap(f.dom(), g.cod(), std::move(table));
}

bool is_mono(const FinMap& f)
{
    std::vector<bool> seen(f.cod().size(), false);
    for (std::size_t v : f.table()) {
        if (seen[v])
            return false;
        seen[v] = true;
    }
    return true;
}

bool is_epi(const FinMap& f)
{
    std::vector<bool> seen(f.cod().size(), false);
    std::size_t hit = 0;
    for (std::size_t v : f.table()) {
        if (!seen[v]) {
            seen[v] = true;
            ++hit;
        }
    }
    return hit == f.cod().size();
}

bool is_jointly_mono(std::span<const FinMap> family)
{
    if (family.empty())
        fail("is_jointly_mono: empty family");
    const FinSet& dom = family.front().dom();
    for (const FinMap& f : family) {
        if (f.dom() != dom)
            fail("is_jointly_mono: family members do not share a domain");
    }
    std::set<std::vector<std::size_t>> tuples;
    for (std::size_t a = 0; a < dom.size(); ++a) {
        std::vector<std::size_t> tuple;
        tuple.reserve(family.size());
        for (const FinMap& f : family)
            tuple.push_back(f(a));
        if (!tuples.insert(std::move(tuple)).second)
            return false;
    }
    return true;
}

CommSquare::CommSquare(FinMap top, FinMap left, FinMap bottom, FinMap right)
    : top_(std::move(top)), left_(std::move(left)),
      bottom_(std::move(bottom)), right_(std::move(right))
{
    if (top_.dom() != left_.dom())
        fail("CommSquare: top and left must share the apex");
    if (bottom_.cod() != right_.cod())
        fail("CommSquare: bottom and right must share the coapex");
    if (left_.cod() != bottom_.dom())
        fail("CommSquare: left leg does not end where bottom starts");
    if (top_.cod() != right_.dom())
        fail("CommSquare: top leg does not end where right starts");
    for (std::size_t p = 0; p < apex().size(); ++p) {
        if (bottom_(left_(p)) != right_(top_(p)))
            fail("CommSquare: square does not commute at element " + apex().label(p));
    }
}

namespace {

// Label "(a,b)" when both component sets carry labels, else unlabeled.
FinSet pair_set(const FinSet& a, const FinSet& b,
                const std::vector<std::pair<std::size_t, std::size_t>>& pairs)
{
    if (!a.labels() || !b.labels())
        return FinSet(pairs.size());
    std::vector<std::string> labels;
    labels.reserve(pairs.size());
    for (const auto& [x, y] : pairs)
        labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
    return FinSet(pairs.size(), std::move(labels));
}

struct UnionFind {
    std::vector<std::size_t> parent;

    explicit UnionFind(std::size_t n) : parent(n)
    {
        std::iota(parent.begin(), parent.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x)
    {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }

    void unite(std::size_t x, std::size_t y)
    {
        x = find(x);
        y = find(y);
        if (x == y)
            return;
        // keep the smaller index as representative
        if (y < x)
            std::swap(x, y);
        parent[y] = x;
    }
};

} // namespace

CommSquare PullbackResult::square(const FinMap& f, const FinMap& g) const
{
    return CommSquare(p2, p1, f, g);
}

PullbackResult pullback(const FinMap& f, const FinMap& g)
{
    if (f.cod() != g.cod())
        fail("pullback: maps do not share a codomain");
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < f.dom().size(); ++a) {
        for (std::size_t b = 0; b < g.dom().size(); ++b) {
            if (f(a) == g(b))
                pairs.emplace_back(a, b);
        }
    }
    FinSet apex = pair_set(f.dom(), g.dom(), pairs);
    std::vector<std::size_t> t1, t2;
    t1.reserve(pairs.size());
    t2.reserve(pairs.size());
    for (const auto& [a, b] : pairs) {
        t1.push_back(a);
        t2.push_back(b);
    }
    FinMap p1(apex, f.dom(), std::move(t1));
    FinMap p2(apex, g.dom(), std::move(t2));
    return PullbackResult{std::move(apex), std::move(p1), std::move(p2)};
}

CommSquare PushoutResult::square(const FinMap& f, const FinMap& g) const
{
    return CommSquare(g, f, q1, q2);
}

PushoutResult pushout(const FinMap& f, const FinMap& g)
{
    if (f.dom() != g.dom())
        fail("pushout: maps do not share a domain");
    const std::size_t nb = f.cod().size();
    const std::size_t nc = g.cod().size();
    UnionFind uf(nb + nc);
    for (std::size_t x = 0; x < f.dom().size(); ++x)
        uf.unite(f(x), nb + g(x));

    // classes indexed by ascending smallest representative, cod(f) first
    std::vector<std::size_t> class_of(nb + nc);
    std::vector<std::size_t> reps;
    for (std::size_t k = 0; k < nb + nc; ++k) {
        std::size_t r = uf.find(k);
        if (r == k) {
            class_of[k] = reps.size();
            reps.push_back(k);
        }
    }
    FinSet coapex(reps.size());
    std::vector<std::size_t> t1(nb), t2(nc);
    for (std::size_t b = 0; b < nb; ++b)
        t1[b] = class_of[uf.find(b)];
    for (std::size_t c = 0; c < nc; ++c)
        t2[c] = class_of[uf.find(nb + c)];
    FinMap q1(f.cod(), coapex, std::move(t1));
    FinMap q2(g.cod(), coapex, std::move(t2));
    return PushoutResult{std::move(coapex), std::move(q1), std::move(q2)};
}

bool is_pullback(const CommSquare& sq)
{
    PullbackResult pb = pullback(sq.bottom(), sq.right());
    if (sq.apex().size() != pb.apex.size())
        return false;
    // comparison apex -> constructed pullback, injective iff no pair repeats
    std::set<std::pair<std::size_t, std::size_t>> seen;
    for (std::size_t p = 0; p < sq.apex().size(); ++p) {
        if (!seen.emplace(sq.left()(p), sq.top()(p)).second)
            return false;
    }
    return true;
}

bool is_pushout(const CommSquare& sq)
{
    PushoutResult po = pushout(sq.left(), sq.top());
    if (po.coapex.size() != sq.coapex().size())
        return false;
    // comparison constructed pushout -> coapex: class of a |-> bottom(a),
    // class of b |-> right(b); well-defined because the square commutes
    const std::size_t n = po.coapex.size();
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> image(n, unset);
    std::vector<bool> hit(sq.coapex().size(), false);
    auto assign = [&](std::size_t cls, std::size_t value) {
        if (image[cls] == unset) {
            image[cls] = value;
            if (hit[value])
                return false; // not injective
            hit[value] = true;
            return true;
        }
        return image[cls] == value;
    };
    for (std::size_t a = 0; a < sq.bottom().dom().size(); ++a) {
        if (!assign(po.q1(a), sq.bottom()(a)))
            return false;
    }
    for (std::size_t b = 0; b < sq.right().dom().size(); ++b) {
        if (!assign(po.q2(b), sq.right()(b)))
            return false;
    }
    // every class is hit by construction, so image is total; bijective iff
    // also surjective, which the size check plus injectivity already gives
    return true;
}

bool is_exact(const CommSquare& sq)
{
    return is_pullback(sq) && is_pushout(sq);
}

namespace {

std::size_t max_corner(const CommSquare& sq)
{
    return std::max({sq.apex().size(), sq.left().cod().size(),
                     sq.top().cod().size(), sq.coapex().size()});
}

} // namespace

bool universal_pullback_oracle(const CommSquare& sq, std::size_t corner_bound)
{
    if (max_corner(sq) > corner_bound)
        throw std::domain_error("universal_pullback_oracle: corner bound exceeded");

    const std::size_t na = sq.left().cod().size();
    const std::size_t nb = sq.top().cod().size();

    // matching pairs (a, b) of the cospan and apex candidates above each
    std::vector<std::pair<std::size_t, std::size_t>> matching;
    for (std::size_t a = 0; a < na; ++a)
        for (std::size_t b = 0; b < nb; ++b)
            if (sq.bottom()(a) == sq.right()(b))
                matching.emplace_back(a, b);

    std::vector<std::vector<std::size_t>> mediators(matching.size());
    for (std::size_t p = 0; p < sq.apex().size(); ++p) {
        auto it = std::find(matching.begin(), matching.end(),
                            std::make_pair(sq.left()(p), sq.top()(p)));
        mediators[static_cast<std::size_t>(it - matching.begin())].push_back(p);
    }

    const std::size_t smax = max_corner(sq) + 1;
    for (std::size_t s = 0; s <= smax; ++s) {
        // a cone from the size-s test object is a choice of matching pair
        // per element; mediating maps are counted factor by factor
        std::vector<std::size_t> choice(s, 0);
        bool done = (s > 0 && matching.empty());
        if (s == 0) {
            // the empty cone always has exactly one (empty) mediator
            continue;
        }
        while (!done) {
            std::size_t count = 1;
            for (std::size_t t = 0; t < s && count < 2; ++t)
                count *= mediators[choice[t]].size();
            if (count != 1)
                return false;
            // next cone
            std::size_t t = 0;
            while (t < s && ++choice[t] == matching.size()) {
                choice[t] = 0;
                ++t;
            }
            done = (t == s);
        }
    }
    return true;
}

bool universal_pushout_oracle(const CommSquare& sq, std::size_t corner_bound)
{
    if (max_corner(sq) > corner_bound)
        throw std::domain_error("universal_pushout_oracle: corner bound exceeded");

    const std::size_t na = sq.left().cod().size();
    const std::size_t nb = sq.top().cod().size();
    const std::size_t nc = sq.coapex().size();
    const std::size_t np = sq.apex().size();
    const std::size_t smax = max_corner(sq) + 1;

    for (std::size_t s = 0; s <= smax; ++s) {
        // enumerate cocones (u: A -> T, v: B -> T) with u.left = v.top
        std::vector<std::size_t> u(na, 0), v(nb, 0);
        if (s == 0 && (na > 0 || nb > 0))
            continue; // no maps into the empty set
        bool more_u = true;
        if (s == 0)
            more_u = true; // single empty u and v
        while (more_u) {
            bool more_v = true;
            std::fill(v.begin(), v.end(), std::size_t{0});
            while (more_v) {
                bool cocone = true;
                for (std::size_t p = 0; p < np && cocone; ++p)
                    cocone = (u[sq.left()(p)] == v[sq.top()(p)]);
                if (cocone) {
                    // count mediating h: C -> T with h.bottom = u, h.right = v
                    constexpr std::size_t unset = static_cast<std::size_t>(-1);
                    std::vector<std::size_t> forced(nc, unset);
                    bool consistent = true;
                    for (std::size_t a = 0; a < na && consistent; ++a) {
                        std::size_t& slot = forced[sq.bottom()(a)];
                        if (slot == unset)
                            slot = u[a];
                        else
                            consistent = (slot == u[a]);
                    }
                    for (std::size_t b = 0; b < nb && consistent; ++b) {
                        std::size_t& slot = forced[sq.right()(b)];
                        if (slot == unset)
                            slot = v[b];
                        else
                            consistent = (slot == v[b]);
                    }
                    std::size_t count = 0;
                    if (consistent) {
                        count = 1;
                        for (std::size_t c = 0; c < nc && count < 2; ++c)
                            if (forced[c] == unset)
                                count *= s; // free choice on uncovered elements
                    }
                    if (count != 1)
                        return false;
                }
                // next v
                if (s == 0)
                    break;
                std::size_t t = 0;
                while (t < nb && ++v[t] == s) {
                    v[t] = 0;
                    ++t;
                }
                more_v = (t < nb);
                if (nb == 0)
                    more_v = false;
            }
            // next u
            if (s == 0)
                break;
            std::size_t t = 0;
            while (t < na && ++u[t] == s) {
                u[t] = 0;
                ++t;
            }
            more_u = (t < na);
            if (na == 0)
                more_u = false;
        }
    }
    return true;
}

FinMap induced_to_pullback(const CommSquare& sq, const FinMap& u, const FinMap& v)
{
    if (u.dom() != v.dom())
        fail("induced_to_pullback: cone legs do not share a domain");
    if (u.cod() != sq.left().cod() || v.cod() != sq.top().cod())
        fail("induced_to_pullback: cone legs do not match the square");
    if (!is_pullback(sq))
        fail("induced_to_pullback: square is not a pullback");
    for (std::size_t t = 0; t < u.dom().size(); ++t) {
        if (sq.bottom()(u(t)) != sq.right()(v(t)))
            fail("induced_to_pullback: cone equation fails at element "
                 + u.dom().label(t));
    }
    // a pullback square indexes its apex faithfully by (left, top) pairs
    std::vector<std::vector<std::size_t>> at(sq.left().cod().size(),
        std::vector<std::size_t>(sq.top().cod().size(), static_cast<std::size_t>(-1)));
    for (std::size_t p = 0; p < sq.apex().size(); ++p)
        at[sq.left()(p)][sq.top()(p)] = p;
    std::vector<std::size_t> table(u.dom().size());
    for (std::size_t t = 0; t < table.size(); ++t)
        table[t] = at[u(t)][v(t)];
    return FinMap(u.dom(), sq.apex(), std::move(table));
}

FinMap induced_from_pushout(const CommSquare& sq, const FinMap& u, const FinMap& v)
{
    if (u.cod() != v.cod())
        fail("induced_from_pushout: cocone legs do not share a codomain");
    if (u.dom() != sq.left().cod() || v.dom() != sq.top().cod())
        fail("induced_from_pushout: cocone legs do not match the square");
    if (!is_pushout(sq))
        fail("induced_from_pushout: square is not a pushout");
    for (std::size_t p = 0; p < sq.apex().size(); ++p) {
        if (u(sq.left()(p)) != v(sq.top()(p)))
            fail("induced_from_pushout: cocone equation fails at element "
                 + sq.apex().label(p));
    }
    constexpr std::size_t unset = static_cast<std::size_t>(-1);
    std::vector<std::size_t> table(sq.coapex().size(), unset);
    auto assign = [&](std::size_t q, std::size_t value) {
        if (table[q] == unset) {
            table[q] = value;
            return true;
        }
        return table[q] == value;
    };
    for (std::size_t a = 0; a < u.dom().size(); ++a) {
        if (!assign(sq.bottom()(a), u(a)))
            fail("induced_from_pushout: cocone does not factor through the coapex");
    }
    for (std::size_t b = 0; b < v.dom().size(); ++b) {
        if (!assign(sq.right()(b), v(b)))
            fail("induced_from_pushout: cocone does not factor through the coapex");
    }
    // a pushout coapex is jointly covered by its two legs
    for (std::size_t q = 0; q < table.size(); ++q) {
        if (table[q] == unset)
            fail("induced_from_pushout: coapex element not covered by the legs");
    }
    return FinMap(sq.coapex(), u.cod(), std::move(table));
}

CommSquare BiexactCompletion::top_square(const FinMap& pi1, const FinMap& pi2) const
{
    return CommSquare(p2, p1, pi2, pi1);
}

CommSquare BiexactCompletion::bottom_square(const FinMap& pi1, const FinMap& pi2) const
{
    return CommSquare(pi2, pi1, d, c);
}

std::variant<BiexactCompletion, BiexactFailure>
complete_biexact(const FinMap& pi1, const FinMap& pi2)
{
    if (pi1.dom() != pi2.dom() || pi1.cod() != pi2.cod())
        fail("complete_biexact: maps are not parallel");

    PushoutResult po = pushout(pi1, pi2);
    CommSquare bottom(pi2, pi1, po.q1, po.q2);
    if (!is_pullback(bottom))
        return BiexactFailure{"bottom square (pushout of the span) is not a pullback"};

    PullbackResult pb = pullback(pi2, pi1);
    CommSquare top(pb.p2, pb.p1, pi2, pi1);
    if (!is_pushout(top))
        return BiexactFailure{"top square (pullback of the cospan) is not a pushout"};

    return BiexactCompletion{pb.apex, pb.p1, pb.p2, po.coapex, po.q1, po.q2};
}

} // namespace i2l
