#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "i2l/finset.hpp"

#include <random>

using namespace i2l;

namespace {

FinMap map_of(std::size_t dom, std::size_t cod, std::vector<std::size_t> table)
{
    return FinMap(FinSet(dom), FinSet(cod), std::move(table));
}

FinMap random_map(std::mt19937& rng, const FinSet& dom, const FinSet& cod)
{
    std::vector<std::size_t> table(dom.size());
    std::uniform_int_distribution<std::size_t> pick(0, cod.size() - 1);
    for (auto& v : table)
        v = pick(rng);
    return FinMap(dom, cod, std::move(table));
}

} // namespace

TEST_CASE("identity maps")
{
    CHECK(identity(FinSet(0)).table().empty());
    CHECK(identity(FinSet(3)).table() == std::vector<std::size_t>{0, 1, 2});

    std::mt19937 rng(7);
    for (int round = 0; round < 50; ++round) {
        FinSet a(1 + rng() % 6), b(1 + rng() % 6);
        FinMap f = random_map(rng, b, a);
        CHECK(compose(identity(a), f) == f);
        CHECK(compose(f, identity(b)) == f);
    }
}

TEST_CASE("compose is pointwise and associative")
{
    FinMap f = map_of(3, 2, {0, 0, 1});
    FinMap g = map_of(2, 2, {1, 0});
    CHECK(compose(g, f).table() == std::vector<std::size_t>{1, 1, 0});

    CHECK_THROWS_AS(compose(f, g), std::invalid_argument); // 2 != 3

    std::mt19937 rng(11);
    for (int round = 0; round < 100; ++round) {
        FinSet a(rng() % 5), b(1 + rng() % 5), c(1 + rng() % 5), d(1 + rng() % 5);
        FinMap f1 = random_map(rng, a, b);
        FinMap g1 = random_map(rng, b, c);
        FinMap h1 = random_map(rng, c, d);
        CHECK(compose(compose(h1, g1), f1) == compose(h1, compose(g1, f1)));
    }
}

TEST_CASE("mono and epi")
{
    CHECK(is_mono(map_of(3, 3, {0, 1, 2})));
    CHECK(is_epi(map_of(3, 3, {0, 1, 2})));

    FinMap collapse = map_of(2, 1, {0, 0});
    CHECK_FALSE(is_mono(collapse));
    CHECK(is_epi(collapse));

    FinMap empty_in = map_of(0, 2, {});
    CHECK(is_mono(empty_in));
    CHECK_FALSE(is_epi(empty_in));
}

TEST_CASE("joint monomorphy")
{
    SUBCASE("tuples of the minimal non-groupoid link") {
        // m, m.theta, m.phi produce rows (0,1,0), (1,0,0), (0,0,1)
        FinMap m = map_of(3, 2, {0, 1, 0});
        FinMap mtheta = map_of(3, 2, {1, 0, 0});
        FinMap mphi = map_of(3, 2, {0, 0, 1});
        std::vector<FinMap> family{m, mtheta, mphi};
        CHECK(is_jointly_mono(family));
    }

    SUBCASE("singleton family agrees with is_mono") {
        std::vector<FinMap> single{identity(FinSet(4))};
        CHECK(is_jointly_mono(single));

        std::mt19937 rng(3);
        for (int round = 0; round < 100; ++round) {
            FinMap f = random_map(rng, FinSet(1 + rng() % 5), FinSet(1 + rng() % 5));
            std::vector<FinMap> fam{f};
            CHECK(is_jointly_mono(fam) == is_mono(f));
        }
    }

    SUBCASE("two constant maps on a 2-element domain") {
        std::vector<FinMap> fam{map_of(2, 2, {0, 0}), map_of(2, 2, {1, 1})};
        CHECK_FALSE(is_jointly_mono(fam));
    }

    SUBCASE("rejects empty family and mismatched domains") {
        std::vector<FinMap> none;
        CHECK_THROWS_AS(is_jointly_mono(none), std::invalid_argument);
        std::vector<FinMap> mixed{map_of(2, 2, {0, 1}), map_of(3, 2, {0, 1, 0})};
        CHECK_THROWS_AS(is_jointly_mono(mixed), std::invalid_argument);
    }

    SUBCASE("tupling injectivity matches cancellation against generalized elements") {
        // the categorical reading on test objects of size <= 3
        std::mt19937 rng(17);
        for (int round = 0; round < 60; ++round) {
            FinSet dom(rng() % 4);
            std::size_t n = 1 + rng() % 3;
            std::vector<FinMap> fam;
            for (std::size_t k = 0; k < n; ++k)
                fam.push_back(random_map(rng, dom, FinSet(1 + rng() % 3)));

            bool cancels = true;
            for (std::size_t s = 0; s <= 3 && cancels; ++s) {
                std::vector<std::size_t> u(s, 0), v(s, 0);
                auto advance = [&](std::vector<std::size_t>& w) {
                    std::size_t t = 0;
                    while (t < s && ++w[t] == dom.size()) {
                        w[t] = 0;
                        ++t;
                    }
                    return t < s;
                };
                if (dom.size() == 0 && s > 0)
                    continue;
                bool more_u = true;
                while (more_u && cancels) {
                    std::fill(v.begin(), v.end(), std::size_t{0});
                    bool more_v = true;
                    while (more_v && cancels) {
                        bool agree = true;
                        for (const FinMap& f : fam)
                            for (std::size_t t = 0; t < s; ++t)
                                agree = agree && f(u[t]) == f(v[t]);
                        if (agree && u != v)
                            cancels = false;
                        more_v = s > 0 && advance(v);
                    }
                    more_u = s > 0 && advance(u);
                }
            }
            CHECK(is_jointly_mono(fam) == cancels);
        }
    }
}

TEST_CASE("pullback construction")
{
    SUBCASE("enumerates matching pairs in lexicographic order") {
        FinMap f = map_of(3, 2, {0, 0, 1});
        FinMap g = identity(FinSet(2));
        PullbackResult pb = pullback(f, g);
        CHECK(pb.apex.size() == 3);
        CHECK(pb.p1.table() == std::vector<std::size_t>{0, 1, 2});
        CHECK(pb.p2.table() == std::vector<std::size_t>{0, 0, 1});
        CHECK(is_pullback(pb.square(f, g)));
    }

    SUBCASE("over a point gives the cartesian product") {
        FinMap f = map_of(2, 1, {0, 0});
        FinMap g = map_of(3, 1, {0, 0, 0});
        PullbackResult pb = pullback(f, g);
        CHECK(pb.apex.size() == 6);
    }

    SUBCASE("along the identity is iso to the domain via p1") {
        std::mt19937 rng(5);
        for (int round = 0; round < 30; ++round) {
            FinSet a(rng() % 5), b(1 + rng() % 5);
            FinMap f = random_map(rng, a, b);
            PullbackResult pb = pullback(f, identity(b));
            CHECK(pb.apex.size() == a.size());
            CHECK(is_mono(pb.p1));
            CHECK(is_epi(pb.p1));
        }
    }

    CHECK_THROWS_AS(pullback(map_of(2, 2, {0, 1}), map_of(2, 3, {0, 1})),
                    std::invalid_argument);
}

TEST_CASE("pushout construction")
{
    SUBCASE("quotients the disjoint union by generated relations") {
        FinMap f = map_of(2, 3, {0, 1});
        FinMap g = map_of(2, 1, {0, 0});
        PushoutResult po = pushout(f, g);
        CHECK(po.coapex.size() == 2);
        // class {a0, a1, b0} then class {a2}
        CHECK(po.q1.table() == std::vector<std::size_t>{0, 0, 1});
        CHECK(po.q2.table() == std::vector<std::size_t>{0});
        CHECK(is_pushout(po.square(f, g)));
    }

    SUBCASE("of equal identities is iso to the codomain") {
        FinMap idm = identity(FinSet(4));
        PushoutResult po = pushout(idm, idm);
        CHECK(po.coapex.size() == 4);
        CHECK(is_mono(po.q1));
        CHECK(is_epi(po.q1));
        CHECK(po.q1 == po.q2);
    }

    SUBCASE("with empty domain is the disjoint union") {
        FinMap f = map_of(0, 2, {});
        FinMap g = map_of(0, 3, {});
        PushoutResult po = pushout(f, g);
        CHECK(po.coapex.size() == 5);
    }

    SUBCASE("quotient is stable under permuting the span domain") {
        std::mt19937 rng(23);
        for (int round = 0; round < 40; ++round) {
            FinSet a(1 + rng() % 5), b(1 + rng() % 5), c(1 + rng() % 5);
            FinMap f = random_map(rng, a, b);
            FinMap g = random_map(rng, a, c);
            std::vector<std::size_t> perm(a.size());
            std::iota(perm.begin(), perm.end(), std::size_t{0});
            std::shuffle(perm.begin(), perm.end(), rng);
            FinMap sigma(a, a, perm);
            PushoutResult po1 = pushout(f, g);
            PushoutResult po2 = pushout(compose(f, sigma), compose(g, sigma));
            CHECK(po1.coapex.size() == po2.coapex.size());
            CHECK(po1.q1 == po2.q1);
            CHECK(po1.q2 == po2.q2);
        }
    }

    CHECK_THROWS_AS(pushout(map_of(2, 2, {0, 1}), map_of(3, 2, {0, 1, 0})),
                    std::invalid_argument);
}

TEST_CASE("commutative square type rejects bad data")
{
    FinMap f = map_of(2, 1, {0, 0});
    CHECK_THROWS_AS(CommSquare(identity(FinSet(2)), identity(FinSet(2)),
                               map_of(2, 2, {0, 1}), map_of(2, 2, {1, 0})),
                    std::invalid_argument); // does not commute
    CHECK_THROWS_AS(CommSquare(f, identity(FinSet(3)), map_of(3, 1, {0, 0, 0}), identity(FinSet(1))),
                    std::invalid_argument); // apex mismatch
}

TEST_CASE("exactness predicates")
{
    SUBCASE("constructions satisfy their own predicates") {
        std::mt19937 rng(41);
        for (int round = 0; round < 60; ++round) {
            FinSet a(rng() % 4), b(rng() % 4), z(1 + rng() % 4);
            FinMap f = random_map(rng, a, z);
            FinMap g = random_map(rng, b, z);
            PullbackResult pb = pullback(f, g);
            CHECK(is_pullback(pb.square(f, g)));

            FinSet p(rng() % 4);
            FinMap l = random_map(rng, p, FinSet(1 + rng() % 4));
            FinMap t = random_map(rng, p, FinSet(1 + rng() % 4));
            PushoutResult po = pushout(l, t);
            CHECK(is_pushout(po.square(l, t)));
        }
    }

    SUBCASE("constant square over a point: pushout but not pullback") {
        FinSet two(2), one(1);
        FinMap collapse(two, one, {0, 0});
        FinMap point_id = identity(one);
        // apex {0,1}, every side constant; comparison into the pullback
        // (a 1x1 point) merges the two apex elements
        CommSquare sq(collapse, collapse, point_id, point_id);
        CHECK_FALSE(is_pullback(sq));
        CHECK(is_pushout(sq));
        CHECK_FALSE(is_exact(sq));
    }

    SUBCASE("identity square is exact") {
        FinMap idm = identity(FinSet(3));
        CommSquare sq(idm, idm, idm, idm);
        CHECK(is_exact(sq));
    }
}

namespace {

// Random commuting square with corners bounded by 4: pick a cospan, then
// an apex whose elements land on matching pairs.
CommSquare random_commuting_square(std::mt19937& rng)
{
    while (true) {
        FinSet a(rng() % 5), b(rng() % 5), z(1 + rng() % 4);
        FinMap bottom = random_map(rng, a, z);
        FinMap right = random_map(rng, b, z);
        std::vector<std::pair<std::size_t, std::size_t>> matching;
        for (std::size_t x = 0; x < a.size(); ++x)
            for (std::size_t y = 0; y < b.size(); ++y)
                if (bottom(x) == right(y))
                    matching.emplace_back(x, y);

        std::size_t mode = rng() % 3;
        if (mode == 0) {
            PullbackResult pb = pullback(bottom, right);
            if (pb.apex.size() > 4)
                continue;
            return pb.square(bottom, right);
        }
        if (mode == 1 && a.size() > 0) {
            FinSet p(rng() % 5);
            FinMap left = random_map(rng, p, a);
            FinMap top = random_map(rng, p, b.size() ? b : FinSet(1));
            if (b.size() == 0)
                continue;
            PushoutResult po = pushout(left, top);
            if (po.coapex.size() > 4)
                continue;
            return po.square(left, top);
        }
        std::size_t apex_size = matching.empty() ? 0 : rng() % 5;
        std::vector<std::size_t> lt, tt;
        for (std::size_t k = 0; k < apex_size; ++k) {
            const auto& [x, y] = matching[rng() % matching.size()];
            lt.push_back(x);
            tt.push_back(y);
        }
        FinSet p(apex_size);
        return CommSquare(FinMap(p, b, tt), FinMap(p, a, lt), bottom, right);
    }
}

} // namespace

TEST_CASE("universal-property oracles agree with the comparison predicates")
{
    std::mt19937 rng(97);
    for (int round = 0; round < 120; ++round) {
        CommSquare sq = random_commuting_square(rng);
        CHECK(is_pullback(sq) == universal_pullback_oracle(sq));
        CHECK(is_pushout(sq) == universal_pushout_oracle(sq));
    }

    SUBCASE("all corners empty is vacuously both") {
        FinMap nil(FinSet(0), FinSet(0), {});
        CommSquare sq(nil, nil, nil, nil);
        CHECK(universal_pullback_oracle(sq));
        CHECK(universal_pushout_oracle(sq));
        CHECK(is_exact(sq));
    }

    SUBCASE("corner bound is enforced") {
        FinMap big = identity(FinSet(9));
        CommSquare sq(big, big, big, big);
        CHECK_THROWS_AS(universal_pullback_oracle(sq, 8), std::domain_error);
        CHECK_THROWS_AS(universal_pushout_oracle(sq, 8), std::domain_error);
    }
}

TEST_CASE("induced map into a pullback")
{
    FinMap f = map_of(3, 2, {0, 0, 1});
    FinMap g = map_of(3, 2, {0, 1, 1});
    PullbackResult pb = pullback(f, g);
    CommSquare sq = pb.square(f, g);

    SUBCASE("pairing of the projections is the identity") {
        FinMap h = induced_to_pullback(sq, pb.p1, pb.p2);
        CHECK(h == identity(pb.apex));
    }

    SUBCASE("product pairing") {
        FinMap ca = map_of(2, 1, {0, 0});
        FinMap cb = map_of(2, 1, {0, 0});
        PullbackResult prod = pullback(ca, cb);
        FinMap u = map_of(5, 2, {0, 1, 0, 1, 1});
        FinMap v = map_of(5, 2, {1, 1, 0, 0, 1});
        FinMap h = induced_to_pullback(prod.square(ca, cb), u, v);
        CHECK(compose(prod.p1, h) == u);
        CHECK(compose(prod.p2, h) == v);
    }

    SUBCASE("cone equation violations are rejected") {
        FinMap u = map_of(1, 3, {0});
        FinMap v = map_of(1, 3, {1}); // f(0)=0 != g(1)=1
        CHECK_THROWS_AS(induced_to_pullback(sq, u, v), std::invalid_argument);
    }

    SUBCASE("non-pullback squares are rejected") {
        FinSet two(2), one(1);
        FinMap collapse(two, one, {0, 0});
        CommSquare bad(collapse, collapse, identity(one), identity(one));
        CHECK_THROWS_AS(induced_to_pullback(bad, collapse, collapse),
                        std::invalid_argument);
    }
}

TEST_CASE("induced map out of a pushout")
{
    FinMap f = map_of(2, 3, {0, 1});
    FinMap g = map_of(2, 2, {0, 0});
    PushoutResult po = pushout(f, g);
    CommSquare sq = po.square(f, g);

    FinMap h = induced_from_pushout(sq, po.q1, po.q2);
    CHECK(h == identity(po.coapex));

    // a genuine cocone factors uniquely
    FinSet target(2);
    FinMap u(FinSet(3), target, {1, 1, 0});
    FinMap v(FinSet(2), target, {1, 1});
    FinMap med = induced_from_pushout(sq, u, v);
    CHECK(compose(med, po.q1) == u);
    CHECK(compose(med, po.q2) == v);

    FinMap not_cocone(FinSet(3), target, {1, 0, 0});
    CHECK_THROWS_AS(induced_from_pushout(sq, not_cocone, v), std::invalid_argument);
}

TEST_CASE("bi-exact completion of a parallel pair")
{
    SUBCASE("identity pair completes with everything iso to the object") {
        FinMap idm = identity(FinSet(3));
        auto result = complete_biexact(idm, idm);
        auto* ok = std::get_if<BiexactCompletion>(&result);
        REQUIRE(ok != nullptr);
        CHECK(ok->c3.size() == 3);
        CHECK(ok->c0.size() == 3);
        CHECK(is_exact(ok->top_square(idm, idm)));
        CHECK(is_exact(ok->bottom_square(idm, idm)));
    }

    SUBCASE("two distinct constants from a point fail") {
        FinSet one(1), three(3);
        FinMap pi1(one, three, {0});
        FinMap pi2(one, three, {1});
        auto result = complete_biexact(pi1, pi2);
        auto* bad = std::get_if<BiexactFailure>(&result);
        REQUIRE(bad != nullptr);
        // the span pushout glues only a0 ~ b1, leaving five classes; the
        // cospan pullback is empty, so the top square cannot be a pushout
        PushoutResult po = pushout(pi1, pi2);
        CHECK(po.coapex.size() == 5);
        CHECK(bad->witness.find("top square") != std::string::npos);
    }

    CHECK_THROWS_AS(complete_biexact(map_of(2, 2, {0, 1}), map_of(2, 3, {0, 1})),
                    std::invalid_argument);
}
