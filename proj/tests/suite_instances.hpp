#pragma once

// The desk-scale instance zoo shared by the acceptance criteria: every
// generator family at the sizes the suite pins down.

#include "i2l/families.hpp"

#include <string>
#include <vector>

namespace i2l::suite {

struct NamedLink {
    std::string name;
    Inv2Link link;
};

// All partitions of {0..n-1} as restricted growth strings.
inline std::vector<std::vector<std::size_t>> partitions_of(std::size_t n)
{
    std::vector<std::vector<std::size_t>> out;
    if (n == 0) {
        out.push_back({});
        return out;
    }
    std::vector<std::size_t> ids(n, 0);
    auto rec = [&](auto&& self, std::size_t k, std::size_t maxid) -> void {
        if (k == n) {
            out.push_back(ids);
            return;
        }
        for (std::size_t c = 0; c <= maxid + 1; ++c) {
            ids[k] = c;
            self(self, k + 1, std::max(maxid, c));
        }
    };
    rec(rec, 1, 0); // the first element always opens class 0
    return out;
}

inline std::vector<NamedLink> round_trip_suite()
{
    std::vector<NamedLink> suite;
    auto add = [&](std::string name, Inv2Link link) {
        suite.push_back(NamedLink{std::move(name), std::move(link)});
    };

    for (std::size_t n = 0; n <= 3; ++n) {
        add("discrete(" + std::to_string(n) + ")", discrete(FinSet(n)));
        add("codiscrete(" + std::to_string(n) + ")", codiscrete(FinSet(n)));
    }

    for (std::size_t n = 0; n <= 4; ++n) {
        std::size_t index = 0;
        for (const auto& ids : partitions_of(n)) {
            add("eqrel(" + std::to_string(n) + "#" + std::to_string(index++) + ")",
                from_equivalence_relation(FinSet(n), relation_from_partition(ids)));
        }
    }

    add("cech{01,12}/3", cech(OpenCover::make(FinSet(3), {{0, 1}, {1, 2}})));
    add("cech{012,23,03}/4", cech(OpenCover::make(FinSet(4), {{0, 1, 2}, {2, 3}, {0, 3}})));
    add("cech{0123}/4", cech(OpenCover::make(FinSet(4), {{0, 1, 2, 3}})));
    add("cech{0,1}/2", cech(OpenCover::make(FinSet(2), {{0}, {1}})));
    add("cech{01,23,12}/4", cech(OpenCover::make(FinSet(4), {{0, 1}, {2, 3}, {1, 2}})));

    for (std::size_t n = 1; n <= 6; ++n)
        add("group(Z" + std::to_string(n) + ")", from_group(cyclic_group(n)));
    add("group(V4)", from_group(klein_four()));
    add("group(S3)", from_group(symmetric_group_3()));

    for (std::size_t n = 0; n <= 3; ++n) {
        Table2 xi(2, std::vector<std::size_t>(n));
        for (std::size_t x = 0; x < n; ++x)
            xi[0][x] = xi[1][x] = x;
        add("action(Z2 trivial on " + std::to_string(n) + ")",
            from_group_action(GroupAction::make(cyclic_group(2), FinSet(n), xi)));
    }
    for (std::size_t n = 2; n <= 3; ++n) {
        Table2 xi(2, std::vector<std::size_t>(n));
        for (std::size_t x = 0; x < n; ++x) {
            xi[0][x] = x;
            xi[1][x] = x < 2 ? 1 - x : x;
        }
        add("action(Z2 swap on " + std::to_string(n) + ")",
            from_group_action(GroupAction::make(cyclic_group(2), FinSet(n), xi)));
    }

    {
        FinMonoid m2 = chain_monoid(2);
        FinMonoid m3 = chain_monoid(3);
        FinMonoid z2m = monoid_from_group(cyclic_group(2));
        FinMonoid z3m = monoid_from_group(cyclic_group(3));
        add("hom(Z2 -> chain2)", from_group_monoid_hom(cyclic_group(2), m2, {1, 1}));
        add("hom(Z3 -> chain3)", from_group_monoid_hom(cyclic_group(3), m3, {2, 2, 2}));
        add("hom(Z2 -> Z2)", from_group_monoid_hom(cyclic_group(2), z2m, {0, 1}));
        add("hom(Z3 -> Z3)", from_group_monoid_hom(cyclic_group(3), z3m, {0, 1, 2}));
        add("hom(Z2 -> 1)", from_group_monoid_hom(cyclic_group(2), trivial_monoid(), {0, 0}));
        add("hom(Z3 -> chain2)", from_group_monoid_hom(cyclic_group(3), m2, {1, 1, 1}));
    }

    add("isg(chain2)", from_inverse_semigroup(chain_semilattice(2)));
    add("isg(chain3)", from_inverse_semigroup(chain_semilattice(3)));
    add("isg(I2)", from_inverse_semigroup(symmetric_inverse_monoid_2()));
    add("isg(B2)", from_inverse_semigroup(brandt_b2()));
    add("isg(Z4)", from_inverse_semigroup(inverse_semigroup_from_group(cyclic_group(4))));

    return suite;
}

} // namespace i2l::suite
