#include "i2l/families.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace i2l {

namespace {

[[noreturn]] void reject(const std::string& what)
{
    throw std::invalid_argument(what);
}

void require_valid(const Report& report, const std::string& what)
{
    if (report.passed())
        return;
    for (const Verdict& v : report.verdicts()) {
        if (!v.pass)
            reject(what + ": " + v.name + " fails (" + v.witness + ")");
    }
}

void check_op_shape(const FinSet& carrier, const Table2& op, const std::string& what)
{
    const std::size_t n = carrier.size();
    if (op.size() != n)
        reject(what + ": operation table has wrong row count");
    for (const auto& row : op) {
        if (row.size() != n)
            reject(what + ": operation table has a wrong-length row");
        for (std::size_t v : row)
            if (v >= n)
                reject(what + ": operation table entry out of range");
    }
}

void check_unary_shape(const FinSet& carrier, const std::vector<std::size_t>& t,
                       const std::string& what)
{
    if (t.size() != carrier.size())
        reject(what + ": unary table has wrong length");
    for (std::size_t v : t)
        if (v >= carrier.size())
            reject(what + ": unary table entry out of range");
}

std::string triple_label(const FinSet& s, std::size_t a, std::size_t b, std::size_t c)
{
    return "(" + s.label(a) + "," + s.label(b) + "," + s.label(c) + ")";
}

bool check_associative(const FinSet& carrier, const Table2& op, std::string& witness)
{
    const std::size_t n = carrier.size();
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                if (op[op[a][b]][c] != op[a][op[b][c]]) {
                    witness = "associativity fails at " + triple_label(carrier, a, b, c);
                    return false;
                }
    return true;
}

} // namespace

Report validate_group_tables(const FinSet& carrier, const Table2& op,
                             std::size_t unit, const std::vector<std::size_t>& inv)
{
    check_op_shape(carrier, op, "group");
    check_unary_shape(carrier, inv, "group");
    if (carrier.size() == 0)
        reject("group: carrier must be nonempty");
    if (unit >= carrier.size())
        reject("group: unit out of range");

    Report report;
    std::string witness;
    report.add("associativity", check_associative(carrier, op, witness), witness);

    bool units = true;
    witness.clear();
    for (std::size_t a = 0; a < carrier.size() && units; ++a) {
        if (op[unit][a] != a || op[a][unit] != a) {
            units = false;
            witness = "unit law fails at " + carrier.label(a);
        }
    }
    report.add("unit_laws", units, witness);

    bool inverses = true;
    witness.clear();
    for (std::size_t a = 0; a < carrier.size() && inverses; ++a) {
        if (op[a][inv[a]] != unit || op[inv[a]][a] != unit) {
            inverses = false;
            witness = "inverse law fails at " + carrier.label(a);
        }
    }
    report.add("inverse_laws", inverses, witness);
    return report;
}

FinGroup FinGroup::make(FinSet carrier, Table2 op, std::size_t unit,
                        std::vector<std::size_t> inv)
{
    require_valid(validate_group_tables(carrier, op, unit, inv), "group");
    return FinGroup{std::move(carrier), std::move(op), unit, std::move(inv)};
}

Report validate_monoid_tables(const FinSet& carrier, const Table2& op, std::size_t unit)
{
    check_op_shape(carrier, op, "monoid");
    if (carrier.size() == 0)
        reject("monoid: carrier must be nonempty");
    if (unit >= carrier.size())
        reject("monoid: unit out of range");

    Report report;
    std::string witness;
    report.add("associativity", check_associative(carrier, op, witness), witness);

    bool units = true;
    witness.clear();
    for (std::size_t a = 0; a < carrier.size() && units; ++a) {
        if (op[unit][a] != a || op[a][unit] != a) {
            units = false;
            witness = "unit law fails at " + carrier.label(a);
        }
    }
    report.add("unit_laws", units, witness);
    return report;
}

FinMonoid FinMonoid::make(FinSet carrier, Table2 op, std::size_t unit)
{
    require_valid(validate_monoid_tables(carrier, op, unit), "monoid");
    return FinMonoid{std::move(carrier), std::move(op), unit};
}

Report validate_inverse_semigroup_tables(const FinSet& carrier, const Table2& op,
                                         const std::vector<std::size_t>& inv)
{
    check_op_shape(carrier, op, "inverse semigroup");
    check_unary_shape(carrier, inv, "inverse semigroup");

    Report report;
    std::string witness;
    report.add("associativity", check_associative(carrier, op, witness), witness);

    bool regular = true;
    witness.clear();
    for (std::size_t a = 0; a < carrier.size() && regular; ++a) {
        if (op[op[a][inv[a]]][a] != a || op[op[inv[a]][a]][inv[a]] != inv[a]) {
            regular = false;
            witness = "regular identity fails at " + carrier.label(a);
        }
    }
    report.add("regular_identities", regular, witness);

    bool commute = true;
    witness.clear();
    for (std::size_t a = 0; a < carrier.size() && commute; ++a) {
        if (op[a][a] != a)
            continue;
        for (std::size_t b = 0; b < carrier.size() && commute; ++b) {
            if (op[b][b] != b)
                continue;
            if (op[a][b] != op[b][a]) {
                commute = false;
                witness = "idempotents " + carrier.label(a) + " and "
                          + carrier.label(b) + " do not commute";
            }
        }
    }
    report.add("idempotents_commute", commute, witness);
    return report;
}

FinInverseSemigroup FinInverseSemigroup::make(FinSet carrier, Table2 op,
                                              std::vector<std::size_t> inv)
{
    require_valid(validate_inverse_semigroup_tables(carrier, op, inv), "inverse semigroup");
    return FinInverseSemigroup{std::move(carrier), std::move(op), std::move(inv)};
}

OpenCover OpenCover::make(FinSet base, std::vector<std::vector<std::size_t>> parts)
{
    for (const auto& part : parts) {
        if (!std::is_sorted(part.begin(), part.end()))
            reject("cover: parts must be sorted");
        if (std::adjacent_find(part.begin(), part.end()) != part.end())
            reject("cover: parts must not repeat elements");
        for (std::size_t v : part)
            if (v >= base.size())
                reject("cover: part element out of range");
    }
    return OpenCover{std::move(base), std::move(parts)};
}

Report validate_action_tables(const FinGroup& group, const FinSet& points, const Table2& xi)
{
    if (xi.size() != group.carrier.size())
        reject("action: table has wrong row count");
    for (const auto& row : xi) {
        if (row.size() != points.size())
            reject("action: table has a wrong-length row");
        for (std::size_t v : row)
            if (v >= points.size())
                reject("action: table entry out of range");
    }

    Report report;
    bool unit = true;
    std::string witness;
    for (std::size_t x = 0; x < points.size() && unit; ++x) {
        if (xi[group.unit][x] != x) {
            unit = false;
            witness = "unit does not act trivially on " + points.label(x);
        }
    }
    report.add("unit_action", unit, witness);

    bool comp = true;
    witness.clear();
    for (std::size_t a = 0; a < group.carrier.size() && comp; ++a)
        for (std::size_t b = 0; b < group.carrier.size() && comp; ++b)
            for (std::size_t x = 0; x < points.size() && comp; ++x)
                if (xi[a][xi[b][x]] != xi[group.op[a][b]][x]) {
                    comp = false;
                    witness = "composition fails at (" + group.carrier.label(a) + ","
                              + group.carrier.label(b) + "," + points.label(x) + ")";
                }
    report.add("composition_action", comp, witness);
    return report;
}

GroupAction GroupAction::make(FinGroup group, FinSet points, Table2 xi)
{
    require_valid(validate_action_tables(group, points, xi), "action");
    return GroupAction{std::move(group), std::move(points), std::move(xi)};
}

// ---- tuple carriers --------------------------------------------------------

namespace {

FinSet square_set(const FinSet& x)
{
    std::vector<std::string> labels;
    labels.reserve(x.size() * x.size());
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b)
            labels.push_back("(" + x.label(a) + "," + x.label(b) + ")");
    return FinSet(x.size() * x.size(), std::move(labels));
}

FinSet cube_set(const FinSet& x)
{
    std::vector<std::string> labels;
    labels.reserve(x.size() * x.size() * x.size());
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b)
            for (std::size_t c = 0; c < x.size(); ++c)
                labels.push_back(triple_label(x, a, b, c));
    const std::size_t count = labels.size();
    return FinSet(count, std::move(labels));
}

FinSet product_set(const FinSet& a, const FinSet& b)
{
    std::vector<std::string> labels;
    labels.reserve(a.size() * b.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < b.size(); ++y)
            labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
    return FinSet(a.size() * b.size(), std::move(labels));
}

FinSet product_set3(const FinSet& a, const FinSet& b, const FinSet& c)
{
    std::vector<std::string> labels;
    labels.reserve(a.size() * b.size() * c.size());
    for (std::size_t x = 0; x < a.size(); ++x)
        for (std::size_t y = 0; y < b.size(); ++y)
            for (std::size_t z = 0; z < c.size(); ++z)
                labels.push_back("(" + a.label(x) + "," + b.label(y) + "," + c.label(z) + ")");
    const std::size_t count = labels.size();
    return FinSet(count, std::move(labels));
}

} // namespace

Inv2Link discrete(const FinSet& x)
{
    FinMap id = identity(x);
    return Inv2Link{id, id, id};
}

Inv2Link codiscrete(const FinSet& x)
{
    const std::size_t n = x.size();
    FinSet c1 = square_set(x);
    FinSet c2 = cube_set(x);
    auto pair_idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
    auto triple_idx = [n](std::size_t a, std::size_t b, std::size_t c) {
        return (a * n + b) * n + c;
    };
    std::vector<std::size_t> m(c2.size()), th(c2.size()), ph(c2.size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                std::size_t t = triple_idx(a, b, c);
                m[t] = pair_idx(a, c);
                th[t] = triple_idx(b, a, c);
                ph[t] = triple_idx(a, c, b);
            }
    return Inv2Link{FinMap(c2, c1, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Report validate_equivalence(const FinSet& x,
                            const std::vector<std::pair<std::size_t, std::size_t>>& rel)
{
    std::set<std::pair<std::size_t, std::size_t>> r;
    for (const auto& [a, b] : rel) {
        if (a >= x.size() || b >= x.size())
            reject("equivalence relation: pair out of range");
        r.insert({a, b});
    }

    Report report;
    bool reflexive = true;
    std::string witness;
    for (std::size_t a = 0; a < x.size() && reflexive; ++a) {
        if (!r.count({a, a})) {
            reflexive = false;
            witness = "missing (" + x.label(a) + "," + x.label(a) + ")";
        }
    }
    report.add("reflexive", reflexive, witness);

    bool symmetric = true;
    witness.clear();
    for (const auto& [a, b] : r) {
        if (!r.count({b, a})) {
            symmetric = false;
            witness = "(" + x.label(a) + "," + x.label(b) + ") lacks its converse";
            break;
        }
    }
    report.add("symmetric", symmetric, witness);

    bool transitive = true;
    witness.clear();
    for (const auto& [a, b] : r) {
        for (const auto& [b2, c] : r) {
            if (b2 != b)
                continue;
            if (!r.count({a, c})) {
                transitive = false;
                witness = "missing composite (" + x.label(a) + "," + x.label(c) + ")";
                break;
            }
        }
        if (!transitive)
            break;
    }
    report.add("transitive", transitive, witness);
    return report;
}

Inv2Link from_equivalence_relation(const FinSet& x,
                                   const std::vector<std::pair<std::size_t, std::size_t>>& rel)
{
    require_valid(validate_equivalence(x, rel), "equivalence relation");

    std::set<std::pair<std::size_t, std::size_t>> r(rel.begin(), rel.end());
    std::vector<std::pair<std::size_t, std::size_t>> pairs(r.begin(), r.end());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> pair_idx;
    std::vector<std::string> labels1;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        pair_idx[pairs[k]] = k;
        labels1.push_back("(" + x.label(pairs[k].first) + "," + x.label(pairs[k].second) + ")");
    }
    FinSet c1(pairs.size(), std::move(labels1));

    std::vector<std::array<std::size_t, 3>> chains;
    std::map<std::array<std::size_t, 3>, std::size_t> chain_idx;
    std::vector<std::string> labels2;
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b) {
            if (!r.count({a, b}))
                continue;
            for (std::size_t c = 0; c < x.size(); ++c) {
                if (!r.count({b, c}))
                    continue;
                chain_idx[{a, b, c}] = chains.size();
                chains.push_back({a, b, c});
                labels2.push_back(triple_label(x, a, b, c));
            }
        }
    FinSet c2(chains.size(), std::move(labels2));

    std::vector<std::size_t> m(chains.size()), th(chains.size()), ph(chains.size());
    for (std::size_t t = 0; t < chains.size(); ++t) {
        auto [a, b, c] = chains[t];
        m[t] = pair_idx.at({a, c});
        th[t] = chain_idx.at({b, a, c});
        ph[t] = chain_idx.at({a, c, b});
    }
    return Inv2Link{FinMap(c2, c1, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Inv2Link cech(const OpenCover& cover)
{
    const std::size_t parts = cover.parts.size();
    std::vector<std::set<std::size_t>> u;
    u.reserve(parts);
    for (const auto& part : cover.parts)
        u.emplace_back(part.begin(), part.end());

    std::map<std::array<std::size_t, 3>, std::size_t> c1_idx; // (i, j, x)
    std::vector<std::string> labels1;
    for (std::size_t i = 0; i < parts; ++i)
        for (std::size_t j = 0; j < parts; ++j)
            for (std::size_t x : cover.parts[i]) {
                if (!u[j].count(x))
                    continue;
                c1_idx[{i, j, x}] = labels1.size();
                labels1.push_back("(" + std::to_string(i) + "," + std::to_string(j)
                                  + ":" + cover.base.label(x) + ")");
            }
    const std::size_t n1 = labels1.size();
    FinSet c1(n1, std::move(labels1));

    std::vector<std::array<std::size_t, 4>> elems; // (i, j, k, x)
    std::map<std::array<std::size_t, 4>, std::size_t> c2_idx;
    std::vector<std::string> labels2;
    for (std::size_t i = 0; i < parts; ++i)
        for (std::size_t j = 0; j < parts; ++j)
            for (std::size_t k = 0; k < parts; ++k)
                for (std::size_t x : cover.parts[i]) {
                    if (!u[j].count(x) || !u[k].count(x))
                        continue;
                    c2_idx[{i, j, k, x}] = elems.size();
                    elems.push_back({i, j, k, x});
                    labels2.push_back("(" + std::to_string(i) + "," + std::to_string(j)
                                      + "," + std::to_string(k) + ":" + cover.base.label(x) + ")");
                }
    FinSet c2(elems.size(), std::move(labels2));

    std::vector<std::size_t> m(elems.size()), th(elems.size()), ph(elems.size());
    for (std::size_t t = 0; t < elems.size(); ++t) {
        auto [i, j, k, x] = elems[t];
        m[t] = c1_idx.at({i, k, x});
        th[t] = c2_idx.at({j, i, k, x});
        ph[t] = c2_idx.at({i, k, j, x});
    }
    return Inv2Link{FinMap(c2, c1, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Inv2Link from_group(const FinGroup& g)
{
    const std::size_t n = g.carrier.size();
    FinSet c2 = square_set(g.carrier);
    auto pair_idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
    std::vector<std::size_t> m(c2.size()), th(c2.size()), ph(c2.size());
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t t = pair_idx(x, y);
            m[t] = g.op[x][y];
            th[t] = pair_idx(g.inv[x], g.op[x][y]);
            ph[t] = pair_idx(g.op[x][y], g.inv[y]);
        }
    return Inv2Link{FinMap(c2, g.carrier, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Inv2Link from_group_action(const GroupAction& action)
{
    const FinGroup& g = action.group;
    const std::size_t ng = g.carrier.size();
    const std::size_t nx = action.points.size();
    FinSet c1 = product_set(g.carrier, action.points);
    FinSet c2 = product_set3(g.carrier, g.carrier, action.points);
    auto p_idx = [nx](std::size_t a, std::size_t x) { return a * nx + x; };
    auto t_idx = [ng, nx](std::size_t a, std::size_t b, std::size_t x) {
        return (a * ng + b) * nx + x;
    };
    std::vector<std::size_t> m(c2.size()), th(c2.size()), ph(c2.size());
    for (std::size_t a = 0; a < ng; ++a)
        for (std::size_t b = 0; b < ng; ++b)
            for (std::size_t x = 0; x < nx; ++x) {
                std::size_t t = t_idx(a, b, x);
                m[t] = p_idx(g.op[a][b], x);
                th[t] = t_idx(g.inv[a], g.op[a][b], x);
                ph[t] = t_idx(g.op[a][b], g.inv[b], action.xi[b][x]);
            }
    return Inv2Link{FinMap(c2, c1, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Report validate_group_monoid_hom(const FinGroup& g, const FinMonoid& m,
                                 const std::vector<std::size_t>& h)
{
    if (h.size() != g.carrier.size())
        reject("homomorphism: table has wrong length");
    for (std::size_t v : h)
        if (v >= m.carrier.size())
            reject("homomorphism: table entry out of range");

    Report report;
    bool unit = h[g.unit] == m.unit;
    report.add("preserves_unit", unit,
               unit ? "" : "h(1) = " + m.carrier.label(h[g.unit]));

    bool mult = true;
    std::string witness;
    for (std::size_t a = 0; a < g.carrier.size() && mult; ++a)
        for (std::size_t b = 0; b < g.carrier.size() && mult; ++b)
            if (h[g.op[a][b]] != m.op[h[a]][h[b]]) {
                mult = false;
                witness = "h(ab) != h(a)h(b) at (" + g.carrier.label(a) + ","
                          + g.carrier.label(b) + ")";
            }
    report.add("preserves_multiplication", mult, witness);
    return report;
}

Inv2Link from_group_monoid_hom(const FinGroup& g, const FinMonoid& mon,
                               const std::vector<std::size_t>& h)
{
    require_valid(validate_group_monoid_hom(g, mon, h), "homomorphism");

    const std::size_t ng = g.carrier.size();
    const std::size_t nm = mon.carrier.size();
    FinSet c1 = product_set(g.carrier, mon.carrier);
    FinSet c2 = product_set3(g.carrier, g.carrier, mon.carrier);
    auto p_idx = [nm](std::size_t a, std::size_t c) { return a * nm + c; };
    auto t_idx = [ng, nm](std::size_t a, std::size_t b, std::size_t c) {
        return (a * ng + b) * nm + c;
    };
    std::vector<std::size_t> m(c2.size()), th(c2.size()), ph(c2.size());
    for (std::size_t a = 0; a < ng; ++a)
        for (std::size_t b = 0; b < ng; ++b)
            for (std::size_t c = 0; c < nm; ++c) {
                std::size_t t = t_idx(a, b, c);
                m[t] = p_idx(g.op[a][b], c);
                th[t] = t_idx(g.inv[a], g.op[a][b], c);
                ph[t] = t_idx(g.op[a][b], g.inv[b], mon.op[h[b]][c]);
            }
    return Inv2Link{FinMap(c2, c1, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Inv2Link from_inverse_semigroup(const FinInverseSemigroup& s)
{
    const std::size_t n = s.carrier.size();
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> idx;
    std::vector<std::string> labels;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            if (s.op[s.inv[x]][x] != s.op[y][s.inv[y]])
                continue;
            idx[{x, y}] = pairs.size();
            pairs.emplace_back(x, y);
            labels.push_back("(" + s.carrier.label(x) + "," + s.carrier.label(y) + ")");
        }
    FinSet c2(pairs.size(), std::move(labels));

    std::vector<std::size_t> m(pairs.size()), th(pairs.size()), ph(pairs.size());
    for (std::size_t t = 0; t < pairs.size(); ++t) {
        auto [x, y] = pairs[t];
        std::size_t xy = s.op[x][y];
        m[t] = xy;
        th[t] = idx.at({s.inv[x], xy});
        ph[t] = idx.at({xy, s.inv[y]});
    }
    return Inv2Link{FinMap(c2, s.carrier, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Inv2Link minimal_non_groupoid()
{
    FinSet c1(2, {"0", "1"});
    FinSet c2(3, {"1", "2", "3"});
    return Inv2Link{FinMap(c2, c1, {0, 1, 0}),
                    FinMap(c2, c2, {1, 0, 2}),
                    FinMap(c2, c2, {0, 2, 1})};
}

Report validate_relation_action(const RelationActionData& data)
{
    const std::size_t ns = data.s.carrier.size();
    const std::size_t nx = data.points.size();
    if (data.g.size() != ns)
        reject("relation action: g has wrong length");
    for (std::size_t v : data.g)
        if (v >= data.tags.size())
            reject("relation action: g entry out of range");
    if (data.phi.size() != data.tags.size())
        reject("relation action: phi has wrong row count");
    for (const auto& row : data.phi) {
        if (row.size() != nx)
            reject("relation action: phi has a wrong-length row");
        for (std::size_t v : row)
            if (v >= nx)
                reject("relation action: phi entry out of range");
    }
    for (const auto& [s, x] : data.relation)
        if (s >= ns || x >= nx)
            reject("relation action: relation pair out of range");

    const auto& op = data.s.op;
    const auto& inv = data.s.inv;
    auto act = [&](std::size_t s, std::size_t x) { return data.phi[data.g[s]][x]; };

    Report report;
    bool unit_law = true;
    std::string witness;
    for (std::size_t s = 0; s < ns && unit_law; ++s)
        for (std::size_t x = 0; x < nx && unit_law; ++x) {
            if (act(op[inv[s]][s], x) != x || act(op[s][inv[s]], x) != x) {
                unit_law = false;
                witness = "phi(g(s^-1 s), -) or phi(g(s s^-1), -) moves ("
                          + data.s.carrier.label(s) + "," + data.points.label(x) + ")";
            }
        }
    report.add("phi_unit_law", unit_law, witness);

    bool comp_law = true;
    witness.clear();
    for (std::size_t s2 = 0; s2 < ns && comp_law; ++s2)
        for (std::size_t s = 0; s < ns && comp_law; ++s)
            for (std::size_t x = 0; x < nx && comp_law; ++x)
                if (act(op[s2][s], x) != act(s2, act(s, x))) {
                    comp_law = false;
                    witness = "phi(g(s's), -) != phi(g(s'), phi(g(s), -)) at ("
                              + data.s.carrier.label(s2) + "," + data.s.carrier.label(s)
                              + "," + data.points.label(x) + ")";
                }
    report.add("phi_composition_law", comp_law, witness);

    std::set<std::pair<std::size_t, std::size_t>> r(data.relation.begin(), data.relation.end());
    bool closure1 = true;
    witness.clear();
    for (const auto& [s, x] : r) {
        if (!r.count({op[inv[s]][s], x}) || !r.count({op[s][inv[s]], act(s, x)})) {
            closure1 = false;
            witness = "condition (i) fails at (" + data.s.carrier.label(s) + ","
                      + data.points.label(x) + ")";
            break;
        }
    }
    report.add("closure_i", closure1, witness);

    bool closure2 = true;
    witness.clear();
    for (const auto& [s, x] : r) {
        for (std::size_t s2 = 0; s2 < ns; ++s2) {
            if (!r.count({s2, act(s, x)}))
                continue;
            if (!r.count({op[s2][s], x})) {
                closure2 = false;
                witness = "condition (ii) fails at (" + data.s.carrier.label(s2) + ","
                          + data.s.carrier.label(s) + "," + data.points.label(x) + ")";
                break;
            }
        }
        if (!closure2)
            break;
    }
    report.add("closure_ii", closure2, witness);
    return report;
}

Inv2Link from_relation_action(const RelationActionData& data)
{
    require_valid(validate_relation_action(data), "relation action");

    const auto& op = data.s.op;
    const auto& inv = data.s.inv;
    auto act = [&](std::size_t s, std::size_t x) { return data.phi[data.g[s]][x]; };

    std::set<std::pair<std::size_t, std::size_t>> r(data.relation.begin(), data.relation.end());
    std::vector<std::pair<std::size_t, std::size_t>> c1_elems(r.begin(), r.end());
    std::map<std::pair<std::size_t, std::size_t>, std::size_t> c1_idx;
    std::vector<std::string> labels1;
    for (std::size_t k = 0; k < c1_elems.size(); ++k) {
        c1_idx[c1_elems[k]] = k;
        labels1.push_back("(" + data.s.carrier.label(c1_elems[k].first) + ","
                          + data.points.label(c1_elems[k].second) + ")");
    }
    FinSet c1(c1_elems.size(), std::move(labels1));

    std::vector<std::array<std::size_t, 3>> c2_elems; // (s', s, x)
    std::map<std::array<std::size_t, 3>, std::size_t> c2_idx;
    std::vector<std::string> labels2;
    for (std::size_t s2 = 0; s2 < data.s.carrier.size(); ++s2)
        for (std::size_t s = 0; s < data.s.carrier.size(); ++s) {
            if (op[inv[s2]][s2] != op[s][inv[s]])
                continue;
            for (std::size_t x = 0; x < data.points.size(); ++x) {
                if (!r.count({s, x}) || !r.count({s2, act(s, x)}))
                    continue;
                c2_idx[{s2, s, x}] = c2_elems.size();
                c2_elems.push_back({s2, s, x});
                labels2.push_back("(" + data.s.carrier.label(s2) + ","
                                  + data.s.carrier.label(s) + ","
                                  + data.points.label(x) + ")");
            }
        }
    FinSet c2(c2_elems.size(), std::move(labels2));

    // conditions (i) and (ii) keep m inside R but do not, in general, keep
    // theta and phi inside C2; a relation that escapes is reported loudly
    auto c2_lookup = [&](std::size_t s2, std::size_t s, std::size_t x,
                         const char* which) -> std::size_t {
        auto it = c2_idx.find({s2, s, x});
        if (it == c2_idx.end())
            throw std::invalid_argument(
                std::string("relation action: ") + which + " leaves the composable triples at ("
                + data.s.carrier.label(s2) + "," + data.s.carrier.label(s) + ","
                + data.points.label(x) + "); the relation is not closed under inverses");
        return it->second;
    };

    std::vector<std::size_t> m(c2_elems.size()), th(c2_elems.size()), ph(c2_elems.size());
    for (std::size_t t = 0; t < c2_elems.size(); ++t) {
        auto [s2, s, x] = c2_elems[t];
        m[t] = c1_idx.at({op[s2][s], x});
        th[t] = c2_lookup(inv[s2], op[s2][s], x, "theta");
        ph[t] = c2_lookup(op[s2][s], inv[s], act(s, x), "phi");
    }
    return Inv2Link{FinMap(c2, c1, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

Report validate_magma_tables(const FinSet& x, const Table2& op,
                             const std::vector<std::size_t>& inv)
{
    check_op_shape(x, op, "magma");
    check_unary_shape(x, inv, "magma");

    Report report;
    bool involution = true;
    std::string witness;
    for (std::size_t a = 0; a < x.size() && involution; ++a) {
        if (inv[inv[a]] != a) {
            involution = false;
            witness = "i.i moves " + x.label(a);
        }
    }
    report.add("involution_hypothesis", involution, witness);

    bool antihom = true;
    witness.clear();
    for (std::size_t a = 0; a < x.size() && antihom; ++a)
        for (std::size_t b = 0; b < x.size() && antihom; ++b)
            if (inv[op[a][b]] != op[inv[b]][inv[a]]) {
                antihom = false;
                witness = "i(m(x,y)) != m(i(y),i(x)) at (" + x.label(a) + ","
                          + x.label(b) + ")";
            }
    report.add("antihomomorphism_hypothesis", antihom, witness);

    bool cancellation = true;
    witness.clear();
    for (std::size_t a = 0; a < x.size() && cancellation; ++a)
        for (std::size_t b = 0; b < x.size() && cancellation; ++b) {
            if (op[inv[a]][op[a][b]] != b) {
                cancellation = false;
                witness = "m(i(x), m(x,y)) != y at (" + x.label(a) + "," + x.label(b) + ")";
            } else if (op[op[a][b]][inv[b]] != a) {
                cancellation = false;
                witness = "m(m(x,y), i(y)) != x at (" + x.label(a) + "," + x.label(b) + ")";
            }
        }
    report.add("cancellation_conditions", cancellation, witness);
    return report;
}

std::variant<Inv2Link, MagmaWitness>
from_involutive_magma(const FinSet& x, const Table2& op, const std::vector<std::size_t>& inv)
{
    check_op_shape(x, op, "magma");
    check_unary_shape(x, inv, "magma");
    for (std::size_t a = 0; a < x.size(); ++a)
        if (inv[inv[a]] != a)
            reject("magma: i is not an involution (at " + x.label(a) + ")");
    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b)
            if (inv[op[a][b]] != op[inv[b]][inv[a]])
                reject("magma: i.m != m(i.pi2, i.pi1) at (" + x.label(a) + ","
                       + x.label(b) + ")");

    for (std::size_t a = 0; a < x.size(); ++a)
        for (std::size_t b = 0; b < x.size(); ++b) {
            if (op[inv[a]][op[a][b]] != b)
                return MagmaWitness{a, b, "m(i(x), m(x,y)) = y"};
            if (op[op[a][b]][inv[b]] != a)
                return MagmaWitness{a, b, "m(m(x,y), i(y)) = x"};
        }

    const std::size_t n = x.size();
    FinSet c2 = square_set(x);
    auto pair_idx = [n](std::size_t a, std::size_t b) { return a * n + b; };
    std::vector<std::size_t> m(c2.size()), th(c2.size()), ph(c2.size());
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            std::size_t t = pair_idx(a, b);
            m[t] = op[a][b];
            th[t] = pair_idx(inv[a], op[a][b]);
            ph[t] = pair_idx(op[a][b], inv[b]);
        }
    return Inv2Link{FinMap(c2, x, m), FinMap(c2, c2, th), FinMap(c2, c2, ph)};
}

// ---- stock algebras --------------------------------------------------------

FinGroup cyclic_group(std::size_t n)
{
    if (n == 0)
        reject("cyclic_group: order must be positive");
    Table2 op(n, std::vector<std::size_t>(n));
    std::vector<std::size_t> inv(n);
    for (std::size_t a = 0; a < n; ++a) {
        inv[a] = (n - a) % n;
        for (std::size_t b = 0; b < n; ++b)
            op[a][b] = (a + b) % n;
    }
    return FinGroup::make(FinSet(n), std::move(op), 0, std::move(inv));
}

FinGroup klein_four()
{
    Table2 op(4, std::vector<std::size_t>(4));
    std::vector<std::size_t> inv(4);
    for (std::size_t a = 0; a < 4; ++a) {
        inv[a] = a;
        for (std::size_t b = 0; b < 4; ++b)
            op[a][b] = a ^ b;
    }
    return FinGroup::make(FinSet(4), std::move(op), 0, std::move(inv));
}

FinGroup symmetric_group_3()
{
    // permutations of {0,1,2} in lexicographic order of their tables
    const std::array<std::array<std::size_t, 3>, 6> perms{{
        {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
    auto find = [&](const std::array<std::size_t, 3>& p) -> std::size_t {
        for (std::size_t k = 0; k < perms.size(); ++k)
            if (perms[k] == p)
                return k;
        reject("symmetric_group_3: internal");
    };
    Table2 op(6, std::vector<std::size_t>(6));
    std::vector<std::size_t> inv(6);
    for (std::size_t a = 0; a < 6; ++a) {
        std::array<std::size_t, 3> ia{};
        for (std::size_t k = 0; k < 3; ++k)
            ia[perms[a][k]] = k;
        inv[a] = find(ia);
        for (std::size_t b = 0; b < 6; ++b) {
            std::array<std::size_t, 3> ab{};
            for (std::size_t k = 0; k < 3; ++k)
                ab[k] = perms[a][perms[b][k]];
            op[a][b] = find(ab);
        }
    }
    return FinGroup::make(FinSet(6), std::move(op), 0, std::move(inv));
}

FinMonoid trivial_monoid()
{
    return FinMonoid::make(FinSet(1), {{0}}, 0);
}

FinMonoid chain_monoid(std::size_t n)
{
    if (n == 0)
        reject("chain_monoid: order must be positive");
    Table2 op(n, std::vector<std::size_t>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            op[a][b] = std::min(a, b);
    return FinMonoid::make(FinSet(n), std::move(op), n - 1);
}

FinMonoid monoid_from_group(const FinGroup& g)
{
    return FinMonoid::make(g.carrier, g.op, g.unit);
}

FinInverseSemigroup inverse_semigroup_from_group(const FinGroup& g)
{
    return FinInverseSemigroup::make(g.carrier, g.op, g.inv);
}

FinInverseSemigroup chain_semilattice(std::size_t n)
{
    if (n == 0)
        reject("chain_semilattice: order must be positive");
    Table2 op(n, std::vector<std::size_t>(n));
    std::vector<std::size_t> inv(n);
    for (std::size_t a = 0; a < n; ++a) {
        inv[a] = a;
        for (std::size_t b = 0; b < n; ++b)
            op[a][b] = std::min(a, b);
    }
    return FinInverseSemigroup::make(FinSet(n), std::move(op), std::move(inv));
}

FinInverseSemigroup symmetric_inverse_monoid_2()
{
    // partial injections on {0,1}; -1 marks "undefined"
    std::vector<std::array<int, 2>> elems;
    for (int a = -1; a <= 1; ++a)
        for (int b = -1; b <= 1; ++b) {
            if (a >= 0 && a == b)
                continue;
            elems.push_back({a, b});
        }
    auto find = [&](const std::array<int, 2>& p) -> std::size_t {
        for (std::size_t k = 0; k < elems.size(); ++k)
            if (elems[k] == p)
                return k;
        reject("symmetric_inverse_monoid_2: internal");
    };
    const std::size_t n = elems.size();
    Table2 op(n, std::vector<std::size_t>(n));
    std::vector<std::size_t> inv(n);
    std::vector<std::string> labels;
    for (std::size_t f = 0; f < n; ++f) {
        std::array<int, 2> rev{-1, -1};
        for (int x = 0; x < 2; ++x)
            if (elems[f][x] >= 0)
                rev[elems[f][x]] = x;
        inv[f] = find(rev);
        std::string label = "[";
        for (int x = 0; x < 2; ++x)
            label += elems[f][x] < 0 ? '-' : static_cast<char>('0' + elems[f][x]);
        labels.push_back(label + "]");
        for (std::size_t g = 0; g < n; ++g) {
            std::array<int, 2> fg{-1, -1};
            for (int x = 0; x < 2; ++x) {
                int y = elems[g][x];
                if (y >= 0)
                    fg[x] = elems[f][y];
            }
            op[f][g] = find(fg);
        }
    }
    return FinInverseSemigroup::make(FinSet(n, std::move(labels)), std::move(op), std::move(inv));
}

FinInverseSemigroup brandt_b2()
{
    // 0 and the 2x2 matrix units: e(i,j) . e(k,l) = e(i,l) when j == k
    FinSet carrier(5, {"0", "e11", "e12", "e21", "e22"});
    auto unit_of = [](std::size_t k) -> std::pair<std::size_t, std::size_t> {
        // 1 -> (0,0), 2 -> (0,1), 3 -> (1,0), 4 -> (1,1)
        return {(k - 1) / 2, (k - 1) % 2};
    };
    auto of_unit = [](std::size_t i, std::size_t j) { return 1 + 2 * i + j; };
    Table2 op(5, std::vector<std::size_t>(5, 0));
    std::vector<std::size_t> inv(5);
    inv[0] = 0;
    for (std::size_t a = 1; a < 5; ++a) {
        auto [i, j] = unit_of(a);
        inv[a] = of_unit(j, i);
        for (std::size_t b = 1; b < 5; ++b) {
            auto [k, l] = unit_of(b);
            op[a][b] = (j == k) ? of_unit(i, l) : 0;
        }
    }
    return FinInverseSemigroup::make(std::move(carrier), std::move(op), std::move(inv));
}

std::vector<std::pair<std::size_t, std::size_t>>
relation_from_partition(const std::vector<std::size_t>& class_ids)
{
    std::vector<std::pair<std::size_t, std::size_t>> rel;
    for (std::size_t a = 0; a < class_ids.size(); ++a)
        for (std::size_t b = 0; b < class_ids.size(); ++b)
            if (class_ids[a] == class_ids[b])
                rel.emplace_back(a, b);
    return rel;
}

} // namespace i2l
