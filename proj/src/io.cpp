#include "i2l/io.hpp"

#include <algorithm>
#include <set>

namespace i2l::io {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& what)
{
    throw DocSemanticError(what);
}

const std::set<std::string>& known_kinds()
{
    static const std::set<std::string> kinds{
        "link", "groupoid", "group", "monoid", "inverse_semigroup",
        "cover", "action", "relation_action", "magma"};
    return kinds;
}

void expect_object(const json& j, const std::string& where)
{
    if (!j.is_object())
        bad(where + " must be an object");
}

void expect_keys(const json& j, const std::string& where,
                 std::initializer_list<const char*> required,
                 std::initializer_list<const char*> optional = {})
{
    expect_object(j, where);
    for (const char* key : required) {
        if (!j.contains(key))
            bad(where + " is missing field \"" + key + "\"");
    }
    for (const auto& [key, value] : j.items()) {
        bool known = std::any_of(required.begin(), required.end(),
                                 [&](const char* k) { return key == k; })
                  || std::any_of(optional.begin(), optional.end(),
                                 [&](const char* k) { return key == k; });
        if (!known)
            bad(where + " has unknown field \"" + key + "\"");
    }
}

std::size_t as_index(const json& j, const std::string& where)
{
    if (!j.is_number_unsigned())
        bad(where + " must be a non-negative integer");
    return j.get<std::size_t>();
}

std::vector<std::size_t> as_index_list(const json& j, const std::string& where)
{
    if (!j.is_array())
        bad(where + " must be an array");
    std::vector<std::size_t> out;
    out.reserve(j.size());
    for (const auto& v : j)
        out.push_back(as_index(v, where + " entry"));
    return out;
}

Table2 as_table2(const json& j, const std::string& where)
{
    if (!j.is_array())
        bad(where + " must be an array of rows");
    Table2 out;
    out.reserve(j.size());
    for (const auto& row : j)
        out.push_back(as_index_list(row, where + " row"));
    return out;
}

const FinSet& named_set(const StructureDocument& doc, const json& j, const std::string& where)
{
    if (!j.is_string())
        bad(where + " must name a set");
    auto it = doc.sets.find(j.get<std::string>());
    if (it == doc.sets.end())
        bad(where + " references unknown set \"" + j.get<std::string>() + "\"");
    return it->second;
}

struct NamedMap {
    std::string name;
    FinMap map;
};

NamedMap named_map(const StructureDocument& doc, const json& j, const std::string& where)
{
    if (!j.is_string())
        bad(where + " must name a map");
    std::string name = j.get<std::string>();
    auto it = doc.maps.find(name);
    if (it == doc.maps.end())
        bad(where + " references unknown map \"" + name + "\"");
    const MapDecl& decl = it->second;
    return NamedMap{name, FinMap(doc.sets.at(decl.dom), doc.sets.at(decl.cod), decl.table)};
}

void check_op_table(const json& j, std::size_t n, const std::string& where)
{
    Table2 t = as_table2(j, where);
    if (t.size() != n)
        bad(where + " must have one row per carrier element");
    for (const auto& row : t) {
        if (row.size() != n)
            bad(where + " rows must have one entry per carrier element");
        for (std::size_t v : row)
            if (v >= n)
                bad(where + " entry out of range");
    }
}

void check_unary_table(const json& j, std::size_t n, std::size_t cod,
                       const std::string& where)
{
    std::vector<std::size_t> t = as_index_list(j, where);
    if (t.size() != n)
        bad(where + " must have one entry per element");
    for (std::size_t v : t)
        if (v >= cod)
            bad(where + " entry out of range");
}

// Per-kind structure validation; conversion helpers below re-walk the same
// fields, so this only needs to reject, not to build.
void validate_structure(const StructureDocument& doc)
{
    const json& s = doc.structure;
    const std::string where = "structure";

    if (doc.kind == "link") {
        expect_keys(s, where, {"m", "phi", "theta"});
        NamedMap m = named_map(doc, s["m"], "structure.m");
        NamedMap theta = named_map(doc, s["theta"], "structure.theta");
        NamedMap phi = named_map(doc, s["phi"], "structure.phi");
        if (theta.map.dom() != m.map.dom() || theta.map.cod() != m.map.dom())
            bad("structure.theta must be an endomap of dom(m)");
        if (phi.map.dom() != m.map.dom() || phi.map.cod() != m.map.dom())
            bad("structure.phi must be an endomap of dom(m)");
    } else if (doc.kind == "groupoid") {
        expect_keys(s, where, {"c", "d", "e", "i", "m", "pi1", "pi2"});
        NamedMap d = named_map(doc, s["d"], "structure.d");
        NamedMap c = named_map(doc, s["c"], "structure.c");
        NamedMap e = named_map(doc, s["e"], "structure.e");
        NamedMap i = named_map(doc, s["i"], "structure.i");
        NamedMap pi1 = named_map(doc, s["pi1"], "structure.pi1");
        NamedMap pi2 = named_map(doc, s["pi2"], "structure.pi2");
        NamedMap m = named_map(doc, s["m"], "structure.m");
        if (c.map.dom() != d.map.dom() || c.map.cod() != d.map.cod())
            bad("structure.c must be parallel to d");
        if (e.map.dom() != d.map.cod() || e.map.cod() != d.map.dom())
            bad("structure.e must map C0 to C1");
        if (i.map.dom() != d.map.dom() || i.map.cod() != d.map.dom())
            bad("structure.i must be an endomap of C1");
        if (pi1.map.cod() != d.map.dom() || pi2.map.cod() != d.map.dom()
            || m.map.cod() != d.map.dom() || pi1.map.dom() != m.map.dom()
            || pi2.map.dom() != m.map.dom())
            bad("structure.pi1, pi2, m must be parallel C2 to C1");
    } else if (doc.kind == "group") {
        expect_keys(s, where, {"carrier", "inv", "op", "unit"});
        const FinSet& carrier = named_set(doc, s["carrier"], "structure.carrier");
        check_op_table(s["op"], carrier.size(), "structure.op");
        check_unary_table(s["inv"], carrier.size(), carrier.size(), "structure.inv");
        if (as_index(s["unit"], "structure.unit") >= carrier.size())
            bad("structure.unit out of range");
    } else if (doc.kind == "monoid") {
        expect_keys(s, where, {"carrier", "op", "unit"});
        const FinSet& carrier = named_set(doc, s["carrier"], "structure.carrier");
        check_op_table(s["op"], carrier.size(), "structure.op");
        if (as_index(s["unit"], "structure.unit") >= carrier.size())
            bad("structure.unit out of range");
    } else if (doc.kind == "inverse_semigroup") {
        expect_keys(s, where, {"carrier", "inv", "op"});
        const FinSet& carrier = named_set(doc, s["carrier"], "structure.carrier");
        check_op_table(s["op"], carrier.size(), "structure.op");
        check_unary_table(s["inv"], carrier.size(), carrier.size(), "structure.inv");
    } else if (doc.kind == "cover") {
        expect_keys(s, where, {"base", "parts"});
        const FinSet& base = named_set(doc, s["base"], "structure.base");
        if (!s["parts"].is_array())
            bad("structure.parts must be an array");
        for (const auto& part : s["parts"]) {
            auto elems = as_index_list(part, "structure.parts entry");
            if (!std::is_sorted(elems.begin(), elems.end())
                || std::adjacent_find(elems.begin(), elems.end()) != elems.end())
                bad("structure.parts entries must be sorted and distinct");
            for (std::size_t v : elems)
                if (v >= base.size())
                    bad("structure.parts element out of range");
        }
    } else if (doc.kind == "action") {
        expect_keys(s, where, {"group", "points", "xi"});
        expect_keys(s["group"], "structure.group", {"carrier", "inv", "op", "unit"});
        const FinSet& g = named_set(doc, s["group"]["carrier"], "structure.group.carrier");
        check_op_table(s["group"]["op"], g.size(), "structure.group.op");
        check_unary_table(s["group"]["inv"], g.size(), g.size(), "structure.group.inv");
        if (as_index(s["group"]["unit"], "structure.group.unit") >= g.size())
            bad("structure.group.unit out of range");
        const FinSet& points = named_set(doc, s["points"], "structure.points");
        Table2 xi = as_table2(s["xi"], "structure.xi");
        if (xi.size() != g.size())
            bad("structure.xi must have one row per group element");
        for (const auto& row : xi) {
            if (row.size() != points.size())
                bad("structure.xi rows must have one entry per point");
            for (std::size_t v : row)
                if (v >= points.size())
                    bad("structure.xi entry out of range");
        }
    } else if (doc.kind == "relation_action") {
        expect_keys(s, where, {"g", "phi", "points", "relation", "semigroup", "tags"});
        expect_keys(s["semigroup"], "structure.semigroup", {"carrier", "inv", "op"});
        const FinSet& sg = named_set(doc, s["semigroup"]["carrier"], "structure.semigroup.carrier");
        check_op_table(s["semigroup"]["op"], sg.size(), "structure.semigroup.op");
        check_unary_table(s["semigroup"]["inv"], sg.size(), sg.size(), "structure.semigroup.inv");
        const FinSet& points = named_set(doc, s["points"], "structure.points");
        const FinSet& tags = named_set(doc, s["tags"], "structure.tags");
        check_unary_table(s["g"], sg.size(), tags.size(), "structure.g");
        Table2 phi = as_table2(s["phi"], "structure.phi");
        if (phi.size() != tags.size())
            bad("structure.phi must have one row per tag");
        for (const auto& row : phi) {
            if (row.size() != points.size())
                bad("structure.phi rows must have one entry per point");
            for (std::size_t v : row)
                if (v >= points.size())
                    bad("structure.phi entry out of range");
        }
        if (!s["relation"].is_array())
            bad("structure.relation must be an array of pairs");
        for (const auto& pair : s["relation"]) {
            auto p = as_index_list(pair, "structure.relation pair");
            if (p.size() != 2)
                bad("structure.relation pairs must have two entries");
            if (p[0] >= sg.size() || p[1] >= points.size())
                bad("structure.relation pair out of range");
        }
    } else if (doc.kind == "magma") {
        expect_keys(s, where, {"carrier", "inv", "op"});
        const FinSet& carrier = named_set(doc, s["carrier"], "structure.carrier");
        check_op_table(s["op"], carrier.size(), "structure.op");
        check_unary_table(s["inv"], carrier.size(), carrier.size(), "structure.inv");
    }
}

} // namespace

StructureDocument parse_document(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw DocParseError(e.what());
    }

    expect_keys(j, "document", {"format_version", "kind", "maps", "sets", "structure"});
    StructureDocument doc;
    if (!j["format_version"].is_string())
        bad("format_version must be a string");
    doc.format_version = j["format_version"].get<std::string>();
    if (doc.format_version != "1")
        bad("unsupported format_version \"" + doc.format_version + "\"");
    if (!j["kind"].is_string())
        bad("kind must be a string");
    doc.kind = j["kind"].get<std::string>();
    if (!known_kinds().count(doc.kind))
        bad("unknown kind \"" + doc.kind + "\"");

    expect_object(j["sets"], "sets");
    for (const auto& [name, decl] : j["sets"].items()) {
        expect_keys(decl, "set \"" + name + "\"", {"size"}, {"labels"});
        std::size_t size = as_index(decl["size"], "set \"" + name + "\" size");
        if (decl.contains("labels")) {
            if (!decl["labels"].is_array())
                bad("set \"" + name + "\" labels must be an array");
            std::vector<std::string> labels;
            for (const auto& l : decl["labels"]) {
                if (!l.is_string())
                    bad("set \"" + name + "\" labels must be strings");
                labels.push_back(l.get<std::string>());
            }
            try {
                doc.sets.emplace(name, FinSet(size, std::move(labels)));
            } catch (const std::invalid_argument& e) {
                bad("set \"" + name + "\": " + e.what());
            }
        } else {
            doc.sets.emplace(name, FinSet(size));
        }
    }

    expect_object(j["maps"], "maps");
    for (const auto& [name, decl] : j["maps"].items()) {
        expect_keys(decl, "map \"" + name + "\"", {"cod", "dom", "table"});
        if (!decl["dom"].is_string() || !decl["cod"].is_string())
            bad("map \"" + name + "\" dom/cod must name sets");
        MapDecl md;
        md.dom = decl["dom"].get<std::string>();
        md.cod = decl["cod"].get<std::string>();
        if (!doc.sets.count(md.dom))
            bad("map \"" + name + "\" references unknown set \"" + md.dom + "\"");
        if (!doc.sets.count(md.cod))
            bad("map \"" + name + "\" references unknown set \"" + md.cod + "\"");
        md.table = as_index_list(decl["table"], "map \"" + name + "\" table");
        try {
            FinMap check(doc.sets.at(md.dom), doc.sets.at(md.cod), md.table);
        } catch (const std::invalid_argument& e) {
            bad("map \"" + name + "\": " + e.what());
        }
        doc.maps.emplace(name, std::move(md));
    }

    doc.structure = j["structure"];
    validate_structure(doc);
    return doc;
}

std::string serialize_document(const StructureDocument& doc)
{
    json j;
    j["format_version"] = doc.format_version;
    j["kind"] = doc.kind;
    j["sets"] = json::object();
    for (const auto& [name, set] : doc.sets) {
        json decl;
        decl["size"] = set.size();
        if (set.labels())
            decl["labels"] = *set.labels();
        j["sets"][name] = std::move(decl);
    }
    j["maps"] = json::object();
    for (const auto& [name, decl] : doc.maps) {
        j["maps"][name] = {{"cod", decl.cod}, {"dom", decl.dom}, {"table", decl.table}};
    }
    j["structure"] = doc.structure;
    return j.dump(2) + "\n";
}

// ---- kind converters -------------------------------------------------------

namespace {

void expect_kind(const StructureDocument& doc, const std::string& kind)
{
    if (doc.kind != kind)
        bad("expected a document of kind \"" + kind + "\", found \"" + doc.kind + "\"");
}

} // namespace

Inv2Link link_of(const StructureDocument& doc)
{
    expect_kind(doc, "link");
    return Inv2Link{named_map(doc, doc.structure["m"], "structure.m").map,
                    named_map(doc, doc.structure["theta"], "structure.theta").map,
                    named_map(doc, doc.structure["phi"], "structure.phi").map};
}

StructureDocument document_of(const Inv2Link& link)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "link";
    doc.sets.emplace("C1", link.c1());
    doc.sets.emplace("C2", link.c2());
    doc.maps.emplace("m", MapDecl{"C2", "C1", link.m.table()});
    doc.maps.emplace("theta", MapDecl{"C2", "C2", link.theta.table()});
    doc.maps.emplace("phi", MapDecl{"C2", "C2", link.phi.table()});
    doc.structure = {{"m", "m"}, {"phi", "phi"}, {"theta", "theta"}};
    return doc;
}

InternalGroupoid groupoid_of(const StructureDocument& doc)
{
    expect_kind(doc, "groupoid");
    const auto& s = doc.structure;
    return InternalGroupoid{named_map(doc, s["d"], "structure.d").map,
                            named_map(doc, s["c"], "structure.c").map,
                            named_map(doc, s["e"], "structure.e").map,
                            named_map(doc, s["i"], "structure.i").map,
                            named_map(doc, s["pi1"], "structure.pi1").map,
                            named_map(doc, s["pi2"], "structure.pi2").map,
                            named_map(doc, s["m"], "structure.m").map};
}

StructureDocument document_of(const InternalGroupoid& g)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "groupoid";
    doc.sets.emplace("C0", g.c0());
    doc.sets.emplace("C1", g.c1());
    doc.sets.emplace("C2", g.c2());
    doc.maps.emplace("d", MapDecl{"C1", "C0", g.d.table()});
    doc.maps.emplace("c", MapDecl{"C1", "C0", g.c.table()});
    doc.maps.emplace("e", MapDecl{"C0", "C1", g.e.table()});
    doc.maps.emplace("i", MapDecl{"C1", "C1", g.i.table()});
    doc.maps.emplace("pi1", MapDecl{"C2", "C1", g.pi1.table()});
    doc.maps.emplace("pi2", MapDecl{"C2", "C1", g.pi2.table()});
    doc.maps.emplace("m", MapDecl{"C2", "C1", g.m.table()});
    doc.structure = {{"c", "c"}, {"d", "d"}, {"e", "e"}, {"i", "i"},
                     {"m", "m"}, {"pi1", "pi1"}, {"pi2", "pi2"}};
    return doc;
}

GroupData group_of(const StructureDocument& doc)
{
    expect_kind(doc, "group");
    const auto& s = doc.structure;
    return GroupData{named_set(doc, s["carrier"], "structure.carrier"),
                     as_table2(s["op"], "structure.op"),
                     as_index(s["unit"], "structure.unit"),
                     as_index_list(s["inv"], "structure.inv")};
}

StructureDocument document_of_group(const GroupData& data)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "group";
    doc.sets.emplace("G", data.carrier);
    doc.structure = {{"carrier", "G"}, {"inv", data.inv}, {"op", data.op},
                     {"unit", data.unit}};
    return doc;
}

MonoidData monoid_of(const StructureDocument& doc)
{
    expect_kind(doc, "monoid");
    const auto& s = doc.structure;
    return MonoidData{named_set(doc, s["carrier"], "structure.carrier"),
                      as_table2(s["op"], "structure.op"),
                      as_index(s["unit"], "structure.unit")};
}

StructureDocument document_of_monoid(const MonoidData& data)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "monoid";
    doc.sets.emplace("M", data.carrier);
    doc.structure = {{"carrier", "M"}, {"op", data.op}, {"unit", data.unit}};
    return doc;
}

InverseSemigroupData inverse_semigroup_of(const StructureDocument& doc)
{
    expect_kind(doc, "inverse_semigroup");
    const auto& s = doc.structure;
    return InverseSemigroupData{named_set(doc, s["carrier"], "structure.carrier"),
                                as_table2(s["op"], "structure.op"),
                                as_index_list(s["inv"], "structure.inv")};
}

StructureDocument document_of_inverse_semigroup(const InverseSemigroupData& data)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "inverse_semigroup";
    doc.sets.emplace("S", data.carrier);
    doc.structure = {{"carrier", "S"}, {"inv", data.inv}, {"op", data.op}};
    return doc;
}

CoverData cover_of(const StructureDocument& doc)
{
    expect_kind(doc, "cover");
    const auto& s = doc.structure;
    CoverData data{named_set(doc, s["base"], "structure.base"), {}};
    for (const auto& part : s["parts"])
        data.parts.push_back(as_index_list(part, "structure.parts entry"));
    return data;
}

StructureDocument document_of_cover(const CoverData& data)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "cover";
    doc.sets.emplace("X", data.base);
    doc.structure = {{"base", "X"}, {"parts", data.parts}};
    return doc;
}

ActionData action_of(const StructureDocument& doc)
{
    expect_kind(doc, "action");
    const auto& s = doc.structure;
    GroupData group{named_set(doc, s["group"]["carrier"], "structure.group.carrier"),
                    as_table2(s["group"]["op"], "structure.group.op"),
                    as_index(s["group"]["unit"], "structure.group.unit"),
                    as_index_list(s["group"]["inv"], "structure.group.inv")};
    return ActionData{std::move(group),
                      named_set(doc, s["points"], "structure.points"),
                      as_table2(s["xi"], "structure.xi")};
}

StructureDocument document_of_action(const ActionData& data)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "action";
    doc.sets.emplace("G", data.group.carrier);
    doc.sets.emplace("X", data.points);
    doc.structure = {{"group", {{"carrier", "G"}, {"inv", data.group.inv},
                                {"op", data.group.op}, {"unit", data.group.unit}}},
                     {"points", "X"},
                     {"xi", data.xi}};
    return doc;
}

RelationActionDoc relation_action_of(const StructureDocument& doc)
{
    expect_kind(doc, "relation_action");
    const auto& s = doc.structure;
    InverseSemigroupData sg{named_set(doc, s["semigroup"]["carrier"], "structure.semigroup.carrier"),
                            as_table2(s["semigroup"]["op"], "structure.semigroup.op"),
                            as_index_list(s["semigroup"]["inv"], "structure.semigroup.inv")};
    RelationActionDoc data{std::move(sg),
                           named_set(doc, s["points"], "structure.points"),
                           named_set(doc, s["tags"], "structure.tags"),
                           as_index_list(s["g"], "structure.g"),
                           as_table2(s["phi"], "structure.phi"),
                           {}};
    for (const auto& pair : s["relation"]) {
        auto p = as_index_list(pair, "structure.relation pair");
        data.relation.emplace_back(p[0], p[1]);
    }
    return data;
}

StructureDocument document_of_relation_action(const RelationActionDoc& data)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "relation_action";
    doc.sets.emplace("S", data.semigroup.carrier);
    doc.sets.emplace("X", data.points);
    doc.sets.emplace("B", data.tags);
    json relation = json::array();
    for (const auto& [s, x] : data.relation)
        relation.push_back(json::array({s, x}));
    doc.structure = {{"g", data.g},
                     {"phi", data.phi},
                     {"points", "X"},
                     {"relation", std::move(relation)},
                     {"semigroup", {{"carrier", "S"}, {"inv", data.semigroup.inv},
                                    {"op", data.semigroup.op}}},
                     {"tags", "B"}};
    return doc;
}

MagmaData magma_of(const StructureDocument& doc)
{
    expect_kind(doc, "magma");
    const auto& s = doc.structure;
    return MagmaData{named_set(doc, s["carrier"], "structure.carrier"),
                     as_table2(s["op"], "structure.op"),
                     as_index_list(s["inv"], "structure.inv")};
}

StructureDocument document_of_magma(const MagmaData& data)
{
    StructureDocument doc;
    doc.format_version = "1";
    doc.kind = "magma";
    doc.sets.emplace("X", data.carrier);
    doc.structure = {{"carrier", "X"}, {"inv", data.inv}, {"op", data.op}};
    return doc;
}

} // namespace i2l::io
