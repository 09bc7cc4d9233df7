#pragma once

#include "i2l/families.hpp"
#include "i2l/groupoid.hpp"
#include "i2l/inv2link.hpp"

#include <json.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace i2l::io {

/// Malformed JSON; the message carries nlohmann's line/column diagnostics.
class DocParseError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Well-formed JSON violating the document schema; the message names the
/// offending field, set, or map.
class DocSemanticError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct MapDecl {
    std::string dom, cod;
    std::vector<std::size_t> table;
};

/// A parsed structure file. `structure` holds the kind-specific bindings,
/// already validated against the declared sets and maps. Serialization is
/// canonical: sorted keys, two-space indent, newline-terminated.
struct StructureDocument {
    std::string format_version;
    std::string kind; // link, groupoid, group, monoid, inverse_semigroup,
                      // cover, action, relation_action, magma
    std::map<std::string, FinSet> sets;
    std::map<std::string, MapDecl> maps;
    nlohmann::json structure;
};

StructureDocument parse_document(const std::string& text);
std::string serialize_document(const StructureDocument& doc);

// Raw table bundles for the algebra kinds: shape-valid by construction,
// laws deliberately unchecked so `validate` can report on them.
struct GroupData {
    FinSet carrier;
    Table2 op;
    std::size_t unit = 0;
    std::vector<std::size_t> inv;
};
struct MonoidData {
    FinSet carrier;
    Table2 op;
    std::size_t unit = 0;
};
struct InverseSemigroupData {
    FinSet carrier;
    Table2 op;
    std::vector<std::size_t> inv;
};
struct CoverData {
    FinSet base;
    std::vector<std::vector<std::size_t>> parts;
};
struct ActionData {
    GroupData group;
    FinSet points;
    Table2 xi;
};
struct RelationActionDoc {
    InverseSemigroupData semigroup;
    FinSet points;
    FinSet tags;
    std::vector<std::size_t> g;
    Table2 phi;
    std::vector<std::pair<std::size_t, std::size_t>> relation;
};
struct MagmaData {
    FinSet carrier;
    Table2 op;
    std::vector<std::size_t> inv;
};

Inv2Link link_of(const StructureDocument& doc);
StructureDocument document_of(const Inv2Link& link);

InternalGroupoid groupoid_of(const StructureDocument& doc);
StructureDocument document_of(const InternalGroupoid& g);

GroupData group_of(const StructureDocument& doc);
StructureDocument document_of_group(const GroupData& data);

MonoidData monoid_of(const StructureDocument& doc);
StructureDocument document_of_monoid(const MonoidData& data);

InverseSemigroupData inverse_semigroup_of(const StructureDocument& doc);
StructureDocument document_of_inverse_semigroup(const InverseSemigroupData& data);

CoverData cover_of(const StructureDocument& doc);
StructureDocument document_of_cover(const CoverData& data);

ActionData action_of(const StructureDocument& doc);
StructureDocument document_of_action(const ActionData& data);

RelationActionDoc relation_action_of(const StructureDocument& doc);
StructureDocument document_of_relation_action(const RelationActionDoc& data);

MagmaData magma_of(const StructureDocument& doc);
StructureDocument document_of_magma(const MagmaData& data);

} // namespace i2l::io
