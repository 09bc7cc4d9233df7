#include "i2l/cli.hpp"

#include "i2l/bridge.hpp"
#include "i2l/families.hpp"
#include "i2l/io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace i2l::cli {

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_invalid = 2;
constexpr int exit_usage = 64;
constexpr int exit_io = 66;

struct IoFailure {
    std::string message;
};

struct UsageFailure {
    std::string message;
};

std::string read_input(const std::string& path)
{
    if (path == "-") {
        std::ostringstream buffer;
        buffer << std::cin.rdbuf();
        return buffer.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoFailure{"cannot read " + path};
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_output(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path.empty()) {
        out << text;
        return;
    }
    std::ofstream file(path, std::ios::binary);
    if (!file)
        throw IoFailure{"cannot write " + path};
    file << text;
    if (!file)
        throw IoFailure{"cannot write " + path};
}

io::StructureDocument load_document(const std::string& path)
{
    return io::parse_document(read_input(path));
}

void print_report(const Report& report, bool quiet, std::ostream& out)
{
    if (!quiet)
        out << report.to_text();
}

std::vector<std::size_t> parse_index_list(const std::string& text)
{
    std::vector<std::size_t> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        std::size_t pos = 0;
        unsigned long value = 0;
        try {
            value = std::stoul(item, &pos);
        } catch (const std::exception&) {
            throw UsageFailure{"bad entry \"" + item + "\" in list \"" + text + "\""};
        }
        if (pos != item.size())
            throw UsageFailure{"bad entry \"" + item + "\" in list \"" + text + "\""};
        out.push_back(value);
    }
    return out;
}

// ---- validate ---------------------------------------------------------------

Report validate_document(const io::StructureDocument& doc)
{
    if (doc.kind == "link")
        return validate_link(io::link_of(doc));
    if (doc.kind == "groupoid")
        return validate_groupoid(io::groupoid_of(doc));
    if (doc.kind == "group") {
        io::GroupData g = io::group_of(doc);
        return validate_group_tables(g.carrier, g.op, g.unit, g.inv);
    }
    if (doc.kind == "monoid") {
        io::MonoidData m = io::monoid_of(doc);
        return validate_monoid_tables(m.carrier, m.op, m.unit);
    }
    if (doc.kind == "inverse_semigroup") {
        io::InverseSemigroupData s = io::inverse_semigroup_of(doc);
        return validate_inverse_semigroup_tables(s.carrier, s.op, s.inv);
    }
    if (doc.kind == "cover") {
        io::CoverData c = io::cover_of(doc);
        OpenCover::make(c.base, c.parts);
        Report report;
        report.add("cover_wellformed", true, "");
        return report;
    }
    if (doc.kind == "action") {
        io::ActionData a = io::action_of(doc);
        Report report = validate_group_tables(a.group.carrier, a.group.op,
                                              a.group.unit, a.group.inv);
        if (report.passed()) {
            FinGroup g = FinGroup::make(a.group.carrier, a.group.op, a.group.unit, a.group.inv);
            Report action_report = validate_action_tables(g, a.points, a.xi);
            for (const Verdict& v : action_report.verdicts())
                report.add(v.name, v.pass, v.witness);
        } else {
            report.add("unit_action", false, "not evaluated: group tables invalid");
            report.add("composition_action", false, "not evaluated: group tables invalid");
        }
        return report;
    }
    if (doc.kind == "relation_action") {
        io::RelationActionDoc r = io::relation_action_of(doc);
        Report report = validate_inverse_semigroup_tables(r.semigroup.carrier,
                                                          r.semigroup.op, r.semigroup.inv);
        if (report.passed()) {
            RelationActionData data{
                FinInverseSemigroup::make(r.semigroup.carrier, r.semigroup.op, r.semigroup.inv),
                r.points, r.tags, r.g, r.phi, r.relation};
            Report relation_report = validate_relation_action(data);
            for (const Verdict& v : relation_report.verdicts())
                report.add(v.name, v.pass, v.witness);
        } else {
            for (const char* name : {"phi_unit_law", "phi_composition_law",
                                     "closure_i", "closure_ii"})
                report.add(name, false, "not evaluated: semigroup tables invalid");
        }
        return report;
    }
    if (doc.kind == "magma") {
        io::MagmaData m = io::magma_of(doc);
        return validate_magma_tables(m.carrier, m.op, m.inv);
    }
    throw IoFailure{"unsupported kind " + doc.kind};
}

int cmd_validate(const std::string& file, bool quiet, std::ostream& out, std::ostream& err)
{
    io::StructureDocument doc;
    try {
        doc = load_document(file);
    } catch (const std::runtime_error& e) {
        err << e.what() << "\n";
        return exit_fail;
    }
    Report report = validate_document(doc);
    print_report(report, quiet, out);
    return report.passed() ? exit_pass : exit_fail;
}

// ---- classify ---------------------------------------------------------------

int cmd_classify(const std::string& file, bool quiet, std::ostream& out, std::ostream& err)
{
    io::StructureDocument doc;
    try {
        doc = load_document(file);
    } catch (const std::runtime_error& e) {
        err << e.what() << "\n";
        return exit_invalid;
    }
    if (doc.kind != "link") {
        err << "classify expects a link document, found kind \"" << doc.kind << "\"\n";
        return exit_invalid;
    }
    Inv2Link link = io::link_of(doc);
    Report link_report = validate_link(link);
    if (!link_report.passed()) {
        print_report(link_report, quiet, out);
        return exit_invalid;
    }
    Classification cls = classify(link);
    print_report(cls.report, quiet, out);
    return cls.is_groupoid() ? exit_pass : exit_fail;
}

// ---- convert ----------------------------------------------------------------

int cmd_convert(const std::string& file, const std::string& target,
                const std::string& out_path, bool quiet,
                std::ostream& out, std::ostream& err)
{
    io::StructureDocument doc;
    try {
        doc = load_document(file);
    } catch (const std::runtime_error& e) {
        err << e.what() << "\n";
        return exit_fail;
    }
    if (doc.kind != "link" && doc.kind != "groupoid") {
        err << "convert expects a link or groupoid document, found kind \""
            << doc.kind << "\"\n";
        return exit_fail;
    }

    io::StructureDocument result;
    if (doc.kind == target) {
        result = doc; // canonical passthrough
    } else if (target == "groupoid") {
        Inv2Link link = io::link_of(doc);
        Report link_report = validate_link(link);
        if (!link_report.passed()) {
            print_report(link_report, quiet, out);
            return exit_fail;
        }
        auto converted = to_groupoid(link);
        if (auto* cls = std::get_if<Classification>(&converted)) {
            print_report(cls->report, quiet, out);
            return exit_fail;
        }
        result = io::document_of(std::get<InternalGroupoid>(converted));
    } else {
        InternalGroupoid g = io::groupoid_of(doc);
        Report report = validate_groupoid(g);
        if (!report.passed()) {
            print_report(report, quiet, out);
            return exit_fail;
        }
        result = io::document_of(to_link(g));
    }
    write_output(out_path, io::serialize_document(result), out);
    return exit_pass;
}

// ---- gen --------------------------------------------------------------------

struct GenFlags {
    std::string family;
    std::size_t size = 0;
    bool has_size = false;
    std::string partition;
    std::size_t base = 0;
    bool has_base = false;
    std::vector<std::string> parts;
    std::size_t cyclic = 0;
    bool has_cyclic = false;
    bool klein4 = false;
    bool sym3 = false;
    std::string cayley;
    std::string file;
    std::size_t z2_swap = 0;
    bool has_z2_swap = false;
    std::string group_file;
    std::string monoid_file;
    std::string hom;
    bool demo = false;
    bool sim2 = false;
    std::size_t chain = 0;
    bool has_chain = false;
    bool brandt = false;
    bool use_xor = false;
    std::string out_path;
};

FinGroup group_from_flags(const GenFlags& flags)
{
    if (flags.has_cyclic)
        return cyclic_group(flags.cyclic);
    if (flags.klein4)
        return klein_four();
    if (flags.sym3)
        return symmetric_group_3();
    if (!flags.cayley.empty()) {
        io::GroupData data = io::group_of(load_document(flags.cayley));
        return FinGroup::make(data.carrier, data.op, data.unit, data.inv);
    }
    throw IoFailure{"gen group needs one of --cyclic, --klein4, --sym3, --cayley"};
}

Inv2Link generate_family(const GenFlags& flags)
{
    auto usage = [](const std::string& message) -> Inv2Link {
        throw UsageFailure{message};
    };

    if (flags.family == "discrete") {
        if (!flags.has_size)
            return usage("gen discrete needs --size");
        return discrete(FinSet(flags.size));
    }
    if (flags.family == "codiscrete") {
        if (!flags.has_size)
            return usage("gen codiscrete needs --size");
        return codiscrete(FinSet(flags.size));
    }
    if (flags.family == "equivalence") {
        if (!flags.has_size || flags.partition.empty())
            return usage("gen equivalence needs --size and --partition");
        auto ids = parse_index_list(flags.partition);
        if (ids.size() != flags.size)
            return usage("--partition must list a class per element");
        return from_equivalence_relation(FinSet(flags.size), relation_from_partition(ids));
    }
    if (flags.family == "cech") {
        if (!flags.has_base)
            return usage("gen cech needs --base and --part");
        std::vector<std::vector<std::size_t>> parts;
        for (const auto& text : flags.parts)
            parts.push_back(parse_index_list(text));
        return cech(OpenCover::make(FinSet(flags.base), std::move(parts)));
    }
    if (flags.family == "group")
        return from_group(group_from_flags(flags));
    if (flags.family == "action") {
        if (flags.has_z2_swap) {
            if (flags.z2_swap < 2)
                return usage("--z2-swap needs at least 2 points");
            Table2 xi(2, std::vector<std::size_t>(flags.z2_swap));
            for (std::size_t x = 0; x < flags.z2_swap; ++x) {
                xi[0][x] = x;
                xi[1][x] = x < 2 ? 1 - x : x;
            }
            return from_group_action(GroupAction::make(cyclic_group(2),
                                                       FinSet(flags.z2_swap), std::move(xi)));
        }
        if (!flags.file.empty()) {
            io::ActionData data = io::action_of(load_document(flags.file));
            FinGroup g = FinGroup::make(data.group.carrier, data.group.op,
                                        data.group.unit, data.group.inv);
            return from_group_action(GroupAction::make(std::move(g), data.points, data.xi));
        }
        return usage("gen action needs --file or --z2-swap");
    }
    if (flags.family == "group-monoid-hom") {
        if (flags.demo) {
            FinGroup g = cyclic_group(2);
            FinMonoid m = chain_monoid(2);
            return from_group_monoid_hom(g, m, {m.unit, m.unit});
        }
        if (flags.group_file.empty() || flags.monoid_file.empty() || flags.hom.empty())
            return usage("gen group-monoid-hom needs --group, --monoid and --hom (or --demo)");
        io::GroupData gd = io::group_of(load_document(flags.group_file));
        io::MonoidData md = io::monoid_of(load_document(flags.monoid_file));
        return from_group_monoid_hom(FinGroup::make(gd.carrier, gd.op, gd.unit, gd.inv),
                                     FinMonoid::make(md.carrier, md.op, md.unit),
                                     parse_index_list(flags.hom));
    }
    if (flags.family == "inverse-semigroup") {
        if (flags.sim2)
            return from_inverse_semigroup(symmetric_inverse_monoid_2());
        if (flags.has_chain)
            return from_inverse_semigroup(chain_semilattice(flags.chain));
        if (flags.brandt)
            return from_inverse_semigroup(brandt_b2());
        if (!flags.file.empty()) {
            io::InverseSemigroupData data = io::inverse_semigroup_of(load_document(flags.file));
            return from_inverse_semigroup(FinInverseSemigroup::make(data.carrier, data.op, data.inv));
        }
        return usage("gen inverse-semigroup needs --sim2, --chain, --brandt-b2 or --file");
    }
    if (flags.family == "minimal-non-groupoid")
        return minimal_non_groupoid();
    if (flags.family == "relation-action") {
        if (flags.demo) {
            // total relation over the group Z2 acting on the 2-chain monoid
            // through the constant-unit homomorphism
            FinInverseSemigroup s = inverse_semigroup_from_group(cyclic_group(2));
            FinMonoid m = chain_monoid(2);
            Table2 phi(2, std::vector<std::size_t>(2));
            for (std::size_t b = 0; b < 2; ++b)
                for (std::size_t x = 0; x < 2; ++x)
                    phi[b][x] = m.op[b][x];
            std::vector<std::pair<std::size_t, std::size_t>> relation;
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t x = 0; x < 2; ++x)
                    relation.emplace_back(a, x);
            return from_relation_action(RelationActionData{
                std::move(s), FinSet(2), m.carrier,
                {m.unit, m.unit}, std::move(phi), std::move(relation)});
        }
        if (!flags.file.empty()) {
            io::RelationActionDoc doc = io::relation_action_of(load_document(flags.file));
            return from_relation_action(RelationActionData{
                FinInverseSemigroup::make(doc.semigroup.carrier, doc.semigroup.op,
                                          doc.semigroup.inv),
                doc.points, doc.tags, doc.g, doc.phi, doc.relation});
        }
        return usage("gen relation-action needs --file or --demo");
    }
    if (flags.family == "magma") {
        if (flags.use_xor) {
            Table2 op(2, std::vector<std::size_t>(2));
            for (std::size_t a = 0; a < 2; ++a)
                for (std::size_t b = 0; b < 2; ++b)
                    op[a][b] = a ^ b;
            auto result = from_involutive_magma(FinSet(2), op, {0, 1});
            return std::get<Inv2Link>(result);
        }
        if (!flags.file.empty()) {
            io::MagmaData data = io::magma_of(load_document(flags.file));
            auto result = from_involutive_magma(data.carrier, data.op, data.inv);
            if (auto* witness = std::get_if<MagmaWitness>(&result)) {
                throw std::invalid_argument("magma does not satisfy \"" + witness->condition
                                            + "\" at (" + data.carrier.label(witness->x) + ","
                                            + data.carrier.label(witness->y) + ")");
            }
            return std::get<Inv2Link>(result);
        }
        return usage("gen magma needs --xor or --file");
    }
    return usage("unknown family \"" + flags.family + "\"");
}

int cmd_gen(const GenFlags& flags, std::ostream& out, std::ostream& err)
{
    try {
        Inv2Link link = generate_family(flags);
        write_output(flags.out_path, io::serialize_document(io::document_of(link)), out);
        return exit_pass;
    } catch (const UsageFailure& e) {
        err << e.message << "\n";
        return exit_usage;
    } catch (const std::runtime_error& e) {
        err << e.what() << "\n";
        return exit_fail;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return exit_fail;
    }
}

// ---- morphism ---------------------------------------------------------------

std::string table_text(const FinMap& f)
{
    std::string text;
    for (std::size_t k = 0; k < f.table().size(); ++k) {
        if (k)
            text += ' ';
        text += std::to_string(f(k));
    }
    return text;
}

int cmd_morphism(const std::string& src_path, const std::string& dst_path,
                 const std::string& map_path, bool quiet,
                 std::ostream& out, std::ostream& err)
{
    io::StructureDocument src_doc, dst_doc;
    std::vector<std::size_t> table;
    try {
        src_doc = load_document(src_path);
        dst_doc = load_document(dst_path);
        nlohmann::json j = nlohmann::json::parse(read_input(map_path));
        if (!j.is_array())
            throw std::runtime_error("map file must contain a JSON array of indices");
        for (const auto& v : j) {
            if (!v.is_number_unsigned())
                throw std::runtime_error("map file entries must be non-negative integers");
            table.push_back(v.get<std::size_t>());
        }
    } catch (const std::exception& e) {
        err << e.what() << "\n";
        return exit_invalid;
    }

    if (src_doc.kind != dst_doc.kind
        || (src_doc.kind != "link" && src_doc.kind != "groupoid")) {
        err << "morphism expects two link documents or two groupoid documents\n";
        return exit_invalid;
    }

    try {
        if (src_doc.kind == "link") {
            Inv2Link src = io::link_of(src_doc);
            Inv2Link dst = io::link_of(dst_doc);
            if (!validate_link(src).passed() || !validate_link(dst).passed()) {
                err << "morphism endpoints must be valid links\n";
                return exit_invalid;
            }
            FinMap f(src.c1(), dst.c1(), table);
            auto result = induce_fbar(src, dst, f);
            if (auto* fbar = std::get_if<FinMap>(&result)) {
                if (!quiet)
                    out << "fbar " << table_text(*fbar) << "\n";
                return exit_pass;
            }
            if (!quiet)
                out << "no morphism: " << std::get<FbarFailure>(result).detail << "\n";
            return exit_fail;
        }
        InternalGroupoid src = io::groupoid_of(src_doc);
        InternalGroupoid dst = io::groupoid_of(dst_doc);
        if (!validate_groupoid(src).passed() || !validate_groupoid(dst).passed()) {
            err << "morphism endpoints must be valid groupoids\n";
            return exit_invalid;
        }
        FinMap f1(src.c1(), dst.c1(), table);
        auto functor = induce_functor_images(src, dst, f1);
        if (functor) {
            if (!quiet) {
                out << "f0 " << table_text(functor->f0) << "\n";
                out << "f1 " << table_text(functor->f1) << "\n";
            }
            return exit_pass;
        }
        if (!quiet)
            out << "no functor is induced by the given arrow map\n";
        return exit_fail;
    } catch (const std::invalid_argument& e) {
        err << e.what() << "\n";
        return exit_invalid;
    }
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"involutive-2-links and internal groupoids over finite sets"};
    app.require_subcommand(1);

    std::string file, out_path, target, map_path;
    bool quiet = false;

    CLI::App* validate = app.add_subcommand("validate", "check the invariants of a structure file");
    validate->add_option("file", file)->required();
    validate->add_flag("--quiet", quiet, "suppress the report, keep the exit code");

    CLI::App* classify = app.add_subcommand("classify", "decide whether a link is an internal groupoid");
    classify->add_option("file", file)->required();
    classify->add_flag("--quiet", quiet);

    CLI::App* convert = app.add_subcommand("convert", "convert between link and groupoid presentations");
    convert->add_option("--to", target, "target kind: link or groupoid")
        ->required()
        ->check(CLI::IsMember({"link", "groupoid"}));
    convert->add_option("file", file)->required();
    convert->add_option("-o,--output", out_path, "write the result here instead of stdout");
    convert->add_flag("--quiet", quiet);

    GenFlags gen_flags;
    CLI::App* gen = app.add_subcommand("gen", "emit a structure file for a standard family");
    gen->add_option("family", gen_flags.family)->required();
    auto* size_opt = gen->add_option("--size", gen_flags.size);
    gen->add_option("--partition", gen_flags.partition, "class ids, e.g. 0,0,1");
    auto* base_opt = gen->add_option("--base", gen_flags.base);
    gen->add_option("--part", gen_flags.parts, "part of a cover, e.g. 0,1 (repeatable)");
    auto* cyclic_opt = gen->add_option("--cyclic", gen_flags.cyclic);
    gen->add_flag("--klein4", gen_flags.klein4);
    gen->add_flag("--sym3", gen_flags.sym3);
    gen->add_option("--cayley", gen_flags.cayley, "group document file");
    gen->add_option("--file", gen_flags.file, "structure document with the family inputs");
    auto* z2_opt = gen->add_option("--z2-swap", gen_flags.z2_swap);
    gen->add_option("--group", gen_flags.group_file, "group document file");
    gen->add_option("--monoid", gen_flags.monoid_file, "monoid document file");
    gen->add_option("--hom", gen_flags.hom, "homomorphism table, e.g. 1,1");
    gen->add_flag("--demo", gen_flags.demo);
    gen->add_flag("--sim2", gen_flags.sim2);
    auto* chain_opt = gen->add_option("--chain", gen_flags.chain);
    gen->add_flag("--brandt-b2", gen_flags.brandt);
    gen->add_flag("--xor", gen_flags.use_xor);
    gen->add_option("-o,--output", gen_flags.out_path);

    std::string dst_path;
    CLI::App* morphism = app.add_subcommand("morphism", "induce a morphism from an arrow-level map");
    morphism->add_option("src", file)->required();
    morphism->add_option("dst", dst_path)->required();
    morphism->add_option("--map", map_path, "JSON array with the arrow map")->required();
    morphism->add_flag("--quiet", quiet);

    std::vector<const char*> argv;
    argv.push_back("i2l");
    for (const auto& a : args)
        argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_pass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_pass;
    } catch (const CLI::ParseError& e) {
        err << e.what() << "\n";
        return exit_usage;
    }

    gen_flags.has_size = size_opt->count() > 0;
    gen_flags.has_base = base_opt->count() > 0;
    gen_flags.has_cyclic = cyclic_opt->count() > 0;
    gen_flags.has_z2_swap = z2_opt->count() > 0;
    gen_flags.has_chain = chain_opt->count() > 0;

    try {
        if (validate->parsed())
            return cmd_validate(file, quiet, out, err);
        if (classify->parsed())
            return cmd_classify(file, quiet, out, err);
        if (convert->parsed())
            return cmd_convert(file, target, out_path, quiet, out, err);
        if (gen->parsed())
            return cmd_gen(gen_flags, out, err);
        if (morphism->parsed())
            return cmd_morphism(file, dst_path, map_path, quiet, out, err);
    } catch (const IoFailure& e) {
        err << e.message << "\n";
        return exit_io;
    }
    err << "no command given\n";
    return exit_usage;
}

} // namespace i2l::cli
