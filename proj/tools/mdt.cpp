#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "mdt/enumerate.hpp"
#include "mdt/notation.hpp"
#include "mdt/rewrite.hpp"
#include "mdt/sets.hpp"
#include "mdt/taxonomy.hpp"

namespace {

std::string read_input(const std::string& path) {
    if (path == "-") {
        std::ostringstream os;
        os << std::cin.rdbuf();
        return os.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw CLI::ValidationError("input", "cannot open file: " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

std::string infer_syntax(const std::string& path, const std::string& flag) {
    if (flag != "auto") return flag;
    if (path.ends_with(".term")) return "term";
    if (path.ends_with(".json")) return "json";
    return "decl";
}

mdt::Molecule load_molecule(const std::string& path, const std::string& syntax) {
    std::string text = read_input(path);
    std::string s = infer_syntax(path, syntax);
    if (s == "term") return mdt::parse_term(text);
    if (s == "json") return mdt::from_json(text);
    return mdt::parse_decl(text);
}

mdt::PortRef parse_port(const std::string& s) {
    auto dot = s.rfind('.');
    if (dot == std::string::npos || dot + 1 >= s.size())
        throw CLI::ValidationError("port", "ports are written id.index: " + s);
    return {s.substr(0, dot), std::stoi(s.substr(dot + 1))};
}

struct MoleculeInput {
    std::string path;
    std::string syntax = "auto";

    void attach(CLI::App* cmd, const char* name = "input") {
        cmd->add_option(name, path, "molecule file or '-' for stdin")->required();
        // subcommands taking several molecules need distinct syntax flags
        std::string flag =
            std::string(name) == "input" ? "--syntax" : std::string("--syntax-") + name;
        cmd->add_option(flag, syntax, "input syntax")
            ->check(CLI::IsMember({"auto", "term", "decl", "json"}));
    }

    mdt::Molecule load() const { return load_molecule(path, syntax); }
};

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for the monad/dyad/triad diagrammatic calculus"};
    app.require_subcommand(1);

    int exit_code = 0;
    std::string out_text;

    // parse
    MoleculeInput parse_in;
    auto* cmd_parse = app.add_subcommand("parse", "parse a molecule and print its canonical decl form");
    parse_in.attach(cmd_parse);
    cmd_parse->callback([&] { out_text = mdt::print_canonical(parse_in.load()); });

    // validate
    MoleculeInput validate_in;
    bool want_medad = false;
    auto* cmd_validate = app.add_subcommand("validate", "check molecule invariants");
    validate_in.attach(cmd_validate);
    cmd_validate->add_flag("--medad", want_medad, "additionally require zero free ends");
    cmd_validate->callback([&] {
        mdt::Molecule m;
        try {
            m = validate_in.load();
        } catch (const mdt::ValidationError& e) {
            std::ostringstream os;
            for (const auto& v : e.violations()) os << mdt::to_string(v.kind) << ": " << v.detail << '\n';
            out_text = os.str();
            exit_code = 1;
            return;
        }
        auto violations = mdt::validate(m);
        std::ostringstream os;
        for (const auto& v : violations) os << mdt::to_string(v.kind) << ": " << v.detail << '\n';
        if (violations.empty() && want_medad && !mdt::is_medad(m)) {
            os << "not a medad: " << mdt::free_ends(m).size() << " free end(s)\n";
            exit_code = 1;
        } else if (!violations.empty()) {
            exit_code = 1;
        } else {
            os << "ok\n";
        }
        out_text = os.str();
    });

    // bond / erase / insert-triad
    MoleculeInput bond_in;
    std::string port_p, port_q;
    auto* cmd_bond = app.add_subcommand("bond", "bond two free ports");
    bond_in.attach(cmd_bond);
    cmd_bond->add_option("p", port_p, "first port (id.index)")->required();
    cmd_bond->add_option("q", port_q, "second port (id.index)")->required();
    cmd_bond->callback([&] {
        out_text = mdt::print_canonical(mdt::form_bond(bond_in.load(), parse_port(port_p), parse_port(port_q)));
    });

    MoleculeInput erase_in;
    std::string eport_p, eport_q;
    auto* cmd_erase = app.add_subcommand("erase", "erase the bond between two ports");
    erase_in.attach(cmd_erase);
    cmd_erase->add_option("p", eport_p, "first port (id.index)")->required();
    cmd_erase->add_option("q", eport_q, "second port (id.index)")->required();
    cmd_erase->callback([&] {
        out_text = mdt::print_canonical(
            mdt::erase_bond(erase_in.load(), mdt::Bond::make(parse_port(eport_p), parse_port(eport_q))));
    });

    MoleculeInput ins_in;
    std::string iport_p, iport_q;
    auto* cmd_ins = app.add_subcommand("insert-triad", "splice a triad into an existing bond");
    ins_in.attach(cmd_ins);
    cmd_ins->add_option("p", iport_p, "first port of the bond")->required();
    cmd_ins->add_option("q", iport_q, "second port of the bond")->required();
    cmd_ins->callback([&] {
        out_text = mdt::print_canonical(
            mdt::insert_triad(ins_in.load(), mdt::Bond::make(parse_port(iport_p), parse_port(iport_q))));
    });

    // join
    MoleculeInput join_a, join_b, join_c;
    auto* cmd_join = app.add_subcommand("join", "triad-join three one-free-end molecules");
    join_a.attach(cmd_join, "a");
    join_b.attach(cmd_join, "b");
    join_c.attach(cmd_join, "c");
    cmd_join->callback([&] {
        out_text = mdt::print_canonical(mdt::triad_join(join_a.load(), join_b.load(), join_c.load()));
    });

    // group
    MoleculeInput group_in;
    std::vector<std::string> group_members;
    auto* cmd_group = app.add_subcommand("group", "record a dashed-circle boundary");
    group_in.attach(cmd_group);
    cmd_group->add_option("--members", group_members, "element ids")->required()->delimiter(',');
    cmd_group->callback([&] {
        std::set<std::string> members(group_members.begin(), group_members.end());
        out_text = mdt::to_json(mdt::make_group(group_in.load(), members)) + "\n";
    });

    // normalize
    MoleculeInput norm_in;
    auto* cmd_norm = app.add_subcommand("normalize", "contract linear dyad chains");
    norm_in.attach(cmd_norm);
    cmd_norm->callback([&] {
        auto cf = mdt::normalize_lines(norm_in.load());
        std::ostringstream os;
        os << mdt::print_canonical(cf.skeleton);
        for (const auto& l : cf.chain_losses) os << "# loss " << l.dyad << " " << l.original_count << '\n';
        out_text = os.str();
    });

    // iso
    MoleculeInput iso_a, iso_b;
    auto* cmd_iso = app.add_subcommand("iso", "test two molecules for isomorphism");
    iso_a.attach(cmd_iso, "a");
    iso_b.attach(cmd_iso, "b");
    cmd_iso->callback([&] {
        if (mdt::isomorphic(iso_a.load(), iso_b.load())) {
            out_text = "isomorphic\n";
        } else {
            out_text = "not isomorphic\n";
            exit_code = 1;
        }
    });

    // enumerate
    mdt::EnumSpec espec;
    bool count_only = false;
    auto* cmd_enum = app.add_subcommand("enumerate", "list molecules up to isomorphism");
    cmd_enum->add_option("--monads", espec.monads, "monad count");
    cmd_enum->add_option("--dyads", espec.dyads, "dyad count");
    cmd_enum->add_option("--triads", espec.triads, "triad count");
    cmd_enum->add_flag("--medads", espec.medads_only, "only fully saturated molecules");
    cmd_enum->add_flag("--connected", espec.connected_only, "only connected molecules");
    cmd_enum->add_option("--cap", espec.cap, "port-count cap");
    cmd_enum->add_flag("--count", count_only, "print only the class count");
    cmd_enum->callback([&] {
        auto classes = mdt::enumerate_molecules(espec);
        std::ostringstream os;
        if (count_only) {
            os << classes.size() << '\n';
        } else {
            for (size_t i = 0; i < classes.size(); ++i) {
                if (i) os << "---\n";
                os << mdt::print_canonical(classes[i]);
            }
        }
        out_text = os.str();
    });

    // classify-dyad / classify-triad
    std::string cd_path;
    auto* cmd_cd = app.add_subcommand("classify-dyad", "classify a dyadic relation term");
    cmd_cd->add_option("input", cd_path, "relation-term file or '-'")->required();
    cmd_cd->callback([&] {
        auto t = mdt::parse_relation(read_input(cd_path));
        auto c = mdt::classify_dyad(*t);
        out_text = mdt::to_string(c) + " rank=" + std::to_string(mdt::degeneracy_rank(c)) + "\n";
    });

    std::string ct_path;
    auto* cmd_ct = app.add_subcommand("classify-triad", "classify a triadic relation term");
    cmd_ct->add_option("input", ct_path, "relation-term file or '-'")->required();
    cmd_ct->callback([&] {
        out_text = mdt::to_string(mdt::classify_triad(*mdt::parse_relation(read_input(ct_path)))) + "\n";
    });

    // encode
    std::string enc_scheme, enc_path, enc_syntax = "auto";
    auto* cmd_enc = app.add_subcommand("encode", "set-theoretic encoding");
    cmd_enc->add_option("--scheme", enc_scheme, "standard|mdt")
        ->required()
        ->check(CLI::IsMember({"standard", "mdt"}));
    cmd_enc->add_option("input", enc_path, "graph file (standard) or molecule (mdt)")->required();
    cmd_enc->add_option("--syntax", enc_syntax, "molecule syntax for --scheme mdt")
        ->check(CLI::IsMember({"auto", "term", "decl", "json"}));
    cmd_enc->callback([&] {
        if (enc_scheme == "standard")
            out_text = mdt::print_set(mdt::encode_standard(mdt::parse_graph(read_input(enc_path)))) + "\n";
        else
            out_text = mdt::print_set(mdt::encode_mdt(load_molecule(enc_path, enc_syntax))) + "\n";
    });

    // export-dot
    MoleculeInput dot_in;
    auto* cmd_dot = app.add_subcommand("export-dot", "emit deterministic DOT");
    dot_in.attach(cmd_dot);
    cmd_dot->callback([&] { out_text = mdt::to_dot(dot_in.load()); });

    // degrees
    std::string deg_path;
    auto* cmd_deg = app.add_subcommand("degrees", "Kempe degree/role report for a graph file");
    cmd_deg->add_option("input", deg_path, "graph file or '-'")->required();
    cmd_deg->callback(
        [&] { out_text = mdt::format_report(mdt::kempe_degree_report(mdt::parse_graph(read_input(deg_path)))); });

    // units
    std::string units_a, units_b;
    auto* cmd_units = app.add_subcommand("units", "possible unit identities between two sets");
    cmd_units->add_option("a", units_a, "set expression file or '-'")->required();
    cmd_units->add_option("b", units_b, "set expression file or '-'")->required();
    cmd_units->callback([&] {
        out_text = mdt::print_set(mdt::unit_identities(mdt::parse_set(read_input(units_a)),
                                                       mdt::parse_set(read_input(units_b)))) +
                   "\n";
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help
        app.exit(e);
        return 2;
    } catch (const mdt::ParseError& e) {
        std::cerr << "parse error at " << e.span().line << ":" << e.span().column << ": " << e.what()
                  << "\n";
        return 2;
    } catch (const mdt::ValidationError& e) {
        for (const auto& v : e.violations())
            std::cerr << mdt::to_string(v.kind) << ": " << v.detail << "\n";
        return 1;
    } catch (const mdt::DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    std::cout << out_text;
    return exit_code;
}
