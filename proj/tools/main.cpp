// subindep: command-line front end.
//
// Exit codes: 0 = independent / isomorphic / success, 1 = not independent /
// not isomorphic / suite failure, 2 = error.
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "subindep/error.hpp"
#include "subindep/independence.hpp"
#include "subindep/io.hpp"
#include "subindep/morphisms.hpp"
#include "subindep/suite.hpp"
#include "subindep/zoo.hpp"

using namespace subindep;

namespace {

struct Globals {
    std::uint64_t seed = zoo::kDefaultSeed;
    std::size_t max_size = kDefaultCongruenceBound;
};

struct DecideArgs {
    std::string file;
    std::string a;
    std::string b;
    bool json = false;
};

void emit(const io::Report& report, bool json) {
    if (json) {
        std::cout << report.json.dump(2) << "\n";
    } else {
        std::cout << report.text;
    }
}

int run_gen(const std::string& family, const std::vector<long long>& params, const std::string& edges,
            const std::string& out, std::string name, const Globals& g) {
    std::vector<long long> p = params;
    if (family == "rigid_graph" && p.size() == 1) p.push_back(static_cast<long long>(g.seed));
    const auto edge_list = io::parse_edges(edges);
    const auto built = zoo::build(family, p, edge_list);
    if (name.empty()) {
        name = family;
        for (long long v : params) name += "_" + std::to_string(v);
    }
    if (out.empty()) {
        std::cout << io::serialize(built.structure, name);
    } else {
        io::save(out, built.structure, name);
        std::cout << "wrote " << out << ": " << zoo::to_string(built.tag) << ", size " << built.structure.size()
                  << "\n";
    }
    return 0;
}

int run_decide_sub(const DecideArgs& args, const std::string& homs, const std::string& mode_text) {
    const auto file = io::load(args.file);
    const FiniteStructure& x = file.structure;
    const SubUniverse a(x, io::parse_subset(args.a, x.size()));
    const SubUniverse b(x, io::parse_subset(args.b, x.size()));
    const HomClass hom_class = homs == "auto" ? HomClass::automorphisms_only : HomClass::all_endomorphisms;
    const HomMode mode = mode_text == "strong" ? HomMode::strong : HomMode::weak;
    const JointExtender context(x, a, b, mode);
    const auto verdict = decide_subalgebra_independence(x, a, b, hom_class, mode);
    emit(io::subalgebra_report(context, verdict), args.json);
    return verdict.independent ? 0 : 1;
}

int run_decide_cong(const DecideArgs& args, bool no_shortcut, const Globals& g) {
    const auto file = io::load(args.file);
    const FiniteStructure& x = file.structure;
    const SubUniverse a(x, io::parse_subset(args.a, x.size()));
    const SubUniverse b(x, io::parse_subset(args.b, x.size()));
    CongruenceOptions options;
    options.max_size = g.max_size;
    options.intersection_shortcut = !no_shortcut;
    const auto verdict = decide_congruence_independence(x, a, b, options);
    emit(io::congruence_report(a, b, join(x, a, b).sub, verdict), args.json);
    return verdict.independent ? 0 : 1;
}

int run_coproduct(const std::vector<std::string>& files, const std::string& category, const std::string& out) {
    if (files.size() != 2) throw InputError("coproduct needs exactly two -s files");
    const auto x = io::load(files[0]);
    const auto y = io::load(files[1]);
    const auto tag = zoo::parse_category(category);
    const auto cop = zoo::coproduct(tag, x.structure, y.structure);
    const std::string name = x.name + "+" + y.name;
    if (out.empty()) {
        std::cout << io::serialize(cop.structure, name);
    } else {
        io::save(out, cop.structure, name);
        std::cout << "wrote " << out << ": size " << cop.structure.size() << "\n";
    }
    std::vector<Element> dx(x.structure.size());
    std::vector<Element> dy(y.structure.size());
    for (Element i = 0; i < dx.size(); ++i) dx[i] = i;
    for (Element i = 0; i < dy.size(); ++i) dy[i] = i;
    std::cerr << "e_A: " << io::render_map(dx, cop.embed_left.map) << "\n";
    std::cerr << "e_B: " << io::render_map(dy, cop.embed_right.map) << "\n";
    return 0;
}

int run_iso(const std::vector<std::string>& files) {
    if (files.size() != 2) throw InputError("iso needs exactly two -s files");
    const auto x = io::load(files[0]);
    const auto y = io::load(files[1]);
    const auto h = find_isomorphism(x.structure, y.structure);
    if (!h) {
        std::cout << "not isomorphic\n";
        return 1;
    }
    std::vector<Element> dom(x.structure.size());
    for (Element i = 0; i < dom.size(); ++i) dom[i] = i;
    std::cout << "isomorphic: " << io::render_map(dom, h->map) << "\n";
    return 0;
}

int run_suite(const Globals& g) {
    suite::SuiteOptions options;
    options.seed = g.seed;
    int failed = 0;
    for (int id = 1; id <= suite::kCriterionCount; ++id) {
        const auto r = suite::run_criterion(id, options);
        std::printf("%d  %s  %-62s %7.2fs  %s\n", r.id, r.passed ? "PASS" : "FAIL", r.title.c_str(), r.seconds,
                    r.detail.c_str());
        std::fflush(stdout);
        failed += !r.passed;
    }
    std::printf("%d of %d criteria passed\n", suite::kCriterionCount - failed, suite::kCriterionCount);
    return failed == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Decide subalgebra and congruence independence in finite structures"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--seed", g.seed, "Seed for randomized searches")->capture_default_str();
    app.add_option("--max-size", g.max_size, "Size bound for congruence lattice enumeration")->capture_default_str();

    std::string family;
    std::vector<long long> params;
    std::string edges;
    std::string out;
    std::string name;
    auto* gen = app.add_subcommand("gen", "Write a structure from a built-in family");
    gen->add_option("family", family, "Family name")->required();
    gen->add_option("params", params, "Integer parameters");
    gen->add_option("--edges", edges, "Graph edges, e.g. 0-1,1-2");
    gen->add_option("-o,--output", out, "Output file (stdout if omitted)");
    gen->add_option("--name", name, "Structure name stored in the file");

    DecideArgs sub_args;
    std::string homs = "all";
    std::string mode = "weak";
    auto* decide_sub = app.add_subcommand("decide-sub", "Subalgebra independence");
    decide_sub->add_option("-s,--structure", sub_args.file, "Structure file")->required();
    decide_sub->add_option("--a", sub_args.a, "First subuniverse, e.g. 0,3")->required();
    decide_sub->add_option("--b", sub_args.b, "Second subuniverse")->required();
    decide_sub->add_option("--homs", homs, "all | auto")->check(CLI::IsMember({"all", "auto"}));
    decide_sub->add_option("--mode", mode, "weak | strong")->check(CLI::IsMember({"weak", "strong"}));
    decide_sub->add_flag("--json", sub_args.json, "Print the JSON report");

    DecideArgs cong_args;
    bool no_shortcut = false;
    auto* decide_cong = app.add_subcommand("decide-cong", "Congruence independence");
    decide_cong->add_option("-s,--structure", cong_args.file, "Structure file")->required();
    decide_cong->add_option("--a", cong_args.a, "First subuniverse")->required();
    decide_cong->add_option("--b", cong_args.b, "Second subuniverse")->required();
    decide_cong->add_flag("--no-shortcut", no_shortcut, "Check every congruence pair even when |A ∩ B| >= 2");
    decide_cong->add_flag("--json", cong_args.json, "Print the JSON report");

    std::vector<std::string> cop_files;
    std::string category;
    std::string cop_out;
    auto* coproduct = app.add_subcommand("coproduct", "Coproduct of two structures");
    coproduct->add_option("-s,--structure", cop_files, "Structure files (twice)")->required();
    coproduct->add_option("--category", category, "set, graph, abelian_group, boolean_algebra, vector_space:<p>")
        ->required();
    coproduct->add_option("-o,--output", cop_out, "Output file (stdout if omitted)");

    std::vector<std::string> iso_files;
    auto* iso = app.add_subcommand("iso", "Isomorphism search");
    iso->add_option("-s,--structure", iso_files, "Structure files (twice)")->required();

    auto* paper_suite = app.add_subcommand("paper-suite", "Run the acceptance battery");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*gen) return run_gen(family, params, edges, out, name, g);
        if (*decide_sub) return run_decide_sub(sub_args, homs, mode);
        if (*decide_cong) return run_decide_cong(cong_args, no_shortcut, g);
        if (*coproduct) return run_coproduct(cop_files, category, cop_out);
        if (*iso) return run_iso(iso_files);
        if (*paper_suite) return run_suite(g);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
