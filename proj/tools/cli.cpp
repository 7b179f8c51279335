#include "cli.hpp"

#include <CLI11.hpp>

#include <ostream>
#include <sstream>

#include "gsds/equivalence.hpp"
#include "gsds/gs_construct.hpp"
#include "gsds/residue_cosets.hpp"
#include "gsds/sds_core.hpp"
#include "gsds/sds_io.hpp"
#include "gsds/sds_search.hpp"

namespace gsds::cli {

namespace {

constexpr std::uint64_t kDefaultSeed = 764;
constexpr std::uint64_t kDefaultExhaustiveBudget = 1'000'000'000;

struct Globals {
    std::uint64_t seed = kDefaultSeed;
    bool seed_given = false;
    unsigned workers = 1;
    bool quiet = false;
};

template <class Range>
void print_list(std::ostream& os, const Range& r) {
    bool first = true;
    for (const auto& x : r) {
        os << (first ? "" : " ") << x;
        first = false;
    }
}

SdsFamily load_family(const std::string& path) { return to_family(parse_sds(read_file(path))); }

int cmd_cosets(std::int64_t n, std::int64_t g, std::ostream& out) {
    const CosetTable t = coset_table_build(subgroup_generate(PrimeModulus(n), g));
    out << "n " << n << "  H = <" << g << ">  |H| " << t.coset_size() << "  cosets " << t.size() << '\n';
    for (std::size_t i = 0; i < t.size(); ++i) {
        const Residue rep = t.representatives()[i / 2];
        out << "alpha_" << i << " = " << (i % 2 ? "-" : "") << rep << "H:";
        for (Residue x : t.coset(i)) out << ' ' << x;
        out << '\n';
    }
    return kOk;
}

int cmd_verify(const std::string& path, std::ostream& out, std::ostream& err) {
    const SdsFamily f = load_family(path);
    VerificationReport rep;
    try {
        rep = verify_sds(f);
    } catch (const std::invalid_argument& e) {
        err << "invalid parameters: " << e.what() << '\n';
        return kUsage;
    }
    const auto sq = square_decomposition_check(f);
    out << "n " << f.modulus().value() << '\n';
    out << "cardinalities ";
    print_list(out, rep.cardinalities);
    out << "\nlambda " << rep.lambda << '\n';
    out << "square terms ";
    print_list(out, rep.square_terms);
    out << "  sum of squares " << sq.sum_of_squares << (sq.holds ? " = 4n" : " != 4n") << '\n';
    if (!rep.is_sds) {
        out << "failing r (" << rep.failures.size() << "): ";
        print_list(out, rep.failures);
        out << '\n';
    }
    out << "SDS " << (rep.is_sds ? "yes" : "no") << '\n';
    return rep.is_sds ? kOk : kFailed;
}

int cmd_build(const std::string& path, const std::string& output, const Globals& g, std::ostream& out,
              std::ostream& err) {
    const SdsFamily f = load_family(path);
    const auto blocks = family_circulants(f);
    if (!gram_identity_check(blocks, g.workers)) {
        err << "gram identity fails: sum A_k A_k^T != 4n I; nothing written\n";
        return kFailed;
    }
    const PmOneMatrix h = gs_assemble(blocks[0], blocks[1], blocks[2], blocks[3]);
    if (!is_hadamard(h, g.workers)) {
        err << "assembled matrix is not Hadamard; nothing written\n";
        return kFailed;
    }
    const std::string text = emit_matrix(h);
    if (output.empty() || output == "-") {
        out << text;
    } else {
        write_file(output, text);
        if (!g.quiet) err << "wrote Hadamard matrix of order " << h.order() << " to " << output << '\n';
    }
    return kOk;
}

int cmd_check_hadamard(const std::string& path, const Globals& g, std::ostream& out) {
    const PmOneMatrix m = parse_matrix(read_file(path));
    const bool ok = is_hadamard(m, g.workers);
    out << "order " << m.order() << " Hadamard " << (ok ? "yes" : "no") << '\n';
    return ok ? kOk : kFailed;
}

int cmd_equiv(const std::string& p1, const std::string& p2, const Globals& g, std::ostream& out) {
    const SdsFamily a = load_family(p1);
    const SdsFamily b = load_family(p2);
    auto t = find_equivalence(a, b, g.workers);
    if (!t) {
        out << "not equivalent\n";
        return kFailed;
    }
    out << "equivalent\n";
    out << "sets";
    for (std::size_t k = 0; k < 4; ++k) out << ' ' << k + 1 << "->" << t->permutation[k] + 1;
    out << "\nmultiplier " << t->multiplier << '\n';
    out << "negations";
    for (int e : t->negations) out << ' ' << (e > 0 ? '+' : '-');
    out << "\ntranslations ";
    print_list(out, t->translations);
    out << '\n';
    return kOk;
}

struct SearchArgs {
    std::int64_t modulus = 0;
    std::int64_t generator = 1;
    std::vector<std::uint32_t> targets;
    std::string mode = "local";
    std::uint64_t budget = 100000;
    bool budget_given = false;
    std::uint32_t restarts = 10;
    std::string start;
    std::uint64_t max_sideways = 2000;
    std::uint32_t tabu = 10;
    std::string tie_break = "random";
    bool unique = false;
    bool list_targets = false;
    std::uint64_t progress = 0;
};

int cmd_search(SearchArgs a, const Globals& g, std::ostream& out, std::ostream& err) {
    std::optional<SdsFamily> start;
    if (!a.start.empty()) {
        start = load_family(a.start);
        if (!start->provenance()) {
            err << "start file must list coset indices (J lines) for every set\n";
            return kUsage;
        }
        if (a.modulus == 0) a.modulus = start->modulus().value();
        if (a.generator == 1) a.generator = start->provenance()->generator;
    }
    if (a.modulus == 0) {
        err << "search needs -n/--modulus or --start\n";
        return kUsage;
    }

    SearchConfig cfg;
    cfg.modulus = PrimeModulus(a.modulus);
    cfg.generator = static_cast<Residue>(a.generator);
    SearchSpace probe_space = SearchSpace(cfg);
    const auto block = static_cast<std::uint32_t>(probe_space.block_size());

    std::vector<CardinalityTargets> target_list;
    if (!a.targets.empty()) {
        if (a.targets.size() != 4) {
            err << "--targets needs exactly four cardinalities\n";
            return kUsage;
        }
        target_list.push_back({a.targets[0], a.targets[1], a.targets[2], a.targets[3]});
    } else {
        target_list = four_square_targets(cfg.modulus, block);
    }
    if (a.list_targets) {
        for (const auto& t : target_list) {
            print_list(out, t);
            out << '\n';
        }
        return kOk;
    }

    cfg.mode = a.mode == "exhaustive" ? SearchMode::exhaustive : SearchMode::local;
    cfg.budget = a.budget_given || cfg.mode == SearchMode::local ? a.budget : kDefaultExhaustiveBudget;
    cfg.restarts = a.restarts;
    cfg.seed = g.seed;
    cfg.workers = g.workers;
    cfg.max_sideways = a.max_sideways;
    cfg.tabu_tenure = a.tabu;
    cfg.tie_break = a.tie_break == "lex" ? TieBreak::lexicographic : TieBreak::random;
    cfg.dedupe_equivalent = a.unique;
    if (!g.quiet && a.progress) {
        cfg.progress = &err;
        cfg.progress_interval = a.progress;
    }
    if (start) cfg.start = start->provenance()->index_sets;

    if (!g.quiet) err << "seed " << cfg.seed << (g.seed_given ? "" : " (default)") << '\n';

    std::size_t emitted = 0;
    auto emit = [&](const SdsFamily& f) {
        if (emitted++) out << '\n';
        out << emit_sds(to_document(f));
        out.flush();
    };
    if (!a.unique) cfg.on_hit = emit;

    for (const auto& t : target_list) {
        cfg.targets = t;
        if (!g.quiet) {
            err << "targets ";
            print_list(err, t);
            err << '\n';
        }
        auto hits = search(cfg);
        if (a.unique) {
            SearchSpace space(cfg);
            for (const auto& h : hits) emit(space.realize(h.index_sets));
        }
        if (!g.quiet) err << "hits " << hits.size() << '\n';
    }
    return emitted ? kOk : kFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Goethals-Seidel Hadamard matrices from supplementary difference sets", "gsds"};
    app.require_subcommand(1);
    app.fallthrough();

    Globals g;
    app.add_option("--seed", g.seed, "RNG seed for randomized subcommands (default 764)");
    app.add_option("--workers", g.workers, "worker threads (default 1)")->check(CLI::PositiveNumber);
    app.add_flag("--quiet", g.quiet, "suppress informational messages on stderr");

    std::int64_t cos_n = 0, cos_g = 0;
    auto* cosets = app.add_subcommand("cosets", "print the coset table of <g> modulo n");
    cosets->add_option("n", cos_n, "odd prime modulus")->required();
    cosets->add_option("g", cos_g, "subgroup generator")->required();

    std::string verify_path;
    auto* verify = app.add_subcommand("verify", "check the SDS condition for a family file");
    verify->add_option("file", verify_path, "SDS document")->required();

    std::string build_path, build_out;
    auto* build = app.add_subcommand("build", "assemble and check the Goethals-Seidel Hadamard matrix");
    build->add_option("file", build_path, "SDS document")->required();
    build->add_option("-o,--output", build_out, "matrix file (default: standard output)");

    std::string hadamard_path;
    auto* check = app.add_subcommand("check-hadamard", "check M M^T = m I for a matrix file");
    check->add_option("file", hadamard_path, "matrix document")->required();

    std::string eq1, eq2;
    auto* equiv = app.add_subcommand("equiv", "decide equivalence of two SDS families");
    equiv->add_option("first", eq1, "SDS document")->required();
    equiv->add_option("second", eq2, "SDS document")->required();

    SearchArgs sa;
    auto* srch = app.add_subcommand("search", "search for SDS families; hits go to stdout as SDS documents");
    srch->add_option("-n,--modulus", sa.modulus, "odd prime modulus");
    srch->add_option("-g,--generator", sa.generator, "subgroup generator; 1 searches over single residues");
    srch->add_option("--targets", sa.targets, "cardinalities n1,n2,n3,n4 (default: every admissible tuple)")
        ->delimiter(',');
    srch->add_option("--mode", sa.mode, "local or exhaustive")->check(CLI::IsMember({"local", "exhaustive"}));
    srch->add_option("--budget", sa.budget, "local: moves per restart; exhaustive: largest space searched");
    srch->add_option("--restarts", sa.restarts, "local search restarts")->check(CLI::PositiveNumber);
    srch->add_option("--start", sa.start, "SDS document (J form) used as the first starting point");
    srch->add_option("--max-sideways", sa.max_sideways, "consecutive non-improving moves before restart");
    srch->add_option("--tabu", sa.tabu, "tabu tenure in moves");
    srch->add_option("--tie-break", sa.tie_break, "random or lex")->check(CLI::IsMember({"random", "lex"}));
    srch->add_flag("--unique", sa.unique, "keep one family per equivalence class");
    srch->add_flag("--list-targets", sa.list_targets, "print the admissible cardinality tuples and exit");
    srch->add_option("--progress", sa.progress, "progress line on stderr every N moves");

    std::vector<std::string> argv_store;
    argv_store.reserve(args.size() + 1);
    argv_store.emplace_back("gsds");
    argv_store.insert(argv_store.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : argv_store) argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }
    g.seed_given = app.count("--seed") > 0;
    sa.budget_given = srch->count("--budget") > 0;

    try {
        if (*cosets) return cmd_cosets(cos_n, cos_g, out);
        if (*verify) return cmd_verify(verify_path, out, err);
        if (*build) return cmd_build(build_path, build_out, g, out, err);
        if (*check) return cmd_check_hadamard(hadamard_path, g, out);
        if (*equiv) return cmd_equiv(eq1, eq2, g, out);
        if (*srch) return cmd_search(sa, g, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}

}  // namespace gsds::cli
