// Acceptance suite: one PASS/FAIL line per criterion, each with its time limit.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <unistd.h>

#include "cli.hpp"
#include "gsds/equivalence.hpp"
#include "gsds/gs_construct.hpp"
#include "gsds/known_examples.hpp"
#include "gsds/residue_cosets.hpp"
#include "gsds/sds_core.hpp"
#include "gsds/sds_io.hpp"
#include "gsds/sds_search.hpp"
#include "oracles.hpp"

using namespace gsds;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string& what) {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

int failures = 0;

void criterion(int id, const std::string& name, double limit_seconds, const std::function<void(Outcome&)>& body) {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.ok = false;
        o.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.ok && secs > limit_seconds) {
        o.ok = false;
        o.detail = "time limit exceeded";
    }
    failures += !o.ok;
    std::printf("[%s] AC%d %s (%.3f s, limit %.3f s)%s%s\n", o.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
                limit_seconds, o.detail.empty() ? "" : ": ", o.detail.c_str());
    std::fflush(stdout);
}

int cli_code(const std::vector<std::string>& args, std::string* out = nullptr) {
    std::ostringstream o, e;
    int code = cli::run(args, o, e);
    if (out) *out = o.str();
    return code;
}

EquivalenceTransform random_transform(Residue n, std::mt19937_64& rng) {
    EquivalenceTransform t;
    t.multiplier = static_cast<Residue>(1 + rng() % (n - 1));
    for (std::size_t k = 0; k < 4; ++k) {
        t.translations[k] = static_cast<Residue>(rng() % n);
        t.negations[k] = (rng() & 1) ? 1 : -1;
    }
    std::shuffle(t.permutation.begin(), t.permutation.end(), rng);
    return t;
}

ResidueSet to_set(std::int64_t n, const std::vector<std::int64_t>& v) {
    return ResidueSet(PrimeModulus(n), std::vector<Residue>(v.begin(), v.end()));
}

void check_example(Outcome& o, int e) {
    const SdsFamily f = examples::family(e);
    auto rep = verify_sds(f);
    o.require(rep.cardinalities == std::array<std::int64_t, 4>{85, 90, 90, 100}, "cardinalities");
    o.require(rep.lambda == 174, "lambda");
    std::vector<std::int64_t> sum(191, 0);
    for (const auto& s : f.sets()) {
        auto p = lambda_profile(s);
        for (Residue r = 1; r < 191; ++r) sum[r] += p[r];
    }
    for (Residue r = 1; r < 191; ++r) o.require(sum[r] == 174, "sum of lambda_k(r) != 174 at r=" + std::to_string(r));
    o.require(rep.is_sds && rep.failures.empty(), "verify_sds");
    auto sq = square_decomposition_check(f);
    std::array<std::int64_t, 4> abs_terms{};
    for (std::size_t k = 0; k < 4; ++k) abs_terms[k] = std::abs(sq.terms[k]);
    std::sort(abs_terms.begin(), abs_terms.end());
    o.require(abs_terms == std::array<std::int64_t, 4>{9, 11, 11, 21}, "square terms 9, 11, 11, 21");
    o.require(sq.sum_of_squares == 764 && sq.holds, "sum of squares 764");
}

}  // namespace

int main() {
    criterion(1, "coset table of <39> mod 191", 0.010, [](Outcome& o) {
        auto h = subgroup_generate(PrimeModulus(191), 39);
        auto t = coset_table_build(h);
        o.require(std::vector<Residue>(h.elements().begin(), h.elements().end()) ==
                      std::vector<Residue>{1, 39, 49, 109, 184},
                  "H");
        o.require(t.size() == 38, "38 cosets");
        const std::vector<Residue> reps{1, 2, 3, 4, 6, 8, 9, 11, 12, 13, 16, 17, 18, 19, 22, 32, 36, 38, 41};
        o.require(std::vector<Residue>(t.representatives().begin(), t.representatives().end()) == reps,
                  "even-index representatives");
    });

    criterion(2, "example 1 is an SDS with lambda 174", 1.0, [](Outcome& o) { check_example(o, 1); });
    criterion(3, "example 2 is an SDS with lambda 174", 1.0, [](Outcome& o) { check_example(o, 2); });

    criterion(4, "sum A_k A_k^T = 764 I for both examples", 5.0, [](Outcome& o) {
        for (int e : {1, 2}) o.require(gram_identity_check(family_circulants(examples::family(e))), "gram identity");
    });

    criterion(5, "Goethals-Seidel matrices of order 764 are Hadamard", 30.0, [](Outcome& o) {
        for (int e : {1, 2}) {
            auto b = family_circulants(examples::family(e));
            auto h = gs_assemble(b[0], b[1], b[2], b[3]);
            o.require(h.order() == 764, "order");
            auto g = gram(h, 1);
            for (std::size_t i = 0; i < 764; ++i)
                for (std::size_t j = 0; j < 764; ++j)
                    o.require(g(i, j) == (i == j ? 764 : 0), "H H^T != 764 I");
            o.require(is_hadamard(h, 1), "is_hadamard");
        }
    });

    criterion(6, "examples inequivalent; example 1 equivalent to 100 transforms", 120.0, [](Outcome& o) {
        const SdsFamily e1 = examples::family(1);
        o.require(!are_equivalent(e1, examples::family(2)), "examples reported equivalent");
        std::mt19937_64 rng(764);
        for (int i = 0; i < 100; ++i) o.require(are_equivalent(e1, apply_transform(e1, random_transform(191, rng))),
                                                "transform " + std::to_string(i) + " not equivalent");
    });

    criterion(7, "oracle and property suites", 60.0, [](Outcome& o) {
        std::mt19937_64 rng(7);
        for (std::int64_t n : {3, 5, 7, 11, 13})
            for (int i = 0; i < 1000; ++i) {
                auto raw = oracle::random_subset(n, rng);
                auto p = lambda_profile(to_set(n, raw));
                auto expect = oracle::pair_counts(raw, n);
                for (std::int64_t r = 1; r < n; ++r)
                    o.require(p[static_cast<Residue>(r)] == expect[r], "lambda_profile vs pair enumeration");
            }

        // PAF bridge on 200 families at n <= 31, half of them transformed SDS.
        std::vector<SdsFamily> known;
        {
            SearchConfig cfg;
            cfg.modulus = PrimeModulus(13);
            cfg.generator = 3;
            cfg.targets = {3, 6, 6, 6};
            cfg.mode = SearchMode::exhaustive;
            SearchSpace space(cfg);
            for (auto& c : search(cfg)) known.push_back(space.realize(c.index_sets));
            cfg.modulus = PrimeModulus(19);
            cfg.generator = 7;
            cfg.targets = {6, 9, 9, 12};
            cfg.budget = 1'000'000;
            SearchSpace space19(cfg);
            for (auto& c : search(cfg)) known.push_back(space19.realize(c.index_sets));
            known.push_back(SdsFamily(PrimeModulus(7), {to_set(7, {0}), to_set(7, {1, 2, 4}), to_set(7, {1, 2, 4}),
                                                        to_set(7, {1, 2, 4})}));
        }
        int families = 0, sds = 0;
        while (families < 200) {
            std::optional<SdsFamily> f;
            if (families % 2 == 0) {
                const SdsFamily& base = known[rng() % known.size()];
                f = apply_transform(base, random_transform(base.modulus().value(), rng));
            } else {
                const std::int64_t n = std::vector<std::int64_t>{5, 7, 11, 13, 17, 19, 23, 29, 31}[rng() % 9];
                std::array<ResidueSet, 4> s{to_set(n, oracle::random_subset(n, rng, 0.6)),
                                            to_set(n, oracle::random_subset(n, rng, 0.6)),
                                            to_set(n, oracle::random_subset(n, rng, 0.6)),
                                            to_set(n, oracle::random_subset(n, rng, 0.6))};
                f.emplace(PrimeModulus(n), s);
            }
            std::int64_t total = 0;
            for (auto c : f->cardinalities()) total += c;
            if (total < f->modulus().value()) continue;
            ++families;
            const Residue n = f->modulus().value();
            std::vector<std::int64_t> paf(n, 0);
            for (const auto& s : f->sets()) {
                auto p = periodic_autocorrelation(circulant_row(s));
                for (Residue r = 0; r < n; ++r) paf[r] += p[r];
            }
            bool zero = true;
            for (Residue r = 1; r < n; ++r) zero = zero && paf[r] == 0;
            const bool is_sds = verify_sds(*f).is_sds;
            sds += is_sds;
            o.require(zero == is_sds, "PAF bridge");
        }
        o.require(sds >= 100, "too few SDS families in the PAF sample");

        const std::vector<std::int64_t> primes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};
        for (int i = 0; i < 1000; ++i) {
            const std::int64_t n = primes[rng() % primes.size()];
            const PrimeModulus m(n);
            auto s = to_set(n, oracle::random_subset(n, rng, 0.4));
            auto p = lambda_profile(s);
            const auto size = static_cast<std::int64_t>(s.size());
            std::int64_t total = 0;
            for (Residue r = 1; r < m.value(); ++r) total += p[r];
            o.require(total == size * (size - 1), "pair-count conservation");
        }
        for (int i = 0; i < 1000; ++i) {
            const std::int64_t n = primes[rng() % primes.size()];
            const PrimeModulus m(n);
            auto p = lambda_profile(to_set(n, oracle::random_subset(n, rng, 0.4)));
            for (Residue r = 1; r < m.value(); ++r) o.require(p[r] == p[m.value() - r], "reflection symmetry");
        }
        for (int i = 0; i < 1000; ++i) {
            const std::int64_t n = primes[rng() % primes.size()];
            const PrimeModulus m(n);
            auto s = to_set(n, oracle::random_subset(n, rng, 0.4));
            const auto c = static_cast<Residue>(rng() % m.value());
            std::vector<Residue> moved;
            for (Residue x : s.elements()) moved.push_back(m.add(x, c));
            o.require(lambda_profile(ResidueSet(m, moved)) == lambda_profile(s), "translation invariance");
        }
        for (int i = 0; i < 1000; ++i) {
            const std::int64_t n = primes[rng() % primes.size()];
            const PrimeModulus m(n);
            auto s = to_set(n, oracle::random_subset(n, rng, 0.4));
            const auto a = static_cast<Residue>(1 + rng() % (m.value() - 1));
            std::vector<Residue> scaled;
            for (Residue x : s.elements()) scaled.push_back(m.mul(a, x));
            auto p = lambda_profile(s);
            auto q = lambda_profile(ResidueSet(m, scaled));
            for (Residue r = 1; r < m.value(); ++r) o.require(q[m.mul(a, r)] == p[r], "multiplier equivariance");
        }
    });

    criterion(8, "search: exhaustive n = 7 matches naive oracle; seeded runs reproducible", 60.0, [](Outcome& o) {
        SearchConfig cfg;
        cfg.modulus = PrimeModulus(7);
        cfg.generator = 1;
        cfg.targets = {1, 3, 3, 3};
        cfg.mode = SearchMode::exhaustive;
        cfg.budget = 1'000'000'000;
        SearchSpace space(cfg);
        auto hits = search(cfg);
        std::set<std::array<std::vector<std::int64_t>, 4>> got, expect;
        for (const auto& h : hits) {
            auto f = space.realize(h.index_sets);
            std::array<std::vector<std::int64_t>, 4> sets;
            for (std::size_t k = 0; k < 4; ++k)
                for (Residue x : f.set(k).elements()) sets[k].push_back(x);
            got.insert(sets);
            auto b = family_circulants(f);
            auto h28 = gs_assemble(b[0], b[1], b[2], b[3]);
            o.require(h28.order() == 28 && is_hadamard(h28), "28x28 matrix not Hadamard");
        }
        auto a = oracle::subsets_of_size(7, 1);
        auto b = oracle::subsets_of_size(7, 3);
        for (auto& x : a)
            for (auto& y : b)
                for (auto& z : b)
                    for (auto& w : b)
                        if (oracle::is_sds({x, y, z, w}, 7)) expect.insert({x, y, z, w});
        o.require(got.size() == hits.size(), "duplicate hits");
        o.require(got == expect, "solution set differs from naive oracle");
        o.require(got.count({{{0}, {1, 2, 4}, {1, 2, 4}, {1, 2, 4}}}) == 1, "({0},{1,2,4},{1,2,4},{1,2,4}) missing");

        const std::vector<std::string> args{"--seed", "2024", "--workers", "1", "--quiet", "search", "-n", "13",
                                            "--targets", "3,6,6,6", "--restarts", "8", "--budget", "3000"};
        std::string first, second;
        o.require(cli_code(args, &first) == cli::kOk, "local search found nothing");
        cli_code(args, &second);
        o.require(!first.empty() && first == second, "local search output not byte-identical");
    });

    criterion(9, "CLI exit-code contract", 10.0, [](Outcome& o) {
        const fs::path dir = fs::temp_directory_path() / ("gsds_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(dir);
        const std::string data = GSDS_DATA_DIR;
        const std::string ex1 = data + "/example1.sds", ex2 = data + "/example2.sds";
        auto tmp = [&](const std::string& name) { return (dir / name).string(); };

        auto doc = parse_sds(read_file(ex1));
        doc.sets[2].values.pop_back();
        write_file(tmp("corrupt.sds"), emit_sds(doc));
        write_file(tmp("malformed.sds"), "n 191\ngenerator 39\nJ1: 1 2 3\n");
        write_file(tmp("moved.sds"),
                   emit_sds(to_document(apply_transform(examples::family(2), EquivalenceTransform{{3, 2, 1, 0}, 5, {1, 2, 3, 4}, {-1, 1, -1, 1}}))));

        o.require(cli_code({"verify", ex1}) == 0, "verify example1");
        o.require(cli_code({"verify", ex2}) == 0, "verify example2");
        o.require(cli_code({"verify", tmp("corrupt.sds")}) == 1, "verify corrupt");
        o.require(cli_code({"verify", tmp("malformed.sds")}) == 2, "verify malformed");

        for (const auto& [src, mat] : {std::pair{ex1, tmp("h1.txt")}, {ex2, tmp("h2.txt")}}) {
            o.require(cli_code({"--quiet", "build", src, "-o", mat}) == 0, "build " + src);
            o.require(cli_code({"check-hadamard", mat}) == 0, "check-hadamard " + mat);
        }
        std::string m = read_file(tmp("h1.txt"));
        const auto pos = m.find('\n') + 1 + 765 * 100 + 7;
        m[pos] = m[pos] == '+' ? '-' : '+';
        write_file(tmp("h1_flip.txt"), m);
        write_file(tmp("h1_bad.txt"), "764\n+*\n");
        o.require(cli_code({"check-hadamard", tmp("h1_flip.txt")}) == 1, "check-hadamard flipped");
        o.require(cli_code({"check-hadamard", tmp("h1_bad.txt")}) == 2, "check-hadamard malformed");
        o.require(cli_code({"build", tmp("corrupt.sds"), "-o", tmp("never.txt")}) == 1, "build corrupt");
        o.require(!fs::exists(tmp("never.txt")), "build wrote output for a non-SDS");
        o.require(cli_code({"build", tmp("malformed.sds")}) == 2, "build malformed");

        o.require(cli_code({"equiv", ex1, ex2}) == 1, "equiv example1 example2");
        o.require(cli_code({"equiv", ex2, tmp("moved.sds")}) == 0, "equiv example2 transformed");
        o.require(cli_code({"equiv", ex1, tmp("malformed.sds")}) == 2, "equiv malformed");
        o.require(cli_code({"no-such-command"}) == 2, "unknown command");
        fs::remove_all(dir);
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAILED" : "OK", failures);
    return failures ? 1 : 0;
}
