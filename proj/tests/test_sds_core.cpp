#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "gsds/known_examples.hpp"
#include "gsds/sds_core.hpp"
#include "oracles.hpp"

using namespace gsds;

namespace {

ResidueSet make_set(std::int64_t n, std::vector<Residue> v) { return ResidueSet(PrimeModulus(n), std::move(v)); }

ResidueSet from_oracle(std::int64_t n, const std::vector<std::int64_t>& v) {
    return make_set(n, std::vector<Residue>(v.begin(), v.end()));
}

SdsFamily small_family() {
    PrimeModulus n(7);
    return SdsFamily(n, {make_set(7, {0}), make_set(7, {1, 2, 4}), make_set(7, {1, 2, 4}), make_set(7, {1, 2, 4})});
}

const std::vector<std::int64_t> kPrimes{3, 5, 7, 11, 13, 17, 19, 23, 29, 31};

}  // namespace

TEST_CASE("residue sets validate their elements") {
    CHECK_THROWS_AS(make_set(7, {7}), std::invalid_argument);
    CHECK_THROWS_AS(make_set(7, {1, 1}), std::invalid_argument);
    auto s = make_set(7, {4, 1, 2});
    CHECK(std::vector<Residue>(s.elements().begin(), s.elements().end()) == std::vector<Residue>{1, 2, 4});
    CHECK_THROWS_AS(SdsFamily(PrimeModulus(7), {make_set(7, {}), make_set(7, {}), make_set(7, {}), make_set(11, {})}),
                    std::invalid_argument);
}

TEST_CASE("lambda_profile examples") {
    auto empty = lambda_profile(make_set(7, {}));
    CHECK(std::all_of(empty.counts.begin(), empty.counts.end(), [](auto c) { return c == 0; }));

    auto planar = lambda_profile(make_set(7, {1, 2, 4}));
    for (Residue r = 1; r < 7; ++r) CHECK(planar[r] == 1);

    auto f = examples::family(1);
    std::vector<std::int64_t> sum(191, 0);
    for (const auto& s : f.sets()) {
        auto p = lambda_profile(s);
        for (Residue r = 1; r < 191; ++r) sum[r] += p[r];
    }
    for (Residue r = 1; r < 191; ++r) CHECK(sum[r] == 174);
}

TEST_CASE("verify_sds on the bundled families") {
    for (int e : {1, 2}) {
        auto rep = verify_sds(examples::family(e));
        CHECK(rep.is_sds);
        CHECK(rep.failures.empty());
        CHECK(rep.lambda == 174);
        CHECK(rep.cardinalities == std::array<std::int64_t, 4>{85, 90, 90, 100});
        CHECK(rep.square_terms == std::array<std::int64_t, 4>{21, 11, 11, -9});
    }
}

TEST_CASE("verify_sds detects a removed residue") {
    auto f = examples::family(1);
    auto s1 = std::vector<Residue>(f.set(0).elements().begin() + 1, f.set(0).elements().end());
    SdsFamily broken(f.modulus(), {ResidueSet(f.modulus(), s1), f.set(1), f.set(2), f.set(3)});
    auto rep = verify_sds(broken);
    CHECK_FALSE(rep.is_sds);
    CHECK_FALSE(rep.failures.empty());
    CHECK(rep.lambda == 173);

    // Oracle agreement on the same broken family.
    std::array<std::vector<std::int64_t>, 4> raw;
    for (std::size_t k = 0; k < 4; ++k)
        for (Residue x : broken.set(k).elements()) raw[k].push_back(x);
    CHECK(oracle::is_sds(raw, 191) == rep.is_sds);
}

TEST_CASE("verify_sds small family and parameter errors") {
    auto rep = verify_sds(small_family());
    CHECK(rep.is_sds);
    CHECK(rep.lambda == 3);
    CHECK(rep.cardinalities == std::array<std::int64_t, 4>{1, 3, 3, 3});

    PrimeModulus n(7);
    SdsFamily tiny(n, {make_set(7, {0}), make_set(7, {1}), make_set(7, {2}), make_set(7, {3})});
    CHECK_THROWS_AS(verify_sds(tiny), std::invalid_argument);
}

TEST_CASE("square_decomposition_check") {
    auto d = square_decomposition_check(examples::family(1));
    CHECK(d.terms == std::array<std::int64_t, 4>{21, 11, 11, -9});
    CHECK(d.sum_of_squares == 764);
    CHECK(d.holds);

    auto s = square_decomposition_check(small_family());
    CHECK(s.terms == std::array<std::int64_t, 4>{5, 1, 1, 1});
    CHECK(s.sum_of_squares == 28);
    CHECK(s.holds);

    auto z = square_decomposition_check(PrimeModulus(7), {0, 0, 0, 0});
    CHECK(z.terms == std::array<std::int64_t, 4>{7, 7, 7, 7});
    CHECK(z.sum_of_squares == 196);
    CHECK_FALSE(z.holds);
}

TEST_CASE("four_square_targets examples") {
    auto t191 = four_square_targets(PrimeModulus(191), 5);
    CHECK(std::find(t191.begin(), t191.end(), CardinalityTargets{85, 90, 90, 100}) != t191.end());
    auto t7 = four_square_targets(PrimeModulus(7), 1);
    CHECK(std::find(t7.begin(), t7.end(), CardinalityTargets{1, 3, 3, 3}) != t7.end());
    auto t3 = four_square_targets(PrimeModulus(3), 1);
    CHECK(std::find(t3.begin(), t3.end(), CardinalityTargets{0, 1, 1, 1}) != t3.end());
    CHECK_THROWS_AS(four_square_targets(PrimeModulus(7), 4), std::invalid_argument);
}

TEST_CASE("four_square_targets matches brute force over all cardinality tuples") {
    for (std::int64_t p : {3, 5, 7, 11, 13, 19, 31, 43}) {
        for (std::uint32_t cs = 1; cs < static_cast<std::uint32_t>(p); ++cs) {
            if ((p - 1) % cs != 0) continue;
            std::set<CardinalityTargets> expect;
            for (std::int64_t a = 0; a <= p; ++a)
                for (std::int64_t b = a; b <= p; ++b)
                    for (std::int64_t c = b; c <= p; ++c)
                        for (std::int64_t d = c; d <= p; ++d) {
                            auto sq = [&](std::int64_t x) { return (p - 2 * x) * (p - 2 * x); };
                            if (sq(a) + sq(b) + sq(c) + sq(d) != 4 * p) continue;
                            if (a % cs || b % cs || c % cs || d % cs) continue;
                            expect.insert({static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b),
                                           static_cast<std::uint32_t>(c), static_cast<std::uint32_t>(d)});
                        }
            auto got = four_square_targets(PrimeModulus(p), cs);
            CAPTURE(p);
            CAPTURE(cs);
            CHECK(got == std::vector<CardinalityTargets>(expect.begin(), expect.end()));
        }
    }
}

TEST_CASE("lambda_profile agrees with pair enumeration for n <= 13") {
    std::mt19937_64 rng(1);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::int64_t n = std::vector<std::int64_t>{3, 5, 7, 11, 13}[trial % 5];
        auto raw = oracle::random_subset(n, rng);
        auto s = from_oracle(n, raw);
        auto expect = oracle::pair_counts(raw, n);
        auto p = lambda_profile(s);
        for (std::int64_t r = 1; r < n; ++r) CHECK(p[static_cast<Residue>(r)] == expect[r]);
        CHECK(lambda_profile_indicator(s) == p);
    }
}

TEST_CASE("lambda_profile properties") {
    std::mt19937_64 rng(2);
    for (int trial = 0; trial < 1000; ++trial) {
        const std::int64_t n = kPrimes[trial % kPrimes.size()];
        const PrimeModulus m(n);
        auto raw = oracle::random_subset(n, rng, 0.4);
        auto s = from_oracle(n, raw);
        auto p = lambda_profile(s);
        const auto size = static_cast<std::int64_t>(s.size());

        // pair-count conservation
        std::int64_t total = 0;
        for (Residue r = 1; r < m.value(); ++r) total += p[r];
        CHECK(total == size * (size - 1));

        // reflection symmetry
        for (Residue r = 1; r < m.value(); ++r) CHECK(p[r] == p[m.value() - r]);

        // translation invariance
        const auto shift = static_cast<Residue>(rng() % m.value());
        std::vector<Residue> moved;
        for (Residue x : s.elements()) moved.push_back(m.add(x, shift));
        CHECK(lambda_profile(ResidueSet(m, moved)) == p);

        // multiplier equivariance
        const auto a = static_cast<Residue>(1 + rng() % (m.value() - 1));
        std::vector<Residue> scaled;
        for (Residue x : s.elements()) scaled.push_back(m.mul(a, x));
        auto q = lambda_profile(ResidueSet(m, scaled));
        for (Residue r = 1; r < m.value(); ++r) CHECK(q[m.mul(a, r)] == p[r]);
    }
}

TEST_CASE("every SDS passes the square decomposition") {
    // Every family with admissible cardinalities at n = 3, 5, and the
    // (1,3,3,3) tuple at n = 7, by brute force.
    std::vector<std::pair<std::int64_t, CardinalityTargets>> cases;
    for (std::int64_t n : {3, 5})
        for (auto t : four_square_targets(PrimeModulus(n), 1)) cases.emplace_back(n, t);
    cases.emplace_back(7, CardinalityTargets{1, 3, 3, 3});
    for (const auto& [n, t] : cases) {
        {
            auto a = oracle::subsets_of_size(n, t[0]);
            auto b = oracle::subsets_of_size(n, t[1]);
            auto c = oracle::subsets_of_size(n, t[2]);
            auto d = oracle::subsets_of_size(n, t[3]);
            for (auto& x : a)
                for (auto& y : b)
                    for (auto& z : c)
                        for (auto& w : d) {
                            SdsFamily f(PrimeModulus(n), {from_oracle(n, x), from_oracle(n, y), from_oracle(n, z),
                                                          from_oracle(n, w)});
                            auto rep = verify_sds(f);
                            REQUIRE(rep.is_sds == oracle::is_sds({x, y, z, w}, n));
                            if (rep.is_sds) REQUIRE(square_decomposition_check(f).holds);
                        }
        }
    }
}
