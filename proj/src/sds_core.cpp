#include "gsds/sds_core.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>
#include <string>

namespace gsds {

ResidueSet::ResidueSet(PrimeModulus modulus, std::vector<Residue> elements)
    : modulus_(modulus), elements_(std::move(elements)) {
    std::sort(elements_.begin(), elements_.end());
    for (std::size_t i = 0; i < elements_.size(); ++i) {
        if (elements_[i] >= modulus_.value())
            throw std::invalid_argument("residue " + std::to_string(elements_[i]) + " not in [0, " +
                                        std::to_string(modulus_.value() - 1) + "]");
        if (i > 0 && elements_[i] == elements_[i - 1])
            throw std::invalid_argument("duplicate residue " + std::to_string(elements_[i]));
    }
}

bool ResidueSet::contains(Residue x) const noexcept {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

SdsFamily::SdsFamily(PrimeModulus modulus, std::array<ResidueSet, 4> sets,
                     std::optional<CosetProvenance> provenance)
    : modulus_(modulus), sets_(std::move(sets)), provenance_(std::move(provenance)) {
    for (const auto& s : sets_)
        if (s.modulus() != modulus_) throw std::invalid_argument("family sets use different moduli");
}

std::array<std::int64_t, 4> SdsFamily::cardinalities() const noexcept {
    std::array<std::int64_t, 4> c{};
    for (std::size_t k = 0; k < 4; ++k) c[k] = static_cast<std::int64_t>(sets_[k].size());
    return c;
}

SdsFamily family_from_cosets(const CosetTable& table,
                             const std::array<std::vector<std::size_t>, 4>& index_sets) {
    const PrimeModulus n = table.modulus();
    std::array<ResidueSet, 4> sets{ResidueSet(n), ResidueSet(n), ResidueSet(n), ResidueSet(n)};
    CosetProvenance prov{table.subgroup().generator(), index_sets};
    for (std::size_t k = 0; k < 4; ++k) {
        sets[k] = ResidueSet(n, coset_union(table, index_sets[k]));
        std::sort(prov.index_sets[k].begin(), prov.index_sets[k].end());
    }
    return SdsFamily(n, std::move(sets), std::move(prov));
}

LambdaProfile lambda_profile(const ResidueSet& s) {
    const PrimeModulus& m = s.modulus();
    LambdaProfile p{m.value(), std::vector<std::int64_t>(m.value(), 0)};
    for (Residue i : s.elements())
        for (Residue j : s.elements())
            if (i != j) ++p.counts[m.sub(i, j)];
    return p;
}

LambdaProfile lambda_profile_indicator(const ResidueSet& s) {
    const Residue n = s.modulus().value();
    std::vector<std::uint8_t> ind(n, 0);
    for (Residue x : s.elements()) ind[x] = 1;
    LambdaProfile p{n, std::vector<std::int64_t>(n, 0)};
    for (Residue r = 1; r < n; ++r) {
        std::int64_t acc = 0;
        for (Residue j = 0; j < n; ++j) {
            Residue i = j + r >= n ? j + r - n : j + r;
            acc += ind[i] & ind[j];
        }
        p.counts[r] = acc;
    }
    return p;
}

VerificationReport verify_sds(const SdsFamily& f) {
    const Residue n = f.modulus().value();
    VerificationReport rep;
    rep.cardinalities = f.cardinalities();
    std::int64_t total = 0;
    for (auto c : rep.cardinalities) total += c;
    rep.lambda = total - static_cast<std::int64_t>(n);
    if (rep.lambda < 0)
        throw std::invalid_argument("sum of cardinalities " + std::to_string(total) +
                                    " is below n = " + std::to_string(n) + "; lambda would be negative");
    for (std::size_t k = 0; k < 4; ++k)
        rep.square_terms[k] = static_cast<std::int64_t>(n) - 2 * rep.cardinalities[k];

    std::vector<std::int64_t> sum(n, 0);
    for (const auto& s : f.sets()) {
        auto p = lambda_profile(s);
        for (Residue r = 1; r < n; ++r) sum[r] += p.counts[r];
    }
    for (Residue r = 1; r < n; ++r)
        if (sum[r] != rep.lambda) rep.failures.push_back(r);
    rep.is_sds = rep.failures.empty();
    return rep;
}

SquareDecomposition square_decomposition_check(const PrimeModulus& n,
                                               const std::array<std::int64_t, 4>& cardinalities) {
    SquareDecomposition d;
    const auto nn = static_cast<std::int64_t>(n.value());
    for (std::size_t k = 0; k < 4; ++k) {
        d.terms[k] = nn - 2 * cardinalities[k];
        d.sum_of_squares += d.terms[k] * d.terms[k];
    }
    d.holds = d.sum_of_squares == 4 * nn;
    return d;
}

SquareDecomposition square_decomposition_check(const SdsFamily& f) {
    return square_decomposition_check(f.modulus(), f.cardinalities());
}

std::vector<CardinalityTargets> four_square_targets(const PrimeModulus& n, std::uint32_t coset_size) {
    const std::int64_t nn = n.value();
    if (coset_size == 0 || (nn - 1) % coset_size != 0)
        throw std::invalid_argument("coset size must divide n - 1");
    const std::int64_t target = 4 * nn;

    std::set<CardinalityTargets> found;
    auto expand = [&](const std::array<std::int64_t, 4>& d) {
        for (unsigned signs = 0; signs < 16; ++signs) {
            CardinalityTargets t{};
            bool ok = true;
            for (std::size_t k = 0; k < 4 && ok; ++k) {
                std::int64_t c = (signs >> k & 1) ? (nn + d[k]) / 2 : (nn - d[k]) / 2;
                ok = c >= 0 && c <= nn && c % coset_size == 0;
                t[k] = static_cast<std::uint32_t>(c);
            }
            if (!ok) continue;
            std::sort(t.begin(), t.end());
            found.insert(t);
        }
    };
    for (std::int64_t a = 1; 4 * a * a <= target; a += 2)
        for (std::int64_t b = a; a * a + 3 * b * b <= target; b += 2)
            for (std::int64_t c = b; a * a + b * b + 2 * c * c <= target; c += 2) {
                std::int64_t rest = target - a * a - b * b - c * c;
                std::int64_t d = c;
                while (d * d < rest) d += 2;
                if (d * d == rest) expand({a, b, c, d});
            }
    return {found.begin(), found.end()};
}

}  // namespace gsds
