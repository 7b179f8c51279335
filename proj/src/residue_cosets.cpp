#include "gsds/residue_cosets.hpp"

#include <algorithm>
#include <stdexcept>

namespace gsds {

bool is_prime(std::int64_t n) noexcept {
    if (n < 2) return false;
    if (n % 2 == 0) return n == 2;
    for (std::int64_t d = 3; d * d <= n; d += 2)
        if (n % d == 0) return false;
    return true;
}

PrimeModulus::PrimeModulus(std::int64_t n) {
    if (n < 3 || n > INT32_MAX || !is_prime(n))
        throw std::invalid_argument("modulus " + std::to_string(n) + " is not an odd prime below 2^31");
    n_ = static_cast<Residue>(n);
}

Residue PrimeModulus::pow(Residue base, std::uint64_t exp) const noexcept {
    Residue result = 1 % n_;
    base %= n_;
    while (exp > 0) {
        if (exp & 1) result = mul(result, base);
        base = mul(base, base);
        exp >>= 1;
    }
    return result;
}

Residue PrimeModulus::inverse(Residue a) const {
    if (a % n_ == 0) throw std::invalid_argument("0 has no inverse");
    return pow(a, n_ - 2);
}

std::uint32_t PrimeModulus::order_of(Residue g) const {
    g %= n_;
    if (g == 0) throw std::invalid_argument("0 is not a unit");
    std::uint32_t t = 1;
    for (Residue x = g; x != 1; x = mul(x, g)) ++t;
    return t;
}

MultiplicativeSubgroup::MultiplicativeSubgroup(PrimeModulus modulus, Residue generator)
    : modulus_(modulus), generator_(generator) {
    if (generator == 0 || generator >= modulus.value())
        throw std::invalid_argument("generator must lie in [1, n-1]");
    Residue x = 1;
    do {
        elements_.push_back(x);
        x = modulus_.mul(x, generator_);
    } while (x != 1);
    std::sort(elements_.begin(), elements_.end());
}

bool MultiplicativeSubgroup::contains(Residue x) const noexcept {
    return std::binary_search(elements_.begin(), elements_.end(), x);
}

MultiplicativeSubgroup subgroup_generate(PrimeModulus n, std::int64_t g) {
    if (g < 1 || g >= static_cast<std::int64_t>(n.value()))
        throw std::invalid_argument("generator " + std::to_string(g) + " outside [1, n-1]");
    return MultiplicativeSubgroup(n, static_cast<Residue>(g));
}

CosetTable::CosetTable(MultiplicativeSubgroup subgroup) : subgroup_(std::move(subgroup)) {
    const PrimeModulus& m = subgroup_.modulus();
    const Residue n = m.value();
    if (subgroup_.order() % 2 == 0)
        throw std::invalid_argument("subgroup of even order contains -1; cosets cannot be paired");

    constexpr std::uint32_t unassigned = UINT32_MAX;
    owner_.assign(n, unassigned);
    auto add_coset = [&](Residue rep) {
        std::vector<Residue> c;
        c.reserve(subgroup_.order());
        for (Residue h : subgroup_.elements()) c.push_back(m.mul(rep, h));
        std::sort(c.begin(), c.end());
        for (Residue x : c) owner_[x] = static_cast<std::uint32_t>(cosets_.size());
        cosets_.push_back(std::move(c));
    };

    Residue next = 1;
    for (;;) {
        while (next < n && owner_[next] != unassigned) ++next;
        if (next >= n) break;
        representatives_.push_back(next);
        add_coset(next);
        add_coset(m.neg(next));
    }
}

std::size_t CosetTable::index_of(Residue x) const {
    if (x == 0 || x >= modulus().value()) throw std::out_of_range("residue is not a unit");
    return owner_[x];
}

CosetTable coset_table_build(const MultiplicativeSubgroup& h) { return CosetTable(h); }

std::vector<Residue> coset_union(const CosetTable& table, std::span<const std::size_t> indices) {
    std::vector<bool> seen(table.size(), false);
    std::vector<Residue> out;
    out.reserve(indices.size() * table.coset_size());
    for (std::size_t i : indices) {
        if (i >= table.size())
            throw std::out_of_range("coset index " + std::to_string(i) + " out of range [0, " +
                                    std::to_string(table.size() - 1) + "]");
        if (seen[i]) throw std::invalid_argument("coset index " + std::to_string(i) + " repeated");
        seen[i] = true;
        auto c = table.coset(i);
        out.insert(out.end(), c.begin(), c.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace gsds
