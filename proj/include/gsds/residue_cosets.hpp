#pragma once

// Residues modulo an odd prime, cyclic subgroups of the unit group, and the
// paired coset enumeration used to build supplementary difference sets.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace gsds {

using Residue = std::uint32_t;

/// An odd prime modulus n. Primality is checked at construction.
class PrimeModulus {
public:
    explicit PrimeModulus(std::int64_t n);

    Residue value() const noexcept { return n_; }

    Residue reduce(std::int64_t x) const noexcept {
        std::int64_t r = x % static_cast<std::int64_t>(n_);
        return static_cast<Residue>(r < 0 ? r + n_ : r);
    }
    Residue add(Residue a, Residue b) const noexcept { return reduce(std::int64_t{a} + b); }
    Residue sub(Residue a, Residue b) const noexcept { return reduce(std::int64_t{a} - b); }
    Residue mul(Residue a, Residue b) const noexcept {
        return static_cast<Residue>(std::uint64_t{a} * b % n_);
    }
    Residue neg(Residue a) const noexcept { return a == 0 ? 0 : n_ - a; }
    Residue pow(Residue base, std::uint64_t exp) const noexcept;
    /// Multiplicative inverse of a unit; throws std::invalid_argument for 0.
    Residue inverse(Residue a) const;
    /// Smallest t >= 1 with g^t = 1.
    std::uint32_t order_of(Residue g) const;

    friend bool operator==(const PrimeModulus&, const PrimeModulus&) = default;

private:
    Residue n_;
};

bool is_prime(std::int64_t n) noexcept;

/// H = <g>, stored sorted ascending.
class MultiplicativeSubgroup {
public:
    MultiplicativeSubgroup(PrimeModulus modulus, Residue generator);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    Residue generator() const noexcept { return generator_; }
    std::span<const Residue> elements() const noexcept { return elements_; }
    std::size_t order() const noexcept { return elements_.size(); }
    bool contains(Residue x) const noexcept;

private:
    PrimeModulus modulus_;
    Residue generator_;
    std::vector<Residue> elements_;
};

MultiplicativeSubgroup subgroup_generate(PrimeModulus n, std::int64_t g);

/// The cosets of an odd-order subgroup H, enumerated as
///   alpha_0 = H, alpha_{2i+1} = -alpha_{2i},
/// where each even-index representative is the smallest positive residue not
/// covered by an earlier coset. Every coset is stored sorted.
class CosetTable {
public:
    explicit CosetTable(MultiplicativeSubgroup subgroup);

    const PrimeModulus& modulus() const noexcept { return subgroup_.modulus(); }
    const MultiplicativeSubgroup& subgroup() const noexcept { return subgroup_; }
    std::size_t size() const noexcept { return cosets_.size(); }
    std::size_t coset_size() const noexcept { return subgroup_.order(); }
    std::span<const Residue> coset(std::size_t i) const { return cosets_.at(i); }
    const std::vector<std::vector<Residue>>& cosets() const noexcept { return cosets_; }
    /// Representatives of alpha_0, alpha_2, alpha_4, ...
    std::span<const Residue> representatives() const noexcept { return representatives_; }
    /// Coset index containing the unit x.
    std::size_t index_of(Residue x) const;

private:
    MultiplicativeSubgroup subgroup_;
    std::vector<std::vector<Residue>> cosets_;
    std::vector<Residue> representatives_;
    std::vector<std::uint32_t> owner_;  // residue -> coset index
};

CosetTable coset_table_build(const MultiplicativeSubgroup& h);

/// Union of the cosets with the given indices, sorted ascending. Throws
/// std::out_of_range for an index >= table.size() and
/// std::invalid_argument for a repeated index.
std::vector<Residue> coset_union(const CosetTable& table, std::span<const std::size_t> indices);

}  // namespace gsds
