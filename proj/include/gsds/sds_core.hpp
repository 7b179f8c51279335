#pragma once

// Difference counts of residue sets and the supplementary-difference-set
// condition for families of four sets.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "gsds/residue_cosets.hpp"

namespace gsds {

/// A subset of Z_n, kept sorted and duplicate-free.
class ResidueSet {
public:
    explicit ResidueSet(PrimeModulus modulus) : modulus_(modulus) {}
    /// Throws std::invalid_argument on a residue outside [0, n-1] or a duplicate.
    ResidueSet(PrimeModulus modulus, std::vector<Residue> elements);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    std::span<const Residue> elements() const noexcept { return elements_; }
    std::size_t size() const noexcept { return elements_.size(); }
    bool empty() const noexcept { return elements_.empty(); }
    bool contains(Residue x) const noexcept;

    friend bool operator==(const ResidueSet&, const ResidueSet&) = default;

private:
    PrimeModulus modulus_;
    std::vector<Residue> elements_;
};

/// Where a family came from when it was built as unions of cosets.
struct CosetProvenance {
    Residue generator = 1;
    std::array<std::vector<std::size_t>, 4> index_sets;

    friend bool operator==(const CosetProvenance&, const CosetProvenance&) = default;
};

class SdsFamily {
public:
    /// Throws std::invalid_argument when the sets do not share `modulus`.
    SdsFamily(PrimeModulus modulus, std::array<ResidueSet, 4> sets,
              std::optional<CosetProvenance> provenance = std::nullopt);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    const std::array<ResidueSet, 4>& sets() const noexcept { return sets_; }
    const ResidueSet& set(std::size_t k) const { return sets_.at(k); }
    const std::optional<CosetProvenance>& provenance() const noexcept { return provenance_; }
    std::array<std::int64_t, 4> cardinalities() const noexcept;

    /// Same residue sets; provenance is ignored.
    bool same_sets(const SdsFamily& other) const noexcept {
        return modulus_ == other.modulus_ && sets_ == other.sets_;
    }

private:
    PrimeModulus modulus_;
    std::array<ResidueSet, 4> sets_;
    std::optional<CosetProvenance> provenance_;
};

/// Builds S_k as the union of cosets alpha_i, i in J_k.
SdsFamily family_from_cosets(const CosetTable& table,
                             const std::array<std::vector<std::size_t>, 4>& index_sets);

/// counts[r] = #{(i, j) in S x S : i - j = r mod n}. Index 0 is kept at zero so
/// that counts can be addressed directly by r in 1..n-1.
struct LambdaProfile {
    Residue modulus = 0;
    std::vector<std::int64_t> counts;

    std::int64_t operator[](Residue r) const { return counts.at(r); }
    friend bool operator==(const LambdaProfile&, const LambdaProfile&) = default;
};

/// Pair enumeration over S x S, O(|S|^2).
LambdaProfile lambda_profile(const ResidueSet& s);
/// Cyclic autocorrelation of the 0/1 indicator vector, O(n^2). Matches
/// lambda_profile exactly.
LambdaProfile lambda_profile_indicator(const ResidueSet& s);

struct VerificationReport {
    bool is_sds = false;
    std::int64_t lambda = 0;
    std::array<std::int64_t, 4> cardinalities{};
    std::array<std::int64_t, 4> square_terms{};  // n - 2 n_k
    std::vector<Residue> failures;               // r with sum != lambda
};

/// Throws std::invalid_argument if sum |S_k| < n (lambda would be negative).
VerificationReport verify_sds(const SdsFamily& f);

struct SquareDecomposition {
    std::array<std::int64_t, 4> terms{};  // n - 2 n_k
    std::int64_t sum_of_squares = 0;
    bool holds = false;                   // sum_of_squares == 4n
};

SquareDecomposition square_decomposition_check(const SdsFamily& f);
SquareDecomposition square_decomposition_check(const PrimeModulus& n,
                                               const std::array<std::int64_t, 4>& cardinalities);

using CardinalityTargets = std::array<std::uint32_t, 4>;

/// All non-decreasing cardinality tuples (n_1..n_4) with n_k = (n -+ d_k)/2,
/// sum d_k^2 = 4n over odd positive d_k, and every n_k divisible by
/// coset_size. Sorted lexicographically; may be empty.
std::vector<CardinalityTargets> four_square_targets(const PrimeModulus& n, std::uint32_t coset_size);

}  // namespace gsds
