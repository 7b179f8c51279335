#pragma once

// Equivalence of four-set families under set reordering, a common unit
// multiplier, and independent per-set translations and negations.

#include <array>
#include <compare>
#include <optional>
#include <vector>

#include "gsds/sds_core.hpp"

namespace gsds {

/// Maps S_k to position permutation[k] as negations[k] * multiplier * S_k + translations[k].
struct EquivalenceTransform {
    std::array<std::size_t, 4> permutation{0, 1, 2, 3};
    Residue multiplier = 1;
    std::array<Residue, 4> translations{};
    std::array<int, 4> negations{1, 1, 1, 1};

    friend bool operator==(const EquivalenceTransform&, const EquivalenceTransform&) = default;
};

/// Throws std::invalid_argument for a non-unit multiplier, a non-permutation,
/// or a negation flag other than +-1.
SdsFamily apply_transform(const SdsFamily& f, const EquivalenceTransform& t);

/// The transform equal to applying `first`, then `second`.
EquivalenceTransform compose(const EquivalenceTransform& first, const EquivalenceTransform& second,
                             const PrimeModulus& n);
EquivalenceTransform inverse(const EquivalenceTransform& t, const PrimeModulus& n);

/// Orbit representative: the least family, ordered by (cardinality vector,
/// then residue lists), over all transforms.
struct CanonicalForm {
    Residue modulus = 0;
    std::array<std::int64_t, 4> cardinalities{};
    std::array<std::vector<Residue>, 4> sets;

    friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;
    friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
};

struct Canonicalization {
    CanonicalForm form;
    EquivalenceTransform transform;  // apply_transform(f, transform) realizes form
};

/// The multiplier loop is split across `workers` threads; the result does not
/// depend on the split.
Canonicalization canonicalize(const SdsFamily& f, unsigned workers = 1);
CanonicalForm canonical_form(const SdsFamily& f, unsigned workers = 1);

bool are_equivalent(const SdsFamily& a, const SdsFamily& b, unsigned workers = 1);
/// A transform t with apply_transform(a, t) having the sets of b, if one exists.
std::optional<EquivalenceTransform> find_equivalence(const SdsFamily& a, const SdsFamily& b,
                                                     unsigned workers = 1);

}  // namespace gsds
