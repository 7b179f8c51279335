#pragma once

// Circulant +-1 matrices and the Goethals-Seidel array, checked in exact
// integer arithmetic.

#include <cstdint>
#include <span>
#include <vector>

#include "gsds/sds_core.hpp"

namespace gsds {

using Sign = std::int8_t;

/// A length-n sequence of +1/-1 entries.
class PmOneRow {
public:
    explicit PmOneRow(std::vector<Sign> entries);

    std::size_t size() const noexcept { return entries_.size(); }
    Sign operator[](std::size_t j) const { return entries_[j]; }
    std::span<const Sign> entries() const noexcept { return entries_; }

private:
    std::vector<Sign> entries_;
};

/// Square matrix with entries in {+1, -1}, row-major.
class PmOneMatrix {
public:
    /// All +1.
    explicit PmOneMatrix(std::size_t order);
    /// Throws std::invalid_argument unless entries.size() == order^2 and all are +-1.
    PmOneMatrix(std::size_t order, std::vector<Sign> entries);

    std::size_t order() const noexcept { return order_; }
    Sign operator()(std::size_t i, std::size_t j) const { return entries_[i * order_ + j]; }
    void set(std::size_t i, std::size_t j, Sign v);
    std::span<const Sign> row(std::size_t i) const {
        return std::span<const Sign>(entries_).subspan(i * order_, order_);
    }
    std::span<const Sign> entries() const noexcept { return entries_; }

    PmOneMatrix transposed() const;

    friend bool operator==(const PmOneMatrix&, const PmOneMatrix&) = default;

private:
    std::size_t order_;
    std::vector<Sign> entries_;
};

/// Dense integer matrix used for exact products in checks and tests.
struct IntMatrix {
    std::size_t order = 0;
    std::vector<std::int64_t> entries;

    std::int64_t operator()(std::size_t i, std::size_t j) const { return entries[i * order + j]; }
    friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

/// M * M^T; rows are split across `workers` threads. The result does not
/// depend on the worker count.
IntMatrix gram(const PmOneMatrix& m, unsigned workers = 1);
IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);
IntMatrix to_int(const PmOneMatrix& m);

/// Entry j is -1 iff j is in S.
PmOneRow circulant_row(const ResidueSet& s);
/// Entry (i, j) = row[(j - i) mod n].
PmOneMatrix circulant_matrix(const PmOneRow& row);

/// PAF(r) = sum_j a_j a_{(j + r) mod n}, for r in 0..n-1.
std::vector<std::int64_t> periodic_autocorrelation(const PmOneRow& row);

/// True iff sum_k A_k A_k^T = 4n I_n. Throws std::invalid_argument on an
/// order mismatch.
bool gram_identity_check(std::span<const PmOneMatrix> blocks, unsigned workers = 1);

/// Back-diagonal permutation R (R[i][j] = 1 iff i + j = n - 1). Dense form
/// for tests; gs_assemble applies R by index arithmetic.
IntMatrix back_diagonal(std::size_t n);

/// Goethals-Seidel array of order 4n:
///   [  A     BR     CR     DR   ]
///   [ -BR    A     D^TR  -C^TR  ]
///   [ -CR  -D^TR    A     B^TR  ]
///   [ -DR   C^TR  -B^TR    A    ]
PmOneMatrix gs_assemble(const PmOneMatrix& a, const PmOneMatrix& b, const PmOneMatrix& c,
                        const PmOneMatrix& d);

/// True iff M M^T = m I_m exactly.
bool is_hadamard(const PmOneMatrix& m, unsigned workers = 1);

/// Circulants of the four sets of f, in order.
std::vector<PmOneMatrix> family_circulants(const SdsFamily& f);

}  // namespace gsds
