#include "gsds/gs_construct.hpp"

#include <algorithm>
#include <stdexcept>
#include <thread>

namespace gsds {

namespace {

void check_signs(std::span<const Sign> v) {
    for (Sign s : v)
        if (s != 1 && s != -1) throw std::invalid_argument("entry is not +1 or -1");
}

template <class RowFn>
void for_rows(std::size_t rows, unsigned workers, RowFn fn) {
    workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(rows)));
    if (workers == 1) {
        for (std::size_t i = 0; i < rows; ++i) fn(i);
        return;
    }
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w)
        pool.emplace_back([=] {
            for (std::size_t i = w; i < rows; i += workers) fn(i);
        });
}

std::int64_t dot(std::span<const Sign> x, std::span<const Sign> y) {
    std::int64_t acc = 0;
    for (std::size_t j = 0; j < x.size(); ++j) acc += x[j] * y[j];
    return acc;
}

}  // namespace

PmOneRow::PmOneRow(std::vector<Sign> entries) : entries_(std::move(entries)) { check_signs(entries_); }

PmOneMatrix::PmOneMatrix(std::size_t order) : order_(order), entries_(order * order, 1) {}

PmOneMatrix::PmOneMatrix(std::size_t order, std::vector<Sign> entries)
    : order_(order), entries_(std::move(entries)) {
    if (entries_.size() != order_ * order_) throw std::invalid_argument("matrix is not square");
    check_signs(entries_);
}

void PmOneMatrix::set(std::size_t i, std::size_t j, Sign v) {
    if (v != 1 && v != -1) throw std::invalid_argument("entry is not +1 or -1");
    entries_.at(i * order_ + j) = v;
}

PmOneMatrix PmOneMatrix::transposed() const {
    std::vector<Sign> t(entries_.size());
    for (std::size_t i = 0; i < order_; ++i)
        for (std::size_t j = 0; j < order_; ++j) t[j * order_ + i] = entries_[i * order_ + j];
    return PmOneMatrix(order_, std::move(t));
}

IntMatrix gram(const PmOneMatrix& m, unsigned workers) {
    const std::size_t n = m.order();
    IntMatrix g{n, std::vector<std::int64_t>(n * n, 0)};
    for_rows(n, workers, [&](std::size_t i) {
        for (std::size_t j = 0; j < n; ++j) g.entries[i * n + j] = dot(m.row(i), m.row(j));
    });
    return g;
}

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b) {
    if (a.order != b.order) throw std::invalid_argument("order mismatch");
    const std::size_t n = a.order;
    IntMatrix c{n, std::vector<std::int64_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k) {
            std::int64_t aik = a.entries[i * n + k];
            if (aik == 0) continue;
            for (std::size_t j = 0; j < n; ++j) c.entries[i * n + j] += aik * b.entries[k * n + j];
        }
    return c;
}

IntMatrix to_int(const PmOneMatrix& m) {
    return {m.order(), std::vector<std::int64_t>(m.entries().begin(), m.entries().end())};
}

PmOneRow circulant_row(const ResidueSet& s) {
    std::vector<Sign> e(s.modulus().value(), 1);
    for (Residue x : s.elements()) e[x] = -1;
    return PmOneRow(std::move(e));
}

PmOneMatrix circulant_matrix(const PmOneRow& row) {
    const std::size_t n = row.size();
    std::vector<Sign> e(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) e[i * n + j] = row[(j + n - i) % n];
    return PmOneMatrix(n, std::move(e));
}

std::vector<std::int64_t> periodic_autocorrelation(const PmOneRow& row) {
    const std::size_t n = row.size();
    std::vector<std::int64_t> paf(n, 0);
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j < n; ++j) paf[r] += row[j] * row[(j + r) % n];
    return paf;
}

bool gram_identity_check(std::span<const PmOneMatrix> blocks, unsigned workers) {
    if (blocks.size() != 4) throw std::invalid_argument("exactly four matrices required");
    const std::size_t n = blocks[0].order();
    for (const auto& b : blocks)
        if (b.order() != n) throw std::invalid_argument("matrix orders differ");
    std::vector<std::int64_t> sum(n * n, 0);
    for (const auto& b : blocks) {
        IntMatrix g = gram(b, workers);
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += g.entries[i];
    }
    const auto expected = static_cast<std::int64_t>(4 * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (sum[i * n + j] != (i == j ? expected : 0)) return false;
    return true;
}

IntMatrix back_diagonal(std::size_t n) {
    IntMatrix r{n, std::vector<std::int64_t>(n * n, 0)};
    for (std::size_t i = 0; i < n; ++i) r.entries[i * n + (n - 1 - i)] = 1;
    return r;
}

PmOneMatrix gs_assemble(const PmOneMatrix& a, const PmOneMatrix& b, const PmOneMatrix& c,
                        const PmOneMatrix& d) {
    const std::size_t n = a.order();
    if (b.order() != n || c.order() != n || d.order() != n)
        throw std::invalid_argument("matrix orders differ");

    // (X R)(i, j) = X(i, n-1-j);  (X^T R)(i, j) = X(n-1-j, i).
    enum class Form { plain, times_r, transpose_times_r };
    struct Block {
        const PmOneMatrix* m;
        Form form;
        Sign sign;
    };
    using F = Form;
    const Block layout[4][4] = {
        {{&a, F::plain, 1}, {&b, F::times_r, 1}, {&c, F::times_r, 1}, {&d, F::times_r, 1}},
        {{&b, F::times_r, -1}, {&a, F::plain, 1}, {&d, F::transpose_times_r, 1}, {&c, F::transpose_times_r, -1}},
        {{&c, F::times_r, -1}, {&d, F::transpose_times_r, -1}, {&a, F::plain, 1}, {&b, F::transpose_times_r, 1}},
        {{&d, F::times_r, -1}, {&c, F::transpose_times_r, 1}, {&b, F::transpose_times_r, -1}, {&a, F::plain, 1}},
    };

    const std::size_t m = 4 * n;
    std::vector<Sign> e(m * m);
    for (std::size_t bi = 0; bi < 4; ++bi)
        for (std::size_t bj = 0; bj < 4; ++bj) {
            const Block& blk = layout[bi][bj];
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j < n; ++j) {
                    Sign v = 0;
                    switch (blk.form) {
                        case F::plain: v = (*blk.m)(i, j); break;
                        case F::times_r: v = (*blk.m)(i, n - 1 - j); break;
                        case F::transpose_times_r: v = (*blk.m)(n - 1 - j, i); break;
                    }
                    e[(bi * n + i) * m + bj * n + j] = static_cast<Sign>(blk.sign * v);
                }
        }
    return PmOneMatrix(m, std::move(e));
}

bool is_hadamard(const PmOneMatrix& m, unsigned workers) {
    const std::size_t n = m.order();
    const auto expected = static_cast<std::int64_t>(n);
    std::vector<std::uint8_t> row_ok(n, 1);
    for_rows(n, workers, [&](std::size_t i) {
        for (std::size_t j = i; j < n; ++j)
            if (dot(m.row(i), m.row(j)) != (i == j ? expected : 0)) {
                row_ok[i] = 0;
                return;
            }
    });
    return std::all_of(row_ok.begin(), row_ok.end(), [](std::uint8_t v) { return v != 0; });
}

std::vector<PmOneMatrix> family_circulants(const SdsFamily& f) {
    std::vector<PmOneMatrix> out;
    out.reserve(4);
    for (const auto& s : f.sets()) out.push_back(circulant_matrix(circulant_row(s)));
    return out;
}

}  // namespace gsds
