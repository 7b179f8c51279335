#include "gsds/equivalence.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace gsds {

namespace {

void validate(const EquivalenceTransform& t, const PrimeModulus& n) {
    if (t.multiplier % n.value() == 0) throw std::invalid_argument("multiplier is not a unit");
    std::array<bool, 4> hit{};
    for (std::size_t p : t.permutation) {
        if (p >= 4 || hit[p]) throw std::invalid_argument("set map is not a permutation of {1..4}");
        hit[p] = true;
    }
    for (int e : t.negations)
        if (e != 1 && e != -1) throw std::invalid_argument("negation flag must be +1 or -1");
}

Residue scale(const PrimeModulus& n, int sign, Residue a) { return sign < 0 ? n.neg(a % n.value()) : a % n.value(); }

// Least translate of the sorted set x, written into best; returns the shift b
// (added to every element) that produces it. Every least translate contains 0,
// so only shifts -x_s need to be tried; each yields the rotation of x
// starting at x_s.
Residue least_translate(const std::vector<Residue>& x, Residue n, std::vector<Residue>& best) {
    const std::size_t m = x.size();
    best.assign(x.begin(), x.end());
    if (m == 0) return 0;
    std::size_t best_s = 0;
    auto at = [&](std::size_t s, std::size_t i) {
        std::size_t idx = s + i;
        return idx < m ? x[idx] - x[s] : x[idx - m] + n - x[s];
    };
    for (std::size_t s = 1; s < m; ++s)
        for (std::size_t i = 0; i < m; ++i) {
            Residue a = at(s, i), b = at(best_s, i);
            if (a != b) {
                if (a < b) best_s = s;
                break;
            }
        }
    for (std::size_t i = 0; i < m; ++i) best[i] = at(best_s, i);
    return x[best_s] == 0 ? 0 : n - x[best_s];
}

struct Best {
    bool valid = false;
    CanonicalForm form;
    EquivalenceTransform transform;
};

void scan_multipliers(const SdsFamily& f, Residue first, Residue stride, Best& out) {
    const PrimeModulus& pm = f.modulus();
    const Residue n = pm.value();
    std::array<std::vector<Residue>, 4> sets;
    std::vector<Residue> scaled, trial;
    CanonicalForm cand;
    cand.modulus = n;
    EquivalenceTransform t;

    for (Residue a = first; a < n; a += stride) {
        t.multiplier = a;
        for (std::size_t k = 0; k < 4; ++k) {
            const auto elems = f.set(k).elements();
            bool have = false;
            for (int sign : {1, -1}) {
                Residue factor = scale(pm, sign, a);
                scaled.clear();
                for (Residue x : elems) scaled.push_back(pm.mul(factor, x));
                std::sort(scaled.begin(), scaled.end());
                Residue b = least_translate(scaled, n, trial);
                if (!have || trial < sets[k]) {
                    sets[k] = trial;
                    t.translations[k] = b;
                    t.negations[k] = sign;
                    have = true;
                }
            }
        }
        std::array<std::size_t, 4> order{0, 1, 2, 3};
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            if (sets[i].size() != sets[j].size()) return sets[i].size() < sets[j].size();
            return sets[i] < sets[j];
        });
        for (std::size_t pos = 0; pos < 4; ++pos) {
            cand.sets[pos] = sets[order[pos]];
            cand.cardinalities[pos] = static_cast<std::int64_t>(sets[order[pos]].size());
            t.permutation[order[pos]] = pos;
        }
        if (!out.valid || cand < out.form) {
            out.valid = true;
            out.form = cand;
            out.transform = t;
        }
    }
}

}  // namespace

SdsFamily apply_transform(const SdsFamily& f, const EquivalenceTransform& t) {
    const PrimeModulus& n = f.modulus();
    validate(t, n);
    std::array<ResidueSet, 4> out{ResidueSet(n), ResidueSet(n), ResidueSet(n), ResidueSet(n)};
    for (std::size_t k = 0; k < 4; ++k) {
        const Residue factor = scale(n, t.negations[k], t.multiplier);
        std::vector<Residue> s;
        s.reserve(f.set(k).size());
        for (Residue x : f.set(k).elements()) s.push_back(n.add(n.mul(factor, x), t.translations[k] % n.value()));
        out[t.permutation[k]] = ResidueSet(n, std::move(s));
    }
    return SdsFamily(n, std::move(out));
}

EquivalenceTransform compose(const EquivalenceTransform& first, const EquivalenceTransform& second,
                             const PrimeModulus& n) {
    validate(first, n);
    validate(second, n);
    EquivalenceTransform t;
    t.multiplier = n.mul(first.multiplier % n.value(), second.multiplier % n.value());
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t mid = first.permutation[k];
        t.permutation[k] = second.permutation[mid];
        t.negations[k] = first.negations[k] * second.negations[mid];
        const Residue carried = n.mul(scale(n, second.negations[mid], second.multiplier), first.translations[k] % n.value());
        t.translations[k] = n.add(carried, second.translations[mid] % n.value());
    }
    return t;
}

EquivalenceTransform inverse(const EquivalenceTransform& t, const PrimeModulus& n) {
    validate(t, n);
    EquivalenceTransform inv;
    inv.multiplier = n.inverse(t.multiplier % n.value());
    for (std::size_t k = 0; k < 4; ++k) {
        const std::size_t j = t.permutation[k];
        inv.permutation[j] = k;
        inv.negations[j] = t.negations[k];
        const Residue factor = scale(n, t.negations[k], inv.multiplier);
        inv.translations[j] = n.neg(n.mul(factor, t.translations[k] % n.value()));
    }
    return inv;
}

Canonicalization canonicalize(const SdsFamily& f, unsigned workers) {
    const Residue n = f.modulus().value();
    workers = std::max(1u, std::min<unsigned>(workers, n - 1));
    std::vector<Best> partial(workers);
    if (workers == 1) {
        scan_multipliers(f, 1, 1, partial[0]);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&, w] { scan_multipliers(f, 1 + w, workers, partial[w]); });
    }
    // Least form; among equal forms the smallest multiplier, matching the
    // single-worker scan.
    const Best* best = nullptr;
    for (const Best& b : partial) {
        if (!b.valid) continue;
        if (!best || b.form < best->form ||
            (b.form == best->form && b.transform.multiplier < best->transform.multiplier))
            best = &b;
    }
    return {best->form, best->transform};
}

CanonicalForm canonical_form(const SdsFamily& f, unsigned workers) { return canonicalize(f, workers).form; }

bool are_equivalent(const SdsFamily& a, const SdsFamily& b, unsigned workers) {
    if (a.modulus() != b.modulus()) return false;
    return canonical_form(a, workers) == canonical_form(b, workers);
}

std::optional<EquivalenceTransform> find_equivalence(const SdsFamily& a, const SdsFamily& b, unsigned workers) {
    if (a.modulus() != b.modulus()) return std::nullopt;
    auto ca = canonicalize(a, workers);
    auto cb = canonicalize(b, workers);
    if (ca.form != cb.form) return std::nullopt;
    return compose(ca.transform, inverse(cb.transform, b.modulus()), a.modulus());
}

}  // namespace gsds
