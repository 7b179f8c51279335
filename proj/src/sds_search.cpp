#include "gsds/sds_search.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>

#include "gsds/equivalence.hpp"

namespace gsds {

CosetDiffTable::CosetDiffTable(PrimeModulus modulus, const std::vector<std::vector<Residue>>& blocks)
    : modulus_(modulus), count_(blocks.size()) {
    const Residue n = modulus_.value();
    table_.assign(count_ * count_ * n, 0);
    for (std::size_t i = 0; i < count_; ++i)
        for (std::size_t j = 0; j < count_; ++j) {
            std::uint16_t* row = table_.data() + (i * count_ + j) * n;
            for (Residue x : blocks[i])
                for (Residue y : blocks[j])
                    if (x != y) ++row[modulus_.sub(x, y)];
        }
}

LambdaProfile CosetDiffTable::profile(const std::vector<std::size_t>& index_set) const {
    const Residue n = modulus_.value();
    LambdaProfile p{n, std::vector<std::int64_t>(n, 0)};
    for (std::size_t i : index_set)
        for (std::size_t j : index_set) {
            const std::uint16_t* row = pair(i, j);
            for (Residue r = 1; r < n; ++r) p.counts[r] += row[r];
        }
    return p;
}

CosetDiffTable build_diff_table(const CosetTable& table) {
    return CosetDiffTable(table.modulus(), table.cosets());
}

std::uint64_t objective(const IndexSets& index_sets, const CosetDiffTable& diff, std::int64_t lambda) {
    const Residue n = diff.modulus().value();
    std::vector<std::int64_t> sum(n, 0);
    for (const auto& j : index_sets) {
        auto p = diff.profile(j);
        for (Residue r = 1; r < n; ++r) sum[r] += p.counts[r];
    }
    std::uint64_t obj = 0;
    for (Residue r = 1; r < n; ++r) {
        std::int64_t dev = sum[r] - lambda;
        obj += static_cast<std::uint64_t>(dev * dev);
    }
    return obj;
}

namespace {

std::vector<std::vector<Residue>> residue_blocks(const PrimeModulus& n) {
    std::vector<std::vector<Residue>> b(n.value());
    for (Residue x = 0; x < n.value(); ++x) b[x] = {x};
    return b;
}

std::optional<CosetTable> config_cosets(const SearchConfig& cfg) {
    if (cfg.generator == 1) return std::nullopt;
    return coset_table_build(subgroup_generate(cfg.modulus, cfg.generator));
}

}  // namespace

SearchSpace::SearchSpace(const SearchConfig& cfg)
    : modulus_(cfg.modulus),
      cosets_(config_cosets(cfg)),
      blocks_(cosets_ ? cosets_->cosets() : residue_blocks(cfg.modulus)),
      diff_(modulus_, blocks_) {}

SdsFamily SearchSpace::realize(const IndexSets& index_sets) const {
    if (cosets_) return family_from_cosets(*cosets_, index_sets);
    std::array<ResidueSet, 4> sets{ResidueSet(modulus_), ResidueSet(modulus_), ResidueSet(modulus_),
                                   ResidueSet(modulus_)};
    for (std::size_t k = 0; k < 4; ++k) {
        std::vector<Residue> s;
        for (std::size_t i : index_sets[k]) {
            if (i >= blocks_.size()) throw std::out_of_range("block index out of range");
            s.push_back(static_cast<Residue>(i));
        }
        sets[k] = ResidueSet(modulus_, std::move(s));
    }
    return SdsFamily(modulus_, std::move(sets));
}

std::uint64_t SplitMix64::next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

std::uint64_t SplitMix64::uniform_below(std::uint64_t bound) noexcept {
    // 2^64 mod bound, computed without overflow.
    const std::uint64_t rem = (std::numeric_limits<std::uint64_t>::max() % bound + 1) % bound;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - rem;  // accept x <= limit
    std::uint64_t x;
    do x = next();
    while (x > limit);
    return x % bound;
}

namespace {

struct Validated {
    std::array<std::size_t, 4> sizes{};  // blocks per set
    std::int64_t lambda = 0;
};

Validated validate(const SearchConfig& cfg, const SearchSpace& space) {
    const std::int64_t n = cfg.modulus.value();
    const std::size_t bs = space.block_size();
    Validated v;
    std::int64_t total = 0;
    std::array<std::int64_t, 4> card{};
    for (std::size_t k = 0; k < 4; ++k) {
        const std::uint32_t t = cfg.targets[k];
        if (t % bs != 0)
            throw std::invalid_argument("target " + std::to_string(t) + " not a multiple of block size " +
                                        std::to_string(bs));
        v.sizes[k] = t / bs;
        if (v.sizes[k] > space.block_count())
            throw std::invalid_argument("target " + std::to_string(t) + " exceeds the available blocks");
        card[k] = t;
        total += t;
    }
    v.lambda = total - n;
    if (v.lambda < 0) throw std::invalid_argument("targets sum below n");
    if (!square_decomposition_check(cfg.modulus, card).holds)
        throw std::invalid_argument("targets violate sum (n - 2 n_k)^2 = 4n; no SDS can have them");
    if (cfg.restarts == 0) throw std::invalid_argument("restarts must be positive");
    return v;
}

void confirm(const SearchSpace& space, const IndexSets& j) {
    if (!verify_sds(space.realize(j)).is_sds)
        throw std::logic_error("search produced a candidate that fails verify_sds");
}

// ---------------------------------------------------------------- exhaustive

void combinations(std::size_t c, std::size_t s, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur(s);
    for (std::size_t i = 0; i < s; ++i) cur[i] = i;
    if (s > c) return;
    for (;;) {
        out.push_back(cur);
        std::size_t i = s;
        while (i > 0 && cur[i - 1] == c - s + (i - 1)) --i;
        if (i == 0) return;
        ++cur[i - 1];
        for (std::size_t k = i; k < s; ++k) cur[k] = cur[k - 1] + 1;
    }
}

std::uint64_t binomial_capped(std::uint64_t c, std::uint64_t s, std::uint64_t cap) {
    if (s > c) return 0;
    s = std::min(s, c - s);
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= s; ++i) {
        r = r * (c - s + i) / i;
        if (r > cap) return cap + 1;
    }
    return static_cast<std::uint64_t>(r);
}

std::vector<Candidate> run_exhaustive(const SearchConfig& cfg, const SearchSpace& space, const Validated& v) {
    const std::size_t c = space.block_count();
    const std::uint64_t cap = cfg.budget;
    std::uint64_t space_size = 1;
    for (std::size_t k = 0; k < 4; ++k) {
        std::uint64_t b = binomial_capped(c, v.sizes[k], cap);
        unsigned __int128 p = static_cast<unsigned __int128>(space_size) * b;
        space_size = p > cap ? cap + 1 : static_cast<std::uint64_t>(p);
    }
    if (space_size > cap)
        throw std::invalid_argument("exhaustive search space exceeds the budget of " + std::to_string(cap) +
                                    " tuples");

    const Residue n = cfg.modulus.value();
    struct Subset {
        std::vector<std::size_t> blocks;
        std::vector<std::int64_t> profile;
    };
    std::map<std::size_t, std::vector<Subset>> by_size;
    for (std::size_t s : v.sizes) {
        if (by_size.count(s)) continue;
        std::vector<std::vector<std::size_t>> combos;
        combinations(c, s, combos);
        auto& list = by_size[s];
        for (auto& j : combos) {
            auto p = space.diff().profile(j);
            bool feasible = true;
            for (Residue r = 1; r < n && feasible; ++r) feasible = p.counts[r] <= v.lambda;
            if (feasible) list.push_back({std::move(j), std::move(p.counts)});
        }
    }

    std::vector<Candidate> hits;
    std::array<const Subset*, 4> chosen{};
    std::vector<std::vector<std::int64_t>> partial(5, std::vector<std::int64_t>(n, 0));
    auto recurse = [&](auto&& self, std::size_t k) -> void {
        if (k == 4) {
            for (Residue r = 1; r < n; ++r)
                if (partial[4][r] != v.lambda) return;
            Candidate cand;
            for (std::size_t q = 0; q < 4; ++q) cand.index_sets[q] = chosen[q]->blocks;
            confirm(space, cand.index_sets);
            if (cfg.on_hit) cfg.on_hit(space.realize(cand.index_sets));
            hits.push_back(std::move(cand));
            return;
        }
        for (const Subset& sub : by_size.at(v.sizes[k])) {
            bool ok = true;
            for (Residue r = 1; r < n; ++r) {
                partial[k + 1][r] = partial[k][r] + sub.profile[r];
                if (partial[k + 1][r] > v.lambda) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            chosen[k] = &sub;
            self(self, k + 1);
        }
    };
    recurse(recurse, 0);
    return hits;
}

// --------------------------------------------------------------------- local

class LocalSearch {
public:
    LocalSearch(const SearchConfig& cfg, const SearchSpace& space, const Validated& v)
        : cfg_(cfg), space_(space), diff_(space.diff()), n_(cfg.modulus.value()), c_(space.block_count()),
          lambda_(v.lambda), sizes_(v.sizes) {}

    bool verify_incremental = false;

    /// Runs one restart; returns the hit, if any.
    std::optional<IndexSets> run(std::uint32_t restart, std::uint64_t rng_seed, const IndexSets* start,
                                 std::mutex& io_mutex) {
        SplitMix64 rng(rng_seed);
        IndexSets init = start ? *start : random_start(rng);
        load(init);

        std::uint64_t best = obj_;
        std::uint64_t stagnant = 0;  // moves since the restart's best improved
        std::vector<std::vector<std::uint64_t>> tabu_add(4, std::vector<std::uint64_t>(c_, 0));
        std::vector<std::vector<std::uint64_t>> tabu_remove(4, std::vector<std::uint64_t>(c_, 0));
        std::vector<std::int64_t> delta(n_), best_delta(n_);

        for (std::uint64_t iter = 1; obj_ != 0 && iter <= cfg_.budget; ++iter) {
            struct Move {
                std::size_t k, out, in;
                std::uint64_t obj;
            };
            std::optional<Move> pick;
            std::uint64_t ties = 0;
            for (std::size_t k = 0; k < 4; ++k)
                for (std::size_t o : in_[k])
                    for (std::size_t i : out_[k]) {
                        std::uint64_t cand = evaluate(k, o, i, delta);
                        bool tabu = tabu_remove[k][o] > iter || tabu_add[k][i] > iter;
                        if (tabu && cand >= best) continue;
                        if (!pick || cand < pick->obj) {
                            pick = Move{k, o, i, cand};
                            ties = 1;
                        } else if (cand == pick->obj && cfg_.tie_break == TieBreak::random) {
                            if (rng.uniform_below(++ties) == 0) pick = Move{k, o, i, cand};
                        }
                    }
            if (!pick) break;
            if (pick->obj < best) {
                stagnant = 0;
            } else if (++stagnant > cfg_.max_sideways) {
                break;
            }
            evaluate(pick->k, pick->out, pick->in, best_delta);
            apply(pick->k, pick->out, pick->in, best_delta);
            tabu_add[pick->k][pick->out] = iter + cfg_.tabu_tenure;
            tabu_remove[pick->k][pick->in] = iter + cfg_.tabu_tenure;
            if (verify_incremental && objective(current(), diff_, lambda_) != obj_)
                throw std::logic_error("incremental objective diverged from full evaluation");
            best = std::min(best, obj_);
            if (cfg_.progress && cfg_.progress_interval && iter % cfg_.progress_interval == 0) {
                std::lock_guard lock(io_mutex);
                *cfg_.progress << "restart " << restart << " iter " << iter << " objective " << obj_
                               << " best " << best << '\n';
            }
        }
        if (cfg_.progress && cfg_.progress_interval) {
            std::lock_guard lock(io_mutex);
            *cfg_.progress << "restart " << restart << " done objective " << obj_ << " best " << best << '\n';
        }
        if (obj_ != 0) return std::nullopt;
        return current();
    }

private:
    IndexSets random_start(SplitMix64& rng) const {
        IndexSets j;
        for (std::size_t k = 0; k < 4; ++k) {
            std::vector<std::size_t> pool(c_);
            for (std::size_t x = 0; x < c_; ++x) pool[x] = x;
            for (std::size_t t = 0; t < sizes_[k]; ++t) {
                std::size_t pick = t + rng.uniform_below(c_ - t);
                std::swap(pool[t], pool[pick]);
            }
            j[k].assign(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(sizes_[k]));
            std::sort(j[k].begin(), j[k].end());
        }
        return j;
    }

    void load(const IndexSets& j) {
        for (std::size_t k = 0; k < 4; ++k) {
            if (j[k].size() != sizes_[k])
                throw std::invalid_argument("start index set " + std::to_string(k + 1) +
                                            " does not match the cardinality target");
            member_[k].assign(c_, 0);
            for (std::size_t x : j[k]) {
                if (x >= c_ || member_[k][x]) throw std::invalid_argument("invalid start index set");
                member_[k][x] = 1;
            }
            rebuild_lists(k);
            cross_[k].assign(c_ * n_, 0);
            for (std::size_t x = 0; x < c_; ++x)
                for (std::size_t y : in_[k]) add_pair(cross_[k].data() + x * n_, x, y, 1);
        }
        dev_.assign(n_, 0);
        for (std::size_t k = 0; k < 4; ++k) {
            auto p = diff_.profile(in_[k]);
            for (Residue r = 1; r < n_; ++r) dev_[r] += p.counts[r];
        }
        obj_ = 0;
        for (Residue r = 1; r < n_; ++r) {
            dev_[r] -= lambda_;
            obj_ += static_cast<std::uint64_t>(dev_[r] * dev_[r]);
        }
    }

    // dst += sign * (T(x, y) + T(y, x))
    void add_pair(std::int32_t* dst, std::size_t x, std::size_t y, int sign) const {
        const std::uint16_t* a = diff_.pair(x, y);
        const std::uint16_t* b = diff_.pair(y, x);
        for (Residue r = 1; r < n_; ++r) dst[r] += sign * (a[r] + b[r]);
    }

    void rebuild_lists(std::size_t k) {
        in_[k].clear();
        out_[k].clear();
        for (std::size_t x = 0; x < c_; ++x) (member_[k][x] ? in_[k] : out_[k]).push_back(x);
    }

    // Change of the set-k profile when block o leaves and block i joins:
    //   -P[o] + T(o,o) + P[i] - T(i,o) - T(o,i) + T(i,i)
    // with P[x] = sum_{j in J_k} (T(x,j) + T(j,x)).
    std::uint64_t evaluate(std::size_t k, std::size_t o, std::size_t i, std::vector<std::int64_t>& delta) const {
        const std::int32_t* po = cross_[k].data() + o * n_;
        const std::int32_t* pi = cross_[k].data() + i * n_;
        const std::uint16_t* too = diff_.pair(o, o);
        const std::uint16_t* tii = diff_.pair(i, i);
        const std::uint16_t* tio = diff_.pair(i, o);
        const std::uint16_t* toi = diff_.pair(o, i);
        std::int64_t change = 0;
        for (Residue r = 1; r < n_; ++r) {
            std::int64_t d = std::int64_t{pi[r]} - po[r] + too[r] + tii[r] - tio[r] - toi[r];
            delta[r] = d;
            change += d * (2 * dev_[r] + d);
        }
        return static_cast<std::uint64_t>(static_cast<std::int64_t>(obj_) + change);
    }

    void apply(std::size_t k, std::size_t o, std::size_t i, const std::vector<std::int64_t>& delta) {
        for (Residue r = 1; r < n_; ++r) dev_[r] += delta[r];
        obj_ = 0;
        for (Residue r = 1; r < n_; ++r) obj_ += static_cast<std::uint64_t>(dev_[r] * dev_[r]);
        for (std::size_t x = 0; x < c_; ++x) {
            std::int32_t* px = cross_[k].data() + x * n_;
            add_pair(px, x, o, -1);
            add_pair(px, x, i, 1);
        }
        member_[k][o] = 0;
        member_[k][i] = 1;
        rebuild_lists(k);
    }

    IndexSets current() const {
        IndexSets j;
        for (std::size_t k = 0; k < 4; ++k) j[k] = in_[k];
        return j;
    }

    const SearchConfig& cfg_;
    const SearchSpace& space_;
    const CosetDiffTable& diff_;
    Residue n_;
    std::size_t c_;
    std::int64_t lambda_;
    std::array<std::size_t, 4> sizes_;

    std::array<std::vector<std::uint8_t>, 4> member_;
    std::array<std::vector<std::size_t>, 4> in_, out_;
    std::array<std::vector<std::int32_t>, 4> cross_;
    std::vector<std::int64_t> dev_;
    std::uint64_t obj_ = 0;
};

std::vector<Candidate> run_local(const SearchConfig& cfg, const SearchSpace& space, const Validated& v,
                                 bool verify_incremental) {
    std::vector<std::uint64_t> seeds(cfg.restarts);
    SplitMix64 seeder(cfg.seed);
    for (auto& s : seeds) s = seeder.next();

    std::vector<std::optional<IndexSets>> found(cfg.restarts);
    std::mutex io_mutex;
    std::exception_ptr failure;
    auto worker = [&](unsigned w, unsigned stride) {
        try {
            LocalSearch ls(cfg, space, v);
            ls.verify_incremental = verify_incremental;
            for (std::uint32_t r = w; r < cfg.restarts; r += stride) {
                const IndexSets* start = (r == 0 && cfg.start) ? &*cfg.start : nullptr;
                auto hit = ls.run(r, seeds[r], start, io_mutex);
                if (!hit) continue;
                confirm(space, *hit);
                if (cfg.on_hit) {
                    std::lock_guard lock(io_mutex);
                    cfg.on_hit(space.realize(*hit));
                }
                found[r] = std::move(hit);
            }
        } catch (...) {
            std::lock_guard lock(io_mutex);
            if (!failure) failure = std::current_exception();
        }
    };
    const unsigned workers = std::max(1u, std::min<unsigned>(cfg.workers, cfg.restarts));
    if (workers == 1) {
        worker(0, 1);
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker, w, workers);
    }
    if (failure) std::rethrow_exception(failure);

    std::vector<Candidate> out;
    std::set<IndexSets> seen;
    for (auto& f : found)
        if (f && seen.insert(*f).second) out.push_back(Candidate{std::move(*f), 0});
    return out;
}

}  // namespace

namespace detail {
std::vector<Candidate> search_checked(const SearchConfig& cfg, bool verify_incremental) {
    SearchSpace space(cfg);
    Validated v = validate(cfg, space);
    auto hits = cfg.mode == SearchMode::exhaustive ? run_exhaustive(cfg, space, v)
                                                   : run_local(cfg, space, v, verify_incremental);
    if (!cfg.dedupe_equivalent) return hits;
    std::vector<Candidate> unique;
    std::set<CanonicalForm> classes;
    for (auto& h : hits)
        if (classes.insert(canonical_form(space.realize(h.index_sets))).second) unique.push_back(std::move(h));
    return unique;
}
}  // namespace detail

std::vector<Candidate> search(const SearchConfig& cfg) { return detail::search_checked(cfg, false); }

}  // namespace gsds
