#pragma once

// Search for supplementary difference sets built as unions of blocks: the
// cosets of an odd-order subgroup, or single residues when the subgroup is
// trivial.

#include <array>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <vector>

#include "gsds/residue_cosets.hpp"
#include "gsds/sds_core.hpp"

namespace gsds {

using IndexSets = std::array<std::vector<std::size_t>, 4>;

/// table(i, j, r) = #{(x, y) in B_i x B_j : x - y = r mod n} for r in 1..n-1;
/// r = 0 is stored as 0. For a union S = U_{i in J} B_i,
///   lambda_S(r) = sum_{i, j in J} table(i, j, r).
class CosetDiffTable {
public:
    CosetDiffTable(PrimeModulus modulus, const std::vector<std::vector<Residue>>& blocks);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    std::size_t block_count() const noexcept { return count_; }
    std::uint16_t operator()(std::size_t i, std::size_t j, Residue r) const {
        return table_[(i * count_ + j) * modulus_.value() + r];
    }
    /// The n-long row for the pair (i, j).
    const std::uint16_t* pair(std::size_t i, std::size_t j) const {
        return table_.data() + (i * count_ + j) * modulus_.value();
    }
    /// lambda profile of the union of the blocks in J.
    LambdaProfile profile(const std::vector<std::size_t>& index_set) const;

private:
    PrimeModulus modulus_;
    std::size_t count_;
    std::vector<std::uint16_t> table_;
};

CosetDiffTable build_diff_table(const CosetTable& table);

struct Candidate {
    IndexSets index_sets;
    std::uint64_t objective = 0;

    friend bool operator==(const Candidate&, const Candidate&) = default;
};

/// sum_r (sum_k lambda_k(r) - lambda)^2; zero iff the realized family is an SDS.
std::uint64_t objective(const IndexSets& index_sets, const CosetDiffTable& diff, std::int64_t lambda);

enum class SearchMode { exhaustive, local };
enum class TieBreak { random, lexicographic };

struct SearchConfig {
    PrimeModulus modulus{3};
    /// 1 selects single residues 0..n-1 as blocks; otherwise the cosets of <generator>.
    Residue generator = 1;
    CardinalityTargets targets{};
    SearchMode mode = SearchMode::local;
    /// Local: accepted moves per restart. Exhaustive: cap on the number of
    /// 4-tuples in the search space.
    std::uint64_t budget = 100000;
    std::uint32_t restarts = 1;
    std::uint64_t seed = 764;
    unsigned workers = 1;
    /// Moves that leave the restart's best objective unimproved (sideways or
    /// uphill) allowed in a row before the restart ends.
    std::uint64_t max_sideways = 2000;
    /// Moves that would undo a swap are refused for this many iterations.
    std::uint32_t tabu_tenure = 10;
    TieBreak tie_break = TieBreak::random;
    /// Starting point of restart 0 (later restarts are random).
    std::optional<IndexSets> start;
    /// Keep only one family per equivalence class in the output.
    bool dedupe_equivalent = false;
    /// Progress line every this many iterations (0 disables).
    std::uint64_t progress_interval = 0;
    std::ostream* progress = nullptr;
    /// Called once per accepted hit, in discovery order.
    std::function<void(const SdsFamily&)> on_hit;
};

/// The blocks a configuration searches over, with their difference table.
class SearchSpace {
public:
    explicit SearchSpace(const SearchConfig& cfg);

    const PrimeModulus& modulus() const noexcept { return modulus_; }
    bool uses_cosets() const noexcept { return cosets_.has_value(); }
    std::size_t block_count() const noexcept { return blocks_.size(); }
    std::size_t block_size() const noexcept { return blocks_.front().size(); }
    const std::vector<std::vector<Residue>>& blocks() const noexcept { return blocks_; }
    const CosetDiffTable& diff() const noexcept { return diff_; }

    /// Residue sets of a candidate; coset provenance is attached in coset mode.
    SdsFamily realize(const IndexSets& index_sets) const;

private:
    PrimeModulus modulus_;
    std::optional<CosetTable> cosets_;
    std::vector<std::vector<Residue>> blocks_;
    CosetDiffTable diff_;
};

/// 64-bit SplitMix generator. Search randomness is fully specified by it:
///   restart r draws its state from the (r+1)-th output of SplitMix64(seed);
///   uniform_below(b) rejects draws >= 2^64 - (2^64 mod b) and returns x mod b.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) noexcept : state_(seed) {}
    std::uint64_t next() noexcept;
    std::uint64_t uniform_below(std::uint64_t bound) noexcept;

private:
    std::uint64_t state_;
};

/// Throws std::invalid_argument for inconsistent targets or an exhaustive
/// space larger than cfg.budget. Returned candidates all have objective 0 and
/// passed verify_sds. Exhaustive results are in lexicographic order of the
/// index sets; local results are in restart order, deduplicated.
std::vector<Candidate> search(const SearchConfig& cfg);

namespace detail {
/// search() that, with verify_incremental set, re-evaluates the objective from
/// scratch after every accepted local move and throws std::logic_error on any
/// disagreement with the incremental value.
std::vector<Candidate> search_checked(const SearchConfig& cfg, bool verify_incremental);
}  // namespace detail

}  // namespace gsds
