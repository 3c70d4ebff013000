#pragma once

// Littlewood-Offord style bounds on |lambda^{perp B}| and tables of novel
// partitions ranked by r_lambda.

#include "ntl/partition.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace ntl {

/// C(k, floor(k/2)).
mpz_class elo_bound(std::size_t k);

/// Sum of the r largest binomial coefficients C(k, j).
mpz_class erdos_interval_bound(std::size_t k, std::size_t r);

/// Bound on |lambda^{perp B}| for k parts not all equal: erdos_interval_bound(k-2, 4).
mpz_class not_all_equal_bound(std::size_t k);

struct RankedRow {
    std::size_t index = 0;  // 1-based
    Partition partition;
    DyadicProbability r;
    std::string provenance;  // "proved" (length <= 7) or "conjectured"

    std::size_t length() const { return partition.size(); }
    std::string scaled() const { return r.scaled256(); }
};

/// Total order on rows: r descending, then length, then sum of parts, then
/// parts lexicographically (all ascending).
bool ranked_before(const Partition& a, const DyadicProbability& ra, const Partition& b,
                   const DyadicProbability& rb);

/// Deduplicates `candidates`, keeps r >= r_min and sorts. Candidates are
/// taken as given; novelty is the caller's responsibility.
std::vector<RankedRow> ranked_table(const std::vector<Partition>& candidates, const mpq_class& r_min);

/// Known novel partitions of length <= 8 together with every novel partition
/// with parts <= 3 and length <= max_len whose r is at least r_min.
std::vector<Partition> table_candidates(const mpq_class& r_min, std::size_t max_len = 28,
                                        std::size_t jobs = 0);

std::string ranked_table_csv(const std::vector<RankedRow>& rows);

struct RunnerUpReport {
    std::size_t k = 0;
    std::uint32_t part_bound = 0;
    std::size_t scanned = 0;  // gcd-1 partitions examined
    std::uint64_t best_size = 0;
    std::vector<Partition> best;
    std::uint64_t second_size = 0;
    std::vector<Partition> second;

    bool claim_applies = false;     // k >= 4 even, or k >= 7 odd
    std::string claimed_best;       // empty when there is no claim about first place
    std::string claimed_second;
    bool best_matches = false;
    bool second_contains_claim = false;
    bool second_unique = false;
    bool holds_in_scope = false;
};

/// Exhaustive over partitions with exactly k parts, parts <= part_bound and
/// gcd 1. Results are bounded evidence only. Needs k <= 10 and part_bound <= 6.
RunnerUpReport runner_up_scan(std::size_t k, std::uint32_t part_bound);

/// Calls visit for every partition with exactly k parts, each <= max_part.
void for_each_partition(std::size_t k, std::uint32_t max_part, const std::function<void(const Partition&)>& visit);

struct BandCheck {
    std::string label;
    mpq_class bound;
    std::size_t checked = 0;
    bool holds = true;
    std::vector<std::string> violations;
};

/// The r_lambda bands for novel partitions outside the first eight, checked on `catalog`.
std::vector<BandCheck> lemma_band_checks(const std::vector<Partition>& catalog);

/// The eight novel partitions with the largest r_lambda.
std::vector<Partition> first_eight();

}  // namespace ntl
