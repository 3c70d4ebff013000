#pragma once

// Exact main terms of the lower-bound expansion for P_n, the inclusion-
// exclusion moments of the template-11 count W, pairwise intersection
// bounds, and conditional ratios given no small right null vectors.

#include "ntl/partition.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <vector>

namespace ntl {

struct ExpansionTerm {
    Partition partition;  // the template whose r_lambda is the rate
    mpq_class rate;
};

/// The eight terms in order of decreasing rate: 11, 1111, 1^6, 1^8, 21111, 1^10, 21^6, 1^12.
const std::vector<ExpansionTerm>& expansion_terms();

/// Q_1(n) .. Q_8(n). Needs n >= 2.
std::vector<mpz_class> q_values(std::size_t n);

/// sum_i Q_i(n) rate_i^n.
mpq_class e8_estimate(std::size_t n);

/// 4 C(n,2) 2^{-n} - (12 C(n,2)^2 - 4 C(n,2)) 4^{-n}.
mpq_class d11_lower_bound(std::size_t n);

struct MomentTriple {
    mpq_class ew;   // E W
    mpq_class ew2;  // E C(W,2)
    mpq_class ew3;  // E C(W,3)
};

/// The closed forms for the moments of W, the number of template-11 null
/// vectors (either side).
MomentTriple ie_moments(std::size_t n);

/// t = 2 C(n,2) 2^{-n}, the expected number of template-11 null vectors on one side.
mpq_class ie_t(std::size_t n);

struct BonferroniBounds {
    mpq_class lower;
    mpq_class upper;
};

/// upper = sum of singles; lower = singles - pairs - cross, where `cross`
/// holds P(A_a and B_b) against a second family B when bounding P(A \ B).
BonferroniBounds bonferroni_bounds(const std::vector<mpq_class>& singles, const std::vector<mpq_class>& pairs,
                                   const std::vector<mpq_class>& cross = {});

/// Lower bound t - G1 - G2 on P(R11 \ L11).
mpq_class r11_minus_l11_bound(std::size_t n);

struct PairReport {
    Partition lambda;
    Partition mu;
    std::size_t configurations = 0;  // (overlap, w) cases evaluated
    mpq_class max_joint;             // max P(v.X = 0 and w.X = 0)
    mpq_class bound;                 // max(r_lambda, r_mu) / 2
    mpq_class max_ratio;             // max_joint / bound
    std::vector<std::int64_t> worst_v;
    std::vector<std::int64_t> worst_w;
    bool holds = false;
};

inline constexpr std::size_t kMaxPairSupport = 14;

/// Exhaustive over all relative placements of a lambda-template and a
/// mu-template on a common support. Needs lambda != mu and
/// len(lambda) + len(mu) <= 14.
PairReport pair_intersection_check(const Partition& lambda, const Partition& mu, std::size_t jobs = 0);

/// (p)_n / p^n for novel lambda of length n, with 2p = |lambda^{perp B}|.
mpq_class conditional_ratio_r11(const Partition& lambda, std::size_t n);

/// (p)_n / p^n + C(n,2) (p)_{n-1} / (2p p^{n-1}) for novel lambda of length n - 1.
mpq_class conditional_ratio_r11_r1111(const Partition& lambda, std::size_t n);

/// (p)_n.
mpz_class falling_factorial(std::uint64_t p, std::size_t n);

/// (C(n,2)^2 - C(n,2)) / 2 == 3 C(n,4) + 3 C(n,3).
bool lemma_trivial(std::size_t n);

}  // namespace ntl
