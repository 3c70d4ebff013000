#pragma once

// Novelty of partitions: rank of the complement matrix, the reduction and
// equivalence relations, exhaustive enumeration for short lengths, and the
// corank-one witness matrices.

#include "ntl/linalg.hpp"
#include "ntl/partition.hpp"

#include <cstddef>
#include <cstdint>
#include <vector>

namespace ntl {

struct NoveltyCertificate {
    bool novel = false;
    std::size_t rank = 0;
    std::uint32_t gcd = 0;
    std::uint64_t p = 0;
};

enum class RankStrategy {
    Automatic,  // Stream for k <= kStreamMaxLength, Certify above
    Stream,     // every complement column in lexicographic order, stopping at rank k-1
    Certify,    // grow a spanning set and prove it complete by meet-in-the-middle search
};

inline constexpr std::size_t kStreamMaxLength = 20;

/// rank(A^(lambda)); 0 when p = 0.
std::size_t complement_rank(const Partition& lambda, RankStrategy strategy = RankStrategy::Automatic);

NoveltyCertificate is_novel(const Partition& lambda, RankStrategy strategy = RankStrategy::Automatic);

/// Some pair of rows of A^(lambda) is equal or opposite. DomainError if p = 0.
bool implies_11(const Partition& lambda);

/// mu => lambda: some I with |I| = len(lambda) and v in V_lambda have
/// Proj_I mu^perp contained in v^perp. Needs len(mu) >= len(lambda) and
/// len(mu) <= 8.
bool reduces(const Partition& mu, const Partition& lambda);

/// Some w in V_mu has w^perp = lambda^perp. Needs equal lengths <= 8.
bool equivalent(const Partition& lambda, const Partition& mu);

inline constexpr std::size_t kMaxEnumerationLength = 7;
inline constexpr std::size_t kMaxRelationLength = 8;

/// All novel partitions of length k (2 <= k <= 7), sorted ascending.
/// Output does not depend on `jobs` (0 = default worker count).
std::vector<Partition> enumerate_novel(std::size_t k, std::size_t jobs = 0);

/// Square +-1 matrix of corank 1 whose primitive left null vector has template lambda.
struct WitnessMatrix {
    SignMatrix entries;
    std::vector<std::int64_t> kernel;
    bool padded = false;  // built by repeating a column (p <= k)

    std::size_t side() const { return entries.rows(); }
};

/// DomainError unless lambda is novel; VerificationError if the construction
/// fails its own check.
WitnessMatrix minimal_witness(const Partition& lambda);

/// Recomputes corank and kernel template; throws VerificationError on mismatch.
void verify_witness(const WitnessMatrix& w, const Partition& lambda);

}  // namespace ntl
