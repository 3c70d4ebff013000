#pragma once

// Ground truth from small random sign matrices: exact singularity and event
// probabilities by exhaustive enumeration, and seeded Monte Carlo surveys of
// the templates of left null vectors.

#include "ntl/expansion.hpp"
#include "ntl/partition.hpp"
#include "ntl/rng.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ntl {

/// n x n sign matrix stored as bit rows: bit c of row r set means entry -1.
class BernoulliMatrix {
public:
    explicit BernoulliMatrix(std::size_t n);
    BernoulliMatrix(std::size_t n, std::vector<std::uint32_t> rows);

    static BernoulliMatrix from_sign_matrix(const SignMatrix& m);

    /// Row r is the low n bits of the r-th draw.
    static BernoulliMatrix sample(SplitMix64& rng, std::size_t n);

    std::size_t n() const { return n_; }
    const std::vector<std::uint32_t>& rows() const { return rows_; }
    int at(std::size_t r, std::size_t c) const { return (rows_[r] >> c) & 1u ? -1 : 1; }

    SignMatrix to_sign_matrix() const;
    BernoulliMatrix transposed() const;

private:
    std::size_t n_;
    std::vector<std::uint32_t> rows_;
};

inline constexpr std::size_t kMaxMatrixDim = 32;
inline constexpr std::size_t kMaxExhaustiveDim = 6;
inline constexpr std::size_t kMaxFullEnumerationDim = 4;

struct KernelInfo {
    std::size_t corank = 0;
    std::optional<std::vector<std::int64_t>> kernel;  // primitive left null vector when corank = 1
};

KernelInfo integer_corank_and_kernel(const BernoulliMatrix& m);

enum class Enumeration {
    Normalized,  // first row and first column all +1; 2^{(n-1)^2} matrices
    Full,        // all 2^{n^2} matrices; n <= 4
};

/// P(M_n singular). 0 for n = 1. Needs n <= 6.
mpq_class exact_pn(std::size_t n, Enumeration mode = Enumeration::Normalized, std::size_t jobs = 0);

struct EventStats {
    std::size_t n = 0;
    std::uint64_t matrices = 0;        // normalized matrices enumerated
    mpq_class pn;                      // P(singular)
    mpq_class p_d11;                   // P(W > 0)
    std::vector<mpq_class> w_distribution;  // P(W = j), j = 0..2 C(n,2)
    MomentTriple moments;              // E W, E C(W,2), E C(W,3)
    mpq_class p_e8_union;              // P(null vector on either side with one of the eight expansion templates)
    mpq_class p_r11_minus_l11;         // P(two columns equal or opposite, but no two rows)
};

/// Exhaustive over normalized matrices; 2 <= n <= 6.
EventStats exact_event_stats(std::size_t n, std::size_t jobs = 0);

inline constexpr std::uint64_t kSurveyShardSize = 65536;

struct SurveyReport {
    std::size_t n = 0;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t singular = 0;
    std::uint64_t corank_ge2 = 0;
    std::map<Partition, std::uint64_t> histogram;  // corank-1 templates
    std::vector<Partition> unclassified;           // templates that are not known novel partitions
    std::string rng;                               // how every sample was generated

    /// Template with the largest count; ties go to the smallest partition.
    std::optional<Partition> mode() const;
};

/// Samples `samples` uniform n x n matrices in shards of kSurveyShardSize and
/// records the template of each corank-1 left kernel. The report does not
/// depend on `jobs`. Needs 1 <= n <= 32 and samples >= 1.
SurveyReport survey(std::size_t n, std::uint64_t samples, std::uint64_t seed, std::size_t jobs = 0);

}  // namespace ntl
