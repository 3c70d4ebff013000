#pragma once

// Partitions, sign vectors, Bernoulli orthogonal complements and r_lambda.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ntl {

using Mask = std::uint32_t;

inline constexpr std::size_t kMaxParts = 32;
inline constexpr std::uint32_t kMaxPartValue = 1u << 16;

/// Nonincreasing list of positive parts, 1 <= k <= 32, each part <= 2^16.
class Partition {
public:
    /// Throws DomainError unless `parts` is already a valid partition.
    explicit Partition(std::vector<std::uint32_t> parts);

    /// Absolute values with zeros dropped, sorted nonincreasing.
    static Partition from_values(const std::vector<std::int64_t>& values);

    /// Accepts "2,2,1,1", "2^2,1^2" and mixtures; whitespace is ignored.
    static Partition parse(std::string_view text);

    /// One decimal digit per part: "221111".
    static Partition from_digits(std::string_view digits);

    const std::vector<std::uint32_t>& parts() const { return parts_; }
    std::size_t size() const { return parts_.size(); }
    std::uint32_t operator[](std::size_t i) const { return parts_[i]; }
    std::uint32_t largest() const { return parts_.front(); }

    std::uint64_t sum() const;
    std::uint32_t gcd() const;

    /// (value, count) pairs, largest value first.
    std::vector<std::pair<std::uint32_t, std::uint32_t>> multiplicities() const;

    /// "2,2,1,1,1,1"
    std::string to_string() const;

    /// "221111" when every part is a single digit, otherwise to_string().
    std::string compact() const;

    std::strong_ordering operator<=>(const Partition& other) const = default;
    bool operator==(const Partition& other) const = default;

private:
    std::vector<std::uint32_t> parts_;
};

/// x in {-1,+1}^k packed in a mask: bit i set means x_{i+1} = -1.
struct SignVector {
    std::uint32_t k = 0;
    Mask mask = 0;

    int operator[](std::size_t i) const { return (mask >> i) & 1u ? -1 : 1; }
    bool normalized() const { return (mask & 1u) == 0; }
    SignVector negated() const;

    /// Key whose natural order is the coordinate-wise order with + before -,
    /// comparing the first coordinate first.
    std::uint32_t lex_key() const;

    std::int64_t dot(const Partition& lambda) const;
    std::string to_string() const;  // "+--+"

    auto operator<=>(const SignVector& other) const { return lex_key() <=> other.lex_key(); }
    bool operator==(const SignVector& other) const = default;
};

/// The normalized half of lambda^{perp B}, in lexicographic order.
struct Complement {
    std::uint32_t k = 0;
    std::vector<Mask> masks;

    std::size_t p() const { return masks.size(); }
    SignVector at(std::size_t i) const { return {k, masks[i]}; }
};

/// Lazily yields the normalized complement in lexicographic order. Memory is
/// O(k * sum(lambda) / 64) words for the suffix reachability sets.
class ComplementStream {
public:
    explicit ComplementStream(const Partition& lambda);

    /// Writes the next mask and returns true, or returns false when done.
    bool next(Mask& out);

private:
    bool reachable(std::size_t from, std::int64_t target) const;

    std::vector<std::uint32_t> parts_;
    std::int64_t total_ = 0;
    std::size_t words_ = 0;
    std::vector<std::uint64_t> reach_;  // (k + 1) bitsets over [-total, total]

    struct Frame {
        std::int64_t sum;
        std::uint8_t tried;  // 0: none, 1: plus, 2: both
    };
    std::vector<Frame> stack_;
    Mask current_ = 0;
    bool started_ = false;
    bool done_ = false;
};

Complement complement(const Partition& lambda);

/// numerator / 2^exponent, always stored in lowest terms.
class DyadicProbability {
public:
    DyadicProbability() = default;
    DyadicProbability(mpz_class numerator, std::uint32_t exponent);

    const mpz_class& numerator() const { return numerator_; }
    std::uint32_t exponent() const { return exponent_; }
    mpq_class value() const;

    /// "7/32"; "0" and "1" for the endpoints.
    std::string fraction() const;
    /// Exact terminating decimal, e.g. "0.21875".
    std::string decimal() const;
    /// Exact decimal of 256 * value, e.g. "57.75", "128".
    std::string scaled256() const;

    std::strong_ordering operator<=>(const DyadicProbability& other) const;
    bool operator==(const DyadicProbability& other) const;

private:
    mpz_class numerator_ = 0;
    std::uint32_t exponent_ = 0;
};

/// Exact decimal expansion of m / 2^e (always terminates).
std::string dyadic_decimal(const mpz_class& m, std::uint32_t e);

/// Number of x in {-1,1}^k with lambda . x = 0, by signed subset-sum counting.
std::uint64_t complement_size(const Partition& lambda);

/// P(lambda . X = 0) for uniform X.
DyadicProbability r_lambda(const Partition& lambda);

/// |V_lambda^{(n)}| = 2^{k-1} (n)_k / prod c(i)!. Throws DomainError if n < k.
mpz_class count_template_vectors(const Partition& lambda, std::size_t n);

/// Calls `visit` once per element of V_lambda^{(n)}. Throws DomainError if n < k.
void for_each_template_vector(const Partition& lambda, std::size_t n,
                              const std::function<void(const std::vector<std::int64_t>&)>& visit);

std::vector<std::vector<std::int64_t>> template_vectors(const Partition& lambda, std::size_t n);

/// True iff `v` is in V_lambda^{(n)} for its own length n.
bool has_template(const std::vector<std::int64_t>& v, const Partition& lambda);

/// Dense matrix of +-1 entries, row-major.
class SignMatrix {
public:
    SignMatrix() = default;
    SignMatrix(std::size_t rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    int at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    void set(std::size_t r, std::size_t c, int v) { data_[r * cols_ + c] = static_cast<std::int8_t>(v); }
    const std::int8_t* row(std::size_t r) const { return data_.data() + r * cols_; }

    SignMatrix transposed() const;

    /// Rows as strings of '+' and '-'.
    std::vector<std::string> to_strings() const;
    static SignMatrix from_strings(const std::vector<std::string>& rows);

    bool operator==(const SignMatrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::int8_t> data_;
};

/// k x p matrix of complement columns. Throws DomainError when p = 0.
SignMatrix a_matrix(const Partition& lambda);

}  // namespace ntl
