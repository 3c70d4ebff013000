#pragma once

// Exact rank and left kernels of integer matrices.
//
// Vectors are reduced one at a time into a row-echelon basis whose rows are
// kept primitive. Every partially reduced vector is then a primitive vector on
// a line cut out by Cramer's rule, so its entries are bounded by the Hadamard
// bound s^{s/2} of an s x s +-1 minor and every intermediate product by s^s.
// That picks the integer type: int64 for s <= 15, __int128 for s <= 26, GMP
// beyond.

#include "ntl/partition.hpp"

#include <gmpxx.h>

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <variant>
#include <vector>

namespace ntl {

using Int128 = __int128;

inline constexpr std::size_t kMaxInt64Dim = 15;
inline constexpr std::size_t kMaxInt128Dim = 26;

template <class Int>
class EchelonBasis {
public:
    explicit EchelonBasis(std::size_t dim) : dim_(dim) {}

    std::size_t dim() const { return dim_; }
    std::size_t rank() const { return rows_.size(); }

    /// Adds `v` (length dim); returns true when the rank grew.
    bool add(std::span<const std::int64_t> v);

    /// Rows in pivot order, each primitive with positive pivot entry.
    const std::vector<std::vector<Int>>& rows() const { return rows_; }
    const std::vector<std::size_t>& pivots() const { return pivots_; }

private:
    std::size_t dim_;
    std::vector<std::vector<Int>> rows_;
    std::vector<std::size_t> pivots_;
    std::vector<Int> scratch_;
};

extern template class EchelonBasis<std::int64_t>;
extern template class EchelonBasis<Int128>;
extern template class EchelonBasis<mpz_class>;

/// Rank of the span of integer vectors of a fixed length fed one at a time,
/// with an integer type chosen from the length.
class StreamingRank {
public:
    explicit StreamingRank(std::size_t dim);

    std::size_t dim() const { return dim_; }
    std::size_t rank() const;
    bool add(std::span<const std::int64_t> v);
    /// Adds the sign vector of `mask` (bit set = -1) of length dim.
    bool add_signs(Mask mask);

    /// The current basis rows as big integers.
    std::vector<std::vector<mpz_class>> basis() const;

private:
    std::size_t dim_;
    std::variant<EchelonBasis<std::int64_t>, EchelonBasis<Int128>, EchelonBasis<mpz_class>> impl_;
    std::vector<std::int64_t> buf_;
};

/// Primitive integer basis of the orthogonal complement of the row span of
/// `rows` (each of length dim). Each vector has positive leading entry.
std::vector<std::vector<mpz_class>> orthogonal_complement(const std::vector<std::vector<mpz_class>>& rows,
                                                          std::size_t dim);

/// Exact rank over Q.
std::size_t rank_of(const SignMatrix& m);

/// Integer basis of { v : v M = 0 }.
std::vector<std::vector<mpz_class>> left_kernel_basis(const SignMatrix& m);

/// The primitive v with v M = 0 when that kernel is one-dimensional, else none.
/// Throws InfeasibleSize if an entry does not fit in int64.
std::optional<std::vector<std::int64_t>> kernel_primitive(const SignMatrix& m);

/// Divides by the content and makes the leading nonzero entry positive.
void make_primitive(std::vector<mpz_class>& v);
void make_primitive(std::vector<std::int64_t>& v);

std::vector<std::int64_t> to_int64(const std::vector<mpz_class>& v);

}  // namespace ntl
