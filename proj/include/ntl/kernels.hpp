#pragma once

// Data-parallel inner loops, in a scalar reference form and an AVX2 form.
// The AVX2 table is picked at first use when the CPU supports it; both
// tables must produce bit-identical results (see tests/test_kernels.cpp).

#include <cstddef>
#include <cstdint>

namespace ntl::kernels {

/// dst[i] = src[i - shift] + src[i + shift], reading out-of-range as zero.
/// One step of the signed subset-sum counting recurrence.
using ShiftedSumFn = void (*)(const std::uint64_t* src, std::size_t len, std::size_t shift,
                              std::uint64_t* dst);

/// out[j] = sum_i weights[i] * s_i(masks[j]), where s_i = -1 when bit i is set
/// and +1 otherwise. Requires k <= 32 and |sum weights| < 2^31.
using SignedDotFn = void (*)(const std::int32_t* weights, std::size_t k,
                             const std::uint32_t* masks, std::size_t count, std::int32_t* out);

/// Rank of a row-major matrix of small integers held in doubles, by
/// fraction-free elimination. Overwrites `a`. Exact as long as every
/// product of two intermediate minors stays below 2^53; for +-1 input
/// that means min(rows, cols) <= kMaxExactF64Dim.
using EliminationRankFn = std::size_t (*)(double* a, std::size_t rows, std::size_t cols,
                                          std::size_t stride);

inline constexpr std::size_t kMaxExactF64Dim = 13;

struct KernelTable {
    const char* name;
    ShiftedSumFn shifted_sum;
    SignedDotFn signed_dot;
    EliminationRankFn elimination_rank;
};

const KernelTable& scalar_kernels();

/// nullptr when the AVX2 variants were not compiled in or the CPU lacks AVX2.
const KernelTable* avx2_kernels();

/// The table used by the library.
const KernelTable& active();

}  // namespace ntl::kernels
