#include "kernels_impl.hpp"

#include <immintrin.h>

#include <utility>

namespace ntl::kernels::avx2 {

void shifted_sum(const std::uint64_t* src, std::size_t len, std::size_t shift, std::uint64_t* dst) {
    // Both taps are in range only on [shift, len - shift); the edges go scalar.
    const std::size_t lo = shift < len ? shift : len;
    const std::size_t hi = len > shift ? len - shift : 0;
    for (std::size_t i = 0; i < lo; ++i) dst[i] = i + shift < len ? src[i + shift] : 0;
    std::size_t i = lo;
    if (hi > lo) {
        for (; i + 4 <= hi; i += 4) {
            const __m256i left = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i - shift));
            const __m256i right = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(src + i + shift));
            _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i), _mm256_add_epi64(left, right));
        }
        for (; i < hi; ++i) dst[i] = src[i - shift] + src[i + shift];
    }
    for (i = hi > lo ? hi : lo; i < len; ++i) dst[i] = src[i - shift];
}

void signed_dot(const std::int32_t* weights, std::size_t k, const std::uint32_t* masks,
                std::size_t count, std::int32_t* out) {
    std::int32_t total = 0;
    for (std::size_t i = 0; i < k; ++i) total += weights[i];

    const __m256i one = _mm256_set1_epi32(1);
    const __m256i base = _mm256_set1_epi32(total);
    std::size_t j = 0;
    for (; j + 8 <= count; j += 8) {
        const __m256i m = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(masks + j));
        __m256i acc = base;
        for (std::size_t i = 0; i < k; ++i) {
            const __m256i bit = _mm256_and_si256(_mm256_srli_epi32(m, static_cast<int>(i)), one);
            const __m256i sel = _mm256_cmpeq_epi32(bit, one);
            acc = _mm256_sub_epi32(acc, _mm256_and_si256(sel, _mm256_set1_epi32(2 * weights[i])));
        }
        _mm256_storeu_si256(reinterpret_cast<__m256i*>(out + j), acc);
    }
    for (; j < count; ++j) {
        std::int32_t acc = total;
        for (std::size_t i = 0; i < k; ++i) {
            if ((masks[j] >> i) & 1u) acc -= 2 * weights[i];
        }
        out[j] = acc;
    }
}

std::size_t elimination_rank(double* a, std::size_t rows, std::size_t cols, std::size_t stride) {
    std::size_t rank = 0;
    double prev = 1.0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot_row = rank;
        while (pivot_row < rows && a[pivot_row * stride + c] == 0.0) ++pivot_row;
        if (pivot_row == rows) continue;
        if (pivot_row != rank) {
            for (std::size_t j = c; j < cols; ++j)
                std::swap(a[pivot_row * stride + j], a[rank * stride + j]);
        }
        const double* prow = a + rank * stride;
        const double piv = prow[c];
        const __m256d vpiv = _mm256_set1_pd(piv);
        const __m256d vprev = _mm256_set1_pd(prev);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            double* row = a + i * stride;
            const double factor = row[c];
            const __m256d vfactor = _mm256_set1_pd(factor);
            std::size_t j = c + 1;
            for (; j + 4 <= cols; j += 4) {
                const __m256d x = _mm256_loadu_pd(row + j);
                const __m256d y = _mm256_loadu_pd(prow + j);
                const __m256d num = _mm256_sub_pd(_mm256_mul_pd(x, vpiv), _mm256_mul_pd(vfactor, y));
                _mm256_storeu_pd(row + j, _mm256_div_pd(num, vprev));
            }
            for (; j < cols; ++j) row[j] = (row[j] * piv - factor * prow[j]) / prev;
            row[c] = 0.0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

}  // namespace ntl::kernels::avx2
