#include "kernels_impl.hpp"

#include <cmath>
#include <utility>

namespace ntl::kernels::scalar {

void shifted_sum(const std::uint64_t* src, std::size_t len, std::size_t shift, std::uint64_t* dst) {
    for (std::size_t i = 0; i < len; ++i) {
        std::uint64_t acc = 0;
        if (i >= shift) acc += src[i - shift];
        if (i + shift < len) acc += src[i + shift];
        dst[i] = acc;
    }
}

void signed_dot(const std::int32_t* weights, std::size_t k, const std::uint32_t* masks,
                std::size_t count, std::int32_t* out) {
    std::int32_t total = 0;
    for (std::size_t i = 0; i < k; ++i) total += weights[i];
    for (std::size_t j = 0; j < count; ++j) {
        std::int32_t acc = total;
        std::uint32_t m = masks[j];
        for (std::size_t i = 0; i < k; ++i) {
            if ((m >> i) & 1u) acc -= 2 * weights[i];
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
        for (std::size_t i = rank + 1; i < rows; ++i) {
            double* row = a + i * stride;
            const double factor = row[c];
            for (std::size_t j = c + 1; j < cols; ++j) {
                row[j] = (row[j] * piv - factor * prow[j]) / prev;
            }
            row[c] = 0.0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

}  // namespace ntl::kernels::scalar
