#pragma once

#include "ntl/kernels.hpp"

namespace ntl::kernels::scalar {
void shifted_sum(const std::uint64_t* src, std::size_t len, std::size_t shift, std::uint64_t* dst);
void signed_dot(const std::int32_t* weights, std::size_t k, const std::uint32_t* masks,
                std::size_t count, std::int32_t* out);
std::size_t elimination_rank(double* a, std::size_t rows, std::size_t cols, std::size_t stride);
}  // namespace ntl::kernels::scalar

#if defined(NTL_HAVE_AVX2)
namespace ntl::kernels::avx2 {
void shifted_sum(const std::uint64_t* src, std::size_t len, std::size_t shift, std::uint64_t* dst);
void signed_dot(const std::int32_t* weights, std::size_t k, const std::uint32_t* masks,
                std::size_t count, std::int32_t* out);
std::size_t elimination_rank(double* a, std::size_t rows, std::size_t cols, std::size_t stride);
}  // namespace ntl::kernels::avx2
#endif
