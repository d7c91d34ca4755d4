#include "wcdsc/bit_kernels.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>

#include <bit>

namespace wcdsc::simd::detail {
namespace {

inline std::size_t count_vector(uint64x2_t v) {
  return vaddvq_u8(vcntq_u8(vreinterpretq_u8_u64(v)));
}

std::size_t popcount_neon(const std::uint64_t* a, std::size_t n) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) total += count_vector(vld1q_u64(a + i));
  for (; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::size_t popcount_and_neon(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t n) {
  std::size_t total = 0;
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    total += count_vector(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

void and_into_neon(std::uint64_t* dst, const std::uint64_t* a,
                   const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2)
    vst1q_u64(dst + i, vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

void andnot_into_neon(std::uint64_t* dst, const std::uint64_t* a,
                      const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  // vbicq computes first & ~second
  for (; i + 2 <= n; i += 2)
    vst1q_u64(dst + i, vbicq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

}  // namespace

const KernelTable& neon_table() noexcept {
  static const KernelTable table{popcount_neon, popcount_and_neon,
                                 and_into_neon, andnot_into_neon};
  return table;
}

}  // namespace wcdsc::simd::detail

#endif
