#include "wcdsc/bit_kernels.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <bit>

#define WCDSC_AVX2 __attribute__((target("avx2")))

namespace wcdsc::simd::detail {
namespace {

// Nibble-lookup popcount (Mula): per-byte counts via vpshufb, summed into
// 64-bit lanes with vpsadbw.
WCDSC_AVX2 inline __m256i popcount_bytes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(
      0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
      0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo),
                                         _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

WCDSC_AVX2 inline std::size_t horizontal_sum(__m256i acc) {
  return static_cast<std::size_t>(_mm256_extract_epi64(acc, 0)) +
         static_cast<std::size_t>(_mm256_extract_epi64(acc, 1)) +
         static_cast<std::size_t>(_mm256_extract_epi64(acc, 2)) +
         static_cast<std::size_t>(_mm256_extract_epi64(acc, 3));
}

WCDSC_AVX2 std::size_t popcount_avx2(const std::uint64_t* a, std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i v =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    acc = _mm256_add_epi64(acc, popcount_bytes(v));
  }
  std::size_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

WCDSC_AVX2 std::size_t popcount_and_avx2(const std::uint64_t* a,
                                         const std::uint64_t* b,
                                         std::size_t n) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_bytes(_mm256_and_si256(va, vb)));
  }
  std::size_t total = horizontal_sum(acc);
  for (; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

WCDSC_AVX2 void and_into_avx2(std::uint64_t* dst, const std::uint64_t* a,
                              const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_and_si256(va, vb));
  }
  for (; i < n; ++i) dst[i] = a[i] & b[i];
}

WCDSC_AVX2 void andnot_into_avx2(std::uint64_t* dst, const std::uint64_t* a,
                                 const std::uint64_t* b, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256i va =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb =
        _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    // andnot computes ~first & second
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(dst + i),
                        _mm256_andnot_si256(vb, va));
  }
  for (; i < n; ++i) dst[i] = a[i] & ~b[i];
}

}  // namespace

const KernelTable& avx2_table() noexcept {
  static const KernelTable table{popcount_avx2, popcount_and_avx2,
                                 and_into_avx2, andnot_into_avx2};
  return table;
}

}  // namespace wcdsc::simd::detail

#endif
