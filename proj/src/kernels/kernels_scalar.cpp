#include <bit>

#include "wcdsc/bit_kernels.hpp"

namespace wcdsc::simd::detail {
namespace {

std::size_t popcount_scalar(const std::uint64_t* a, std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i]);
  return total;
}

std::size_t popcount_and_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t n) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < n; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

void and_into_scalar(std::uint64_t* dst, const std::uint64_t* a,
                     const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & b[i];
}

void andnot_into_scalar(std::uint64_t* dst, const std::uint64_t* a,
                        const std::uint64_t* b, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) dst[i] = a[i] & ~b[i];
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static const KernelTable table{popcount_scalar, popcount_and_scalar,
                                 and_into_scalar, andnot_into_scalar};
  return table;
}

}  // namespace wcdsc::simd::detail
