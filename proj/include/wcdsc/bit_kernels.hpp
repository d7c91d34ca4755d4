#pragma once

// Word-parallel kernels over packed 64-bit bitsets.
//
// Conditional ambiguity sets are stored as bitsets over tuple indices and
// every bit location of the concatenated codeword has a column bitset (the
// tuples whose codeword holds a 1 there). Counting N^1 at a location and
// conditioning on a response are then AND / ANDNOT / popcount sweeps, which
// is where the solvers and protocol engine spend their time.
//
// A scalar reference implementation is always present. AVX2 (x86-64) and
// NEON (AArch64) variants are compiled when the target supports them and
// selected at runtime; WCDSC_SIMD=scalar|avx2|neon in the environment
// overrides the choice on first use.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace wcdsc::simd {

enum class Backend { scalar, avx2, neon };

std::string_view backend_name(Backend backend) noexcept;

struct KernelTable {
  std::size_t (*popcount)(const std::uint64_t* a, std::size_t n);
  std::size_t (*popcount_and)(const std::uint64_t* a, const std::uint64_t* b,
                              std::size_t n);
  // dst = a & b
  void (*and_into)(std::uint64_t* dst, const std::uint64_t* a,
                   const std::uint64_t* b, std::size_t n);
  // dst = a & ~b
  void (*andnot_into)(std::uint64_t* dst, const std::uint64_t* a,
                      const std::uint64_t* b, std::size_t n);
};

bool backend_available(Backend backend) noexcept;

// Kernel table of a specific backend. Throws std::invalid_argument when the
// backend is not available on this machine.
const KernelTable& kernels_for(Backend backend);

// Kernel table selected for this process.
const KernelTable& kernels() noexcept;
Backend active_backend() noexcept;

// Pins the process-wide backend. Not thread-safe against concurrent kernel
// use; intended for start-up and tests.
void force_backend(Backend backend);

inline std::size_t popcount(std::span<const std::uint64_t> a) noexcept {
  return kernels().popcount(a.data(), a.size());
}

inline std::size_t popcount_and(std::span<const std::uint64_t> a,
                                std::span<const std::uint64_t> b) noexcept {
  return kernels().popcount_and(a.data(), b.data(), a.size());
}

inline void and_into(std::span<std::uint64_t> dst,
                     std::span<const std::uint64_t> a,
                     std::span<const std::uint64_t> b) noexcept {
  kernels().and_into(dst.data(), a.data(), b.data(), dst.size());
}

inline void andnot_into(std::span<std::uint64_t> dst,
                        std::span<const std::uint64_t> a,
                        std::span<const std::uint64_t> b) noexcept {
  kernels().andnot_into(dst.data(), a.data(), b.data(), dst.size());
}

namespace detail {
const KernelTable& scalar_table() noexcept;
#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table() noexcept;
#endif
#if defined(__aarch64__)
const KernelTable& neon_table() noexcept;
#endif
}  // namespace detail

}  // namespace wcdsc::simd
