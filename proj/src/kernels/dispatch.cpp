#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "wcdsc/bit_kernels.hpp"

namespace wcdsc::simd {
namespace {

bool cpu_has_avx2() noexcept {
#if (defined(__x86_64__) || defined(_M_X64)) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Backend best_available() noexcept {
  if (backend_available(Backend::avx2)) return Backend::avx2;
  if (backend_available(Backend::neon)) return Backend::neon;
  return Backend::scalar;
}

Backend initial_backend() noexcept {
  if (const char* env = std::getenv("WCDSC_SIMD")) {
    const std::string_view wanted(env);
    for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
      if (wanted == backend_name(b) && backend_available(b)) return b;
    }
  }
  return best_available();
}

std::atomic<Backend>& active() noexcept {
  static std::atomic<Backend> backend{initial_backend()};
  return backend;
}

}  // namespace

std::string_view backend_name(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

bool backend_available(Backend backend) noexcept {
  switch (backend) {
    case Backend::scalar: return true;
    case Backend::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return cpu_has_avx2();
#else
      return false;
#endif
    case Backend::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernels_for(Backend backend) {
  if (!backend_available(backend)) {
    throw std::invalid_argument("SIMD backend not available: " +
                                std::string(backend_name(backend)));
  }
  switch (backend) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2: return detail::avx2_table();
#endif
#if defined(__aarch64__)
    case Backend::neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

const KernelTable& kernels() noexcept {
  // Availability was checked when the backend was stored.
  switch (active().load(std::memory_order_relaxed)) {
#if defined(__x86_64__) || defined(_M_X64)
    case Backend::avx2: return detail::avx2_table();
#endif
#if defined(__aarch64__)
    case Backend::neon: return detail::neon_table();
#endif
    default: return detail::scalar_table();
  }
}

Backend active_backend() noexcept { return active().load(); }

void force_backend(Backend backend) {
  if (!backend_available(backend)) {
    throw std::invalid_argument("SIMD backend not available: " +
                                std::string(backend_name(backend)));
  }
  active().store(backend);
}

}  // namespace wcdsc::simd
