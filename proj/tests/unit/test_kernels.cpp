#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "support/fixtures.hpp"
#include "support/random_sets.hpp"
#include "wcdsc/bit_kernels.hpp"
#include "wcdsc/compressibility.hpp"
#include "wcdsc/protocol.hpp"

namespace simd = wcdsc::simd;
using simd::Backend;

namespace {

std::vector<Backend> available() {
  std::vector<Backend> out;
  for (Backend b : {Backend::scalar, Backend::avx2, Backend::neon}) {
    if (simd::backend_available(b)) out.push_back(b);
  }
  return out;
}

std::vector<std::uint64_t> random_words(std::mt19937_64& rng, std::size_t n, int density) {
  std::vector<std::uint64_t> w(n);
  for (auto& x : w) {
    x = rng();
    if (density == 0) x &= rng() & rng();  // sparse
    if (density == 2) x |= rng() | rng();  // dense
  }
  return w;
}

// Restores the default backend after each test that pins one.
class KernelTest : public ::testing::Test {
 protected:
  void TearDown() override { simd::force_backend(saved_); }
  Backend saved_ = simd::active_backend();
};

}  // namespace

TEST(Kernels, ScalarAlwaysAvailable) {
  EXPECT_TRUE(simd::backend_available(Backend::scalar));
  EXPECT_EQ(simd::backend_name(Backend::scalar), "scalar");
  EXPECT_TRUE(simd::backend_available(simd::active_backend()));
}

TEST(Kernels, UnavailableBackendThrows) {
  for (Backend b : {Backend::avx2, Backend::neon}) {
    if (!simd::backend_available(b)) EXPECT_THROW(simd::kernels_for(b), std::invalid_argument);
  }
}

TEST(Kernels, EveryBackendMatchesScalar) {
  const auto& ref = simd::kernels_for(Backend::scalar);
  std::mt19937_64 rng(7);
  for (Backend b : available()) {
    const auto& k = simd::kernels_for(b);
    // Lengths straddle the 4-word vector width and its tail handling.
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 9u, 15u, 16u, 17u, 31u, 64u, 67u}) {
      for (int density = 0; density < 3; ++density) {
        const auto a = random_words(rng, n, density);
        const auto c = random_words(rng, n, density);
        EXPECT_EQ(k.popcount(a.data(), n), ref.popcount(a.data(), n)) << simd::backend_name(b) << " n=" << n;
        EXPECT_EQ(k.popcount_and(a.data(), c.data(), n), ref.popcount_and(a.data(), c.data(), n))
            << simd::backend_name(b) << " n=" << n;
        std::vector<std::uint64_t> got(n), want(n);
        k.and_into(got.data(), a.data(), c.data(), n);
        ref.and_into(want.data(), a.data(), c.data(), n);
        EXPECT_EQ(got, want);
        k.andnot_into(got.data(), a.data(), c.data(), n);
        ref.andnot_into(want.data(), a.data(), c.data(), n);
        EXPECT_EQ(got, want);
      }
    }
  }
}

TEST(Kernels, ScalarKnownValues) {
  const auto& k = simd::kernels_for(Backend::scalar);
  const std::vector<std::uint64_t> a{~0ull, 0x0Full, 0};
  const std::vector<std::uint64_t> b{0xFFull, 0x03ull, ~0ull};
  EXPECT_EQ(k.popcount(a.data(), 3), 68u);
  EXPECT_EQ(k.popcount_and(a.data(), b.data(), 3), 10u);
  std::vector<std::uint64_t> d(3);
  k.andnot_into(d.data(), a.data(), b.data(), 3);
  EXPECT_EQ(d, (std::vector<std::uint64_t>{~0xFFull, 0x0Cull, 0}));
}

TEST_F(KernelTest, SolverResultsIndependentOfBackend) {
  std::mt19937_64 rng(99);
  std::vector<wcdsc::SupportSet> sets{wcdsc::testkit::fixture_a(), wcdsc::testkit::fixture_b()};
  for (int i = 0; i < 20; ++i) sets.push_back(wcdsc::testkit::random_support(rng, {2, 3, 5, 40}));

  std::vector<std::vector<std::size_t>> reference;
  for (Backend b : available()) {
    simd::force_backend(b);
    std::vector<std::size_t> values;
    for (const auto& s : sets) {
      wcdsc::SolveOptions options;
      options.with_certificate = false;
      const auto r = wcdsc::solve_c_b(s, options);
      values.push_back(r.c_b);
      values.push_back(r.greedy_bits);
      const auto tr = wcdsc::run_round_parallel(s, wcdsc::Responder::adversarial());
      values.push_back(tr.informant_bits);
    }
    if (reference.empty()) {
      reference.push_back(values);
    } else {
      EXPECT_EQ(values, reference.front()) << simd::backend_name(b);
    }
  }
}
