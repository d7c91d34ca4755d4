#pragma once

// Worst-case compressibility: the fewest informant bits a sink-driven
// bit-polling strategy needs to identify any element of S, the per-informant
// minimum at that optimum, and rate regions for single and block operation.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "wcdsc/code_book.hpp"
#include "wcdsc/rational.hpp"
#include "wcdsc/support_model.hpp"

namespace wcdsc {

struct SolverLimits {
  std::size_t max_tuples = 4096;
  unsigned max_width = 40;
  // Memoized conditional sets per table; exceeding it raises ResourceError.
  std::size_t max_states = 2'000'000;
};

// Binary decision tree over codeword bits. Leaves carry the identified row
// (or no row for the empty set, which never occurs from a nonempty root).
struct StrategyTree {
  struct Node {
    int bit = -1;  // -1 for a leaf
    std::size_t row = 0;
    int zero = -1;
    int one = -1;
  };

  std::vector<Node> nodes;  // nodes[0] is the root

  unsigned depth() const;
  // Per-informant bits on the deepest path for each informant separately.
  std::vector<unsigned> worst_bits(const CodeBook& book) const;
};

// Exact optimizer over conditional sets of one code book.
class CompressibilitySolver {
 public:
  explicit CompressibilitySolver(const CodeBook& book, SolverLimits limits = {});
  ~CompressibilitySolver();
  CompressibilitySolver(const CompressibilitySolver&) = delete;
  CompressibilitySolver& operator=(const CompressibilitySolver&) = delete;

  const CodeBook& book() const noexcept { return book_; }

  unsigned c_b();
  unsigned value(const TupleSet& c);
  StrategyTree strategy();

  // Among strategies with worst-case total c_b, the smallest achievable
  // worst-case number of bits sent by the informants in `subset` (a mask of
  // 0-based informant ids). The full mask returns c_b.
  unsigned min_subset_bits(std::uint64_t subset);

  std::size_t states_explored() const noexcept;

 private:
  struct Tables;

  const CodeBook& book_;
  SolverLimits limits_;
  std::unique_ptr<Tables> tables_;
};

struct CompressibilityResult {
  unsigned c_b = 0;
  unsigned information_ambiguity = 0;  // ceil(log2 mu), a lower bound
  unsigned code_width = 0;             // sum of ceil(log2 mu_i), an upper bound
  std::size_t greedy_bits = 0;         // adversarial Bit-Serial total
  std::optional<unsigned> certificate_bound;  // max over x of the min certificate size
  StrategyTree strategy;
  std::size_t states_explored = 0;

  bool incompressible() const noexcept { return c_b == code_width; }
};

struct SolveOptions {
  SolverLimits limits;
  bool with_certificate = true;  // skipped silently beyond the oracle caps
  bool with_strategy = true;
};

CompressibilityResult solve_c_b(const SupportSet& s, const SolveOptions& options = {});

// b_i for every informant: its worst-case bits minimized over strategies that
// achieve c_b.
std::vector<unsigned> per_informant_min_bits(const SupportSet& s, const SolverLimits& limits = {});

struct RateRegion {
  std::size_t informants = 0;
  unsigned c_b = 0;
  // Lower bound M_R(S) for every nonempty informant subset, keyed by mask.
  std::map<std::uint64_t, unsigned> subset_bounds;
  std::vector<unsigned> per_informant;  // b_i = M_R({i})
  // Two informants only: (b_1, c_b - b_1) and (c_b - b_2, b_2).
  std::vector<std::pair<unsigned, unsigned>> corners;
};

RateRegion rate_region(const SupportSet& s, const SolverLimits& limits = {});

struct BlockSolve {
  unsigned k = 1;
  unsigned c_b_k = 0;
  Rational per_block;  // c_b_k / k
  Rational gap;        // c_b - c_b_k / k
};

// Solves S^k directly.
BlockSolve k_block_solve(const SupportSet& s, unsigned k, const SolverLimits& limits = {},
                         std::size_t max_tuples = kDefaultExtensionCap);

// Block-operation lower bounds derived from the single-shot bounds M of a
// region: R^k(S) >= m / k with m the smallest integer satisfying
// 2^m >= (2^(M-1) + 1)^k, and 0 when M = 0.
struct BlockRegion {
  unsigned k = 1;
  std::map<std::uint64_t, Rational> subset_bounds;
};

Rational block_bound(unsigned single_shot_bits, unsigned k);
BlockRegion k_block_rate_region(const RateRegion& base, unsigned k);
// k -> infinity: log2(2^(M-1) + 1), 0 for M = 0.
double asymptotic_bound(unsigned single_shot_bits);
std::map<std::uint64_t, double> asymptotic_rate_region(const RateRegion& base);

struct BlockGainRow {
  unsigned k = 1;
  unsigned c_b_k = 0;
  Rational per_block;
  Rational gap;
  // Direct per-block lower bounds M^k(S)/k from solving S^k; absent when the
  // subset table was not computed.
  std::map<std::uint64_t, Rational> direct_bounds;
  BlockRegion derived;
};

struct BlockGainReport {
  unsigned c_b = 0;
  RateRegion base;
  std::vector<BlockGainRow> rows;
  std::map<std::uint64_t, double> asymptotic;
  double asymptotic_c_b = 0.0;
  // Set when the table stopped before k_max; names the cap that was hit.
  std::optional<std::string> truncated;
};

BlockGainReport block_gain_report(const SupportSet& s, unsigned k_max,
                                  const SolverLimits& limits = {},
                                  std::size_t max_tuples = kDefaultExtensionCap);

}  // namespace wcdsc
