#include "wcdsc/compressibility.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include <boost/multiprecision/cpp_int.hpp>

#include "wcdsc/ambiguity.hpp"
#include "wcdsc/errors.hpp"
#include "wcdsc/oracle.hpp"
#include "wcdsc/protocol.hpp"

namespace wcdsc {
namespace {

// Nondominated (worst total, worst subset bits) pairs, total ascending and
// subset bits strictly descending.
using Frontier = std::vector<std::pair<std::uint8_t, std::uint8_t>>;

void prune(Frontier& f) {
  std::sort(f.begin(), f.end());
  Frontier kept;
  for (const auto& p : f) {
    if (kept.empty() || p.second < kept.back().second) kept.push_back(p);
  }
  f = std::move(kept);
}

struct Candidate {
  unsigned bit;
  std::size_t gap;
};

}  // namespace

struct CompressibilitySolver::Tables {
  std::unordered_map<TupleSet, std::uint8_t, TupleSetHash> values;
  std::map<std::uint64_t, std::unordered_map<TupleSet, Frontier, TupleSetHash>> frontiers;
};

CompressibilitySolver::CompressibilitySolver(const CodeBook& book, SolverLimits limits)
    : book_(book), limits_(limits), tables_(std::make_unique<Tables>()) {
  if (book.size() > limits.max_tuples) {
    throw ResourceError("support set has " + std::to_string(book.size()) +
                        " tuples, solver cap is " + std::to_string(limits.max_tuples));
  }
  if (book.width() > limits.max_width) {
    throw ResourceError("codewords have " + std::to_string(book.width()) +
                        " bits, solver cap is " + std::to_string(limits.max_width));
  }
}

CompressibilitySolver::~CompressibilitySolver() = default;

std::size_t CompressibilitySolver::states_explored() const noexcept {
  std::size_t n = tables_->values.size();
  for (const auto& [mask, table] : tables_->frontiers) n += table.size();
  return n;
}

unsigned CompressibilitySolver::c_b() { return value(book_.full()); }

unsigned CompressibilitySolver::value(const TupleSet& c) {
  const std::size_t mu = c.count();
  if (mu <= 1) return 0;
  auto& memo = tables_->values;
  if (const auto it = memo.find(c); it != memo.end()) return it->second;
  if (memo.size() >= limits_.max_states) {
    throw ResourceError("compressibility search exceeded " + std::to_string(limits_.max_states) +
                        " states");
  }

  // Balanced splits first: they tend to reach the ceil(log2 mu) floor.
  std::vector<Candidate> order;
  for (unsigned j : book_.undefined_bits(c, mu)) {
    const std::size_t ones = book_.ones(c, j);
    order.push_back({j, ones > mu - ones ? 2 * ones - mu : mu - 2 * ones});
  }
  std::stable_sort(order.begin(), order.end(),
                   [](const Candidate& a, const Candidate& b) { return a.gap < b.gap; });

  const unsigned floor = ceil_log2(mu);
  unsigned best = ~0u;
  TupleSet zero, one;
  for (const Candidate& cand : order) {
    book_.split(c, cand.bit, zero, one);
    const std::size_t n0 = zero.count();
    const std::size_t n1 = mu - n0;
    if (1 + ceil_log2(std::max(n0, n1)) >= best) continue;
    const TupleSet& big = n0 >= n1 ? zero : one;
    const TupleSet& small = n0 >= n1 ? one : zero;
    const unsigned vb = value(big);
    if (1 + vb >= best) continue;
    const unsigned vs = value(small);
    best = std::min(best, 1 + std::max(vb, vs));
    if (best == floor) break;
  }
  if (best == ~0u) throw InvariantError("several tuples share one codeword");
  memo.emplace(c, static_cast<std::uint8_t>(best));
  return best;
}

StrategyTree CompressibilitySolver::strategy() {
  StrategyTree tree;
  std::vector<std::pair<TupleSet, int>> stack;
  tree.nodes.emplace_back();
  stack.emplace_back(book_.full(), 0);
  while (!stack.empty()) {
    auto [c, index] = std::move(stack.back());
    stack.pop_back();
    const std::size_t mu = c.count();
    if (mu <= 1) {
      tree.nodes[index].row = c.first().value_or(0);
      continue;
    }
    const unsigned target = value(c);
    TupleSet zero, one;
    bool found = false;
    for (unsigned j : book_.undefined_bits(c, mu)) {
      book_.split(c, j, zero, one);
      if (1 + std::max(value(zero), value(one)) != target) continue;
      const int z = static_cast<int>(tree.nodes.size());
      tree.nodes.emplace_back();
      tree.nodes.emplace_back();
      tree.nodes[index].bit = static_cast<int>(j);
      tree.nodes[index].zero = z;
      tree.nodes[index].one = z + 1;
      stack.emplace_back(std::move(zero), z);
      stack.emplace_back(std::move(one), z + 1);
      found = true;
      break;
    }
    if (!found) throw InvariantError("no split attains the memoized optimum");
  }
  return tree;
}

unsigned CompressibilitySolver::min_subset_bits(std::uint64_t subset) {
  const std::size_t n = book_.support().informants();
  const std::uint64_t full = n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
  subset &= full;
  if (subset == 0) return 0;
  if (subset == full) return c_b();

  auto& memo = tables_->frontiers[subset];
  std::size_t budget = limits_.max_states;
  // Recursive lambda over conditional sets.
  auto frontier = [&](auto&& self, const TupleSet& c) -> Frontier {
    const std::size_t mu = c.count();
    if (mu <= 1) return {{0, 0}};
    if (const auto it = memo.find(c); it != memo.end()) return it->second;
    if (memo.size() >= budget) {
      throw ResourceError("rate-region search exceeded " + std::to_string(budget) + " states");
    }
    Frontier out;
    TupleSet zero, one;
    for (unsigned j : book_.undefined_bits(c, mu)) {
      book_.split(c, j, zero, one);
      const Frontier a = self(self, zero);
      const Frontier b = self(self, one);
      const std::uint8_t inc = (subset >> book_.owner(j) & 1u) ? 1 : 0;
      for (const auto& p : a) {
        for (const auto& q : b) {
          out.emplace_back(static_cast<std::uint8_t>(1 + std::max(p.first, q.first)),
                           static_cast<std::uint8_t>(inc + std::max(p.second, q.second)));
        }
      }
      prune(out);
    }
    memo.emplace(c, out);
    return out;
  };

  const Frontier root = frontier(frontier, book_.full());
  const unsigned optimum = root.front().first;
  if (optimum != c_b()) throw InvariantError("frontier optimum differs from c_b");
  unsigned best = ~0u;
  for (const auto& [total, bits] : root) {
    if (total == optimum) best = std::min<unsigned>(best, bits);
  }
  return best;
}

unsigned StrategyTree::depth() const {
  if (nodes.empty()) return 0;
  unsigned deepest = 0;
  std::vector<std::pair<int, unsigned>> stack{{0, 0}};
  while (!stack.empty()) {
    const auto [i, d] = stack.back();
    stack.pop_back();
    const Node& node = nodes[i];
    if (node.bit < 0) {
      deepest = std::max(deepest, d);
    } else {
      stack.emplace_back(node.zero, d + 1);
      stack.emplace_back(node.one, d + 1);
    }
  }
  return deepest;
}

std::vector<unsigned> StrategyTree::worst_bits(const CodeBook& book) const {
  std::vector<unsigned> worst(book.support().informants(), 0);
  if (nodes.empty()) return worst;
  std::vector<std::pair<int, std::vector<unsigned>>> stack;
  stack.emplace_back(0, worst);
  while (!stack.empty()) {
    auto [i, counts] = std::move(stack.back());
    stack.pop_back();
    const Node& node = nodes[i];
    if (node.bit < 0) {
      for (std::size_t k = 0; k < counts.size(); ++k) worst[k] = std::max(worst[k], counts[k]);
      continue;
    }
    ++counts[book.owner(static_cast<unsigned>(node.bit))];
    stack.emplace_back(node.zero, counts);
    stack.emplace_back(node.one, std::move(counts));
  }
  return worst;
}

CompressibilityResult solve_c_b(const SupportSet& s, const SolveOptions& options) {
  const CodeBook book(s);
  CompressibilitySolver solver(book, options.limits);
  CompressibilityResult r;
  r.c_b = solver.c_b();
  r.information_ambiguity = information_ambiguity(s);
  r.code_width = book.width();
  r.greedy_bits = run_bit_serial(book, Responder::adversarial()).informant_bits;
  if (options.with_certificate && book.width() <= oracle::kCertificateMaxWidth) {
    r.certificate_bound = oracle::certificate_c_b(s);
  }
  if (options.with_strategy) r.strategy = solver.strategy();
  r.states_explored = solver.states_explored();
  return r;
}

std::vector<unsigned> per_informant_min_bits(const SupportSet& s, const SolverLimits& limits) {
  const CodeBook book(s);
  CompressibilitySolver solver(book, limits);
  std::vector<unsigned> b;
  for (std::size_t i = 0; i < s.informants(); ++i) b.push_back(solver.min_subset_bits(std::uint64_t{1} << i));
  return b;
}

namespace {

constexpr std::size_t kMaxRegionInformants = 16;

RateRegion region_of(CompressibilitySolver& solver) {
  const std::size_t n = solver.book().support().informants();
  if (n > kMaxRegionInformants) {
    throw ResourceError("rate regions enumerate 2^N subsets; N is capped at " +
                        std::to_string(kMaxRegionInformants));
  }
  RateRegion region;
  region.informants = n;
  region.c_b = solver.c_b();
  const std::uint64_t full = (std::uint64_t{1} << n) - 1;
  for (std::uint64_t m = 1; m <= full; ++m) region.subset_bounds[m] = solver.min_subset_bits(m);
  for (std::size_t i = 0; i < n; ++i) region.per_informant.push_back(region.subset_bounds[std::uint64_t{1} << i]);
  if (n == 2) {
    const unsigned b1 = region.per_informant[0];
    const unsigned b2 = region.per_informant[1];
    region.corners = {{b1, region.c_b - b1}, {region.c_b - b2, b2}};
  }
  return region;
}

}  // namespace

RateRegion rate_region(const SupportSet& s, const SolverLimits& limits) {
  const CodeBook book(s);
  CompressibilitySolver solver(book, limits);
  return region_of(solver);
}

BlockSolve k_block_solve(const SupportSet& s, unsigned k, const SolverLimits& limits,
                         std::size_t max_tuples) {
  const unsigned base = [&] {
    const CodeBook book(s);
    return CompressibilitySolver(book, limits).c_b();
  }();
  const CodeBook book(k_extension(s, k, max_tuples));
  CompressibilitySolver solver(book, limits);
  BlockSolve r;
  r.k = k;
  r.c_b_k = solver.c_b();
  r.per_block = Rational(r.c_b_k, k);
  r.gap = Rational(base) - r.per_block;
  return r;
}

Rational block_bound(unsigned m, unsigned k) {
  if (k == 0) throw DomainError("block length must be at least 1");
  if (m == 0) return Rational(0);
  using boost::multiprecision::cpp_int;
  // Smallest e with 2^e >= B^k is the bit length of B^k - 1.
  const cpp_int base = (cpp_int(1) << (m - 1)) + 1;
  const cpp_int power = boost::multiprecision::pow(base, k) - 1;
  const auto e = static_cast<std::int64_t>(power == 0 ? 0 : boost::multiprecision::msb(power) + 1);
  return Rational(e, k);
}

BlockRegion k_block_rate_region(const RateRegion& base, unsigned k) {
  BlockRegion r;
  r.k = k;
  for (const auto& [mask, m] : base.subset_bounds) r.subset_bounds[mask] = block_bound(m, k);
  return r;
}

double asymptotic_bound(unsigned m) {
  if (m == 0) return 0.0;
  return std::log2(std::ldexp(1.0, static_cast<int>(m) - 1) + 1.0);
}

std::map<std::uint64_t, double> asymptotic_rate_region(const RateRegion& base) {
  std::map<std::uint64_t, double> out;
  for (const auto& [mask, m] : base.subset_bounds) out[mask] = asymptotic_bound(m);
  return out;
}

BlockGainReport block_gain_report(const SupportSet& s, unsigned k_max, const SolverLimits& limits,
                                  std::size_t max_tuples) {
  if (k_max == 0) throw DomainError("k_max must be at least 1");
  BlockGainReport report;
  {
    const CodeBook book(s);
    CompressibilitySolver solver(book, limits);
    report.base = region_of(solver);
  }
  report.c_b = report.base.c_b;
  for (unsigned k = 1; k <= k_max; ++k) {
    try {
      const CodeBook book(k_extension(s, k, max_tuples));
      CompressibilitySolver solver(book, limits);
      BlockGainRow row;
      row.k = k;
      row.c_b_k = solver.c_b();
      row.per_block = Rational(row.c_b_k, k);
      row.gap = Rational(report.c_b) - row.per_block;
      const RateRegion direct = region_of(solver);
      for (const auto& [mask, m] : direct.subset_bounds) row.direct_bounds[mask] = Rational(m, k);
      row.derived = k_block_rate_region(report.base, k);
      report.rows.push_back(std::move(row));
    } catch (const ResourceError& e) {
      report.truncated = "k=" + std::to_string(k) + ": " + e.what();
      break;
    }
  }
  report.asymptotic = asymptotic_rate_region(report.base);
  report.asymptotic_c_b = asymptotic_bound(report.c_b);
  return report;
}

}  // namespace wcdsc
