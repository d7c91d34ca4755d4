#pragma once

// Brute-force reference computations for small instances. Everything here
// works on codeword strings and explicit row lists so it shares no code
// with the optimized solvers it is used to check.

#include <cstddef>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "wcdsc/support_model.hpp"

namespace wcdsc::oracle {

inline constexpr unsigned kCertificateMaxWidth = 20;
inline constexpr std::size_t kSearchMaxTuples = 12;
inline constexpr unsigned kSearchMaxWidth = 8;
inline constexpr std::size_t kSearchMaxInformants = 6;

// Whether the instance is within the exhaustive tree search caps.
bool search_feasible(const SupportSet& s);

struct Certificate {
  std::vector<unsigned> bits;  // global bit indices, ascending
  unsigned size() const noexcept { return static_cast<unsigned>(bits.size()); }
};

// Smallest set of codeword positions whose values single out x within S;
// among sets of that size the lexicographically first. Throws
// ResourceError above kCertificateMaxWidth and MembershipError when x is
// not in S.
Certificate min_certificate(const SupportSet& s, const DataVector& x);

// max over x in S of the min certificate size; a lower bound on c_b.
unsigned certificate_c_b(const SupportSet& s);

struct SearchResult {
  unsigned optimum = 0;  // c_b
  // Every achievable worst-case vector: entry m (for masks 1..2^N-1) is the
  // worst-case number of bits sent by the informants in m.
  std::set<std::vector<unsigned>> vectors;
  // For each nonempty mask, the minimum entry among vectors whose full-mask
  // entry equals the optimum.
  std::map<std::uint64_t, unsigned> min_bits_at_optimum;
  std::vector<unsigned> per_informant;  // b_i
};

// Enumerates every adaptive bit-polling tree, keeping every worst-case
// vector (no dominance pruning). Results are shared between identical row
// subsets. Throws ResourceError outside kSearchMaxTuples, kSearchMaxWidth or
// kSearchMaxInformants.
SearchResult exhaustive_tree_search(const SupportSet& s);

}  // namespace wcdsc::oracle
