#pragma once

// Information ambiguity: the cardinality of a (conditional) support set and
// its bit count ceil(log2 mu), plus executable checks of the measure axioms.

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "wcdsc/support_model.hpp"

namespace wcdsc {

std::size_t ambiguity(const SupportSet& s);
unsigned information_ambiguity(const SupportSet& s);

// Rank tuple of a subset of informants, in InformantSet order.
using RankKey = std::vector<std::uint32_t>;

// For every x_B in the marginal of `given`, the set of x_A values compatible
// with it. An empty `given` yields one entry (the empty key) holding S_{X_A}.
std::map<RankKey, std::set<RankKey>> conditional_sets(const SupportSet& s,
                                                      const InformantSet& target,
                                                      const InformantSet& given);

// mu_{X_A | X_B}(x_B). Throws DomainError when A and B overlap, A is empty,
// or x_B is not in the marginal support of B.
std::size_t conditional_ambiguity(const SupportSet& s, const InformantSet& target,
                                  const InformantSet& given,
                                  const std::vector<Label>& given_values);

// max over x_B of mu_{X_A | X_B}(x_B); mu_{X_A} when B is empty.
std::size_t max_conditional_ambiguity(const SupportSet& s, const InformantSet& target,
                                      const InformantSet& given);

inline constexpr std::size_t kDefaultPermutationCap = 8;

struct ChainBound {
  unsigned bits = 0;
  std::vector<std::size_t> order;  // achieving permutation, 0-based
};

// Sum over i of ceil(log2 max-conditional ambiguity of X_order[i] given the
// earlier informants).
unsigned chain_cost(const SupportSet& s, const std::vector<std::size_t>& order);

// Minimum chain_cost over all permutations; ties keep the lexicographically
// first permutation. Throws ResourceError when N exceeds max_informants.
ChainBound chain_bound(const SupportSet& s,
                       std::size_t max_informants = kDefaultPermutationCap);

// S is the full Cartesian product of its marginals ("non-interacting").
bool is_product_of_marginals(const SupportSet& s);

struct ConditionalEntry {
  std::size_t target = 0;
  std::size_t given = 0;
  Label value;
  std::size_t mu = 0;
};

struct MaxConditionalEntry {
  std::size_t target = 0;
  std::size_t given = 0;
  std::size_t mu_hat = 0;
};

struct AmbiguityReport {
  std::size_t joint_ambiguity = 0;
  unsigned information_ambiguity = 0;
  std::vector<std::size_t> marginal_ambiguity;
  std::vector<unsigned> marginal_information;
  std::vector<ConditionalEntry> conditionals;     // every ordered pair (i, j)
  std::vector<MaxConditionalEntry> max_conditionals;
  ChainBound chain;
  bool chain_available = false;  // false when N exceeds the permutation cap
};

AmbiguityReport measure(const SupportSet& s);

struct PropertyCheck {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  std::string detail;  // first counterexample, when any
};

struct PropertyReport {
  std::vector<PropertyCheck> checks;

  bool all_passed() const;
  const PropertyCheck* find(const std::string& name) const;
};

struct PropertyOptions {
  // All informant subsets up to this N; beyond it only singletons and pairs.
  std::size_t all_subsets_up_to = 4;
  std::size_t max_permutation_informants = kDefaultPermutationCap;
  // Largest product-of-marginals set built for additivity and monotonicity.
  std::size_t max_product_size = 4096;
};

// Evaluates every axiom and set lemma exhaustively over conditioning values
// and informant subsets within the caps. Failures are findings, not errors.
PropertyReport property_suite(const SupportSet& s, const PropertyOptions& options = {});

}  // namespace wcdsc
