#include "wcdsc/ambiguity.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <sstream>

#include "wcdsc/errors.hpp"

namespace wcdsc {
namespace {

RankKey key_of(const SupportSet& s, std::size_t r, const InformantSet& subset) {
  RankKey key;
  key.reserve(subset.size());
  for (std::size_t i : subset.ids()) key.push_back(s.rank(r, i));
  return key;
}

void require_disjoint(const InformantSet& a, const InformantSet& b, std::size_t n) {
  if (a.empty()) throw DomainError("target informant set is empty");
  for (std::size_t i : a.ids()) {
    if (i >= n) throw DomainError("informant index out of range");
    if (b.contains(i)) throw DomainError("target and given informant sets overlap");
  }
  for (std::size_t i : b.ids()) {
    if (i >= n) throw DomainError("informant index out of range");
  }
}

std::vector<std::uint64_t> candidate_masks(std::size_t n, const PropertyOptions& options) {
  std::vector<std::uint64_t> out;
  const std::uint64_t limit = std::uint64_t{1} << n;
  for (std::uint64_t m = 1; m < limit; ++m) {
    if (n <= options.all_subsets_up_to || std::popcount(m) <= 2) out.push_back(m);
  }
  return out;
}

SupportSet product_of_marginals(const SupportSet& s) {
  const std::size_t n = s.informants();
  std::size_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= s.marginal_size(i);
  std::vector<std::uint32_t> flat;
  flat.reserve(total * n);
  std::vector<std::uint32_t> digits(n, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      digits[i] = static_cast<std::uint32_t>(rest % s.marginal_size(i));
      rest /= s.marginal_size(i);
    }
    flat.insert(flat.end(), digits.begin(), digits.end());
  }
  return SupportSet::from_rank_rows(s.marginals(), std::move(flat));
}

std::string render_key(const SupportSet& s, const InformantSet& subset, const RankKey& key) {
  std::ostringstream out;
  out << '{';
  for (std::size_t k = 0; k < key.size(); ++k) {
    if (k) out << ',';
    const std::size_t i = subset.ids()[k];
    out << 'X' << i + 1 << '=' << s.marginal(i)[key[k]].str();
  }
  out << '}';
  return out.str();
}

class CheckBuilder {
 public:
  explicit CheckBuilder(std::string name) { check_.name = std::move(name); }

  void expect(bool ok, const std::function<std::string()>& describe) {
    ++check_.cases;
    if (!ok) {
      if (check_.passed) check_.detail = describe();
      check_.passed = false;
    }
  }

  PropertyCheck done() { return std::move(check_); }

 private:
  PropertyCheck check_;
};

}  // namespace

std::size_t ambiguity(const SupportSet& s) { return s.size(); }

unsigned information_ambiguity(const SupportSet& s) { return ceil_log2(s.size()); }

std::map<RankKey, std::set<RankKey>> conditional_sets(const SupportSet& s,
                                                      const InformantSet& target,
                                                      const InformantSet& given) {
  require_disjoint(target, given, s.informants());
  std::map<RankKey, std::set<RankKey>> out;
  for (std::size_t r = 0; r < s.size(); ++r) {
    out[key_of(s, r, given)].insert(key_of(s, r, target));
  }
  return out;
}

std::size_t conditional_ambiguity(const SupportSet& s, const InformantSet& target,
                                  const InformantSet& given,
                                  const std::vector<Label>& given_values) {
  require_disjoint(target, given, s.informants());
  if (given.empty()) throw DomainError("conditioning informant set is empty");
  if (given_values.size() != given.size()) {
    throw DomainError("conditioning value count does not match the informant set");
  }
  RankKey key;
  for (std::size_t k = 0; k < given.size(); ++k) {
    const std::size_t i = given.ids()[k];
    auto rank = s.rank_of(i, given_values[k]);
    if (!rank) {
      throw DomainError("value '" + given_values[k].str() + "' is not in the support of X" +
                        std::to_string(i + 1));
    }
    key.push_back(*rank);
  }
  const auto table = conditional_sets(s, target, given);
  const auto it = table.find(key);
  if (it == table.end()) {
    throw DomainError("conditioning values are not in the joint marginal support");
  }
  return it->second.size();
}

std::size_t max_conditional_ambiguity(const SupportSet& s, const InformantSet& target,
                                      const InformantSet& given) {
  std::size_t best = 0;
  for (const auto& [key, values] : conditional_sets(s, target, given)) {
    best = std::max(best, values.size());
  }
  return best;
}

unsigned chain_cost(const SupportSet& s, const std::vector<std::size_t>& order) {
  unsigned bits = 0;
  std::vector<std::size_t> earlier;
  for (std::size_t i : order) {
    bits += ceil_log2(max_conditional_ambiguity(s, InformantSet{i}, InformantSet(earlier)));
    earlier.push_back(i);
  }
  return bits;
}

ChainBound chain_bound(const SupportSet& s, std::size_t max_informants) {
  const std::size_t n = s.informants();
  if (n > max_informants) {
    throw ResourceError("chain bound over " + std::to_string(n) +
                        " informants exceeds the permutation cap of " +
                        std::to_string(max_informants));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  ChainBound best{chain_cost(s, order), order};
  while (std::next_permutation(order.begin(), order.end())) {
    const unsigned cost = chain_cost(s, order);
    if (cost < best.bits) best = {cost, order};
  }
  return best;
}

bool is_product_of_marginals(const SupportSet& s) {
  std::size_t product = 1;
  for (std::size_t i = 0; i < s.informants(); ++i) {
    product *= s.marginal_size(i);
    if (product > s.size()) return false;
  }
  return product == s.size();
}

AmbiguityReport measure(const SupportSet& s) {
  AmbiguityReport report;
  report.joint_ambiguity = ambiguity(s);
  report.information_ambiguity = information_ambiguity(s);
  const std::size_t n = s.informants();
  for (std::size_t i = 0; i < n; ++i) {
    report.marginal_ambiguity.push_back(s.marginal_size(i));
    report.marginal_information.push_back(ceil_log2(s.marginal_size(i)));
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      std::size_t mu_hat = 0;
      for (const auto& [key, values] : conditional_sets(s, InformantSet{i}, InformantSet{j})) {
        report.conditionals.push_back({i, j, s.marginal(j)[key.front()], values.size()});
        mu_hat = std::max(mu_hat, values.size());
      }
      report.max_conditionals.push_back({i, j, mu_hat});
    }
  }
  if (n <= kDefaultPermutationCap) {
    report.chain = chain_bound(s);
    report.chain_available = true;
  }
  return report;
}

bool PropertyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const PropertyCheck& c) { return c.passed; });
}

const PropertyCheck* PropertyReport::find(const std::string& name) const {
  for (const PropertyCheck& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

PropertyReport property_suite(const SupportSet& s, const PropertyOptions& options) {
  PropertyReport report;
  const std::size_t n = s.informants();
  const std::size_t mu = s.size();
  const unsigned info = information_ambiguity(s);
  const auto masks = candidate_masks(n, options);

  std::size_t product_size = 1;
  for (std::size_t i = 0; i < n && product_size <= options.max_product_size; ++i) {
    product_size *= s.marginal_size(i);
  }
  const bool product_feasible = product_size <= options.max_product_size;

  unsigned sum_marginal_info = 0;
  for (std::size_t i = 0; i < n; ++i) sum_marginal_info += ceil_log2(s.marginal_size(i));

  {
    CheckBuilder check("expansibility");
    auto entries = s.entries();
    std::vector<Label> fresh;
    for (std::size_t i = 0; i < n; ++i) fresh.push_back(Label("zero-weight-" + std::to_string(i)));
    entries.push_back({fresh, 0.0});
    if (!entries.empty()) entries.push_back({entries.front().values, 0.0});
    const SupportSet rebuilt = SupportSet::build(entries, s.marginals());
    check.expect(rebuilt == s, [] { return std::string("zero-weight tuple changed the set"); });
    check.expect(information_ambiguity(rebuilt) == info,
                 [] { return std::string("zero-weight tuple changed the information ambiguity"); });
    report.checks.push_back(check.done());
  }

  {
    CheckBuilder check("monotonicity");
    for (std::size_t drop = 0; drop < mu && mu > 1; ++drop) {
      const SupportSet sub = s.filter([drop](std::size_t r) { return r != drop; });
      check.expect(information_ambiguity(sub) <= info, [&] {
        return "removing row " + std::to_string(drop) + " raised the information ambiguity";
      });
    }
    const BitLayout l = layout(s);
    for (unsigned j = 0; j < l.total_width(); ++j) {
      for (bool value : {false, true}) {
        BitAssignment a;
        a.set(j, value);
        const SupportSet sub = condition(s, a);
        check.expect(sub.size() <= mu && information_ambiguity(sub) <= info, [&] {
          return "conditioning bit " + std::to_string(j) + " raised the information ambiguity";
        });
      }
    }
    if (product_feasible) {
      const SupportSet product = product_of_marginals(s);
      check.expect(info <= information_ambiguity(product), [] {
        return std::string("set exceeds the product of its marginals");
      });
    }
    report.checks.push_back(check.done());
  }

  {
    CheckBuilder check("symmetry");
    if (n <= options.max_permutation_informants) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      do {
        const SupportSet t = s.permuted(order);
        std::vector<std::size_t> inverse(n);
        for (std::size_t k = 0; k < n; ++k) inverse[order[k]] = k;
        check.expect(ambiguity(t) == mu && information_ambiguity(t) == info &&
                         t.permuted(inverse) == s,
                     [] { return std::string("informant permutation changed the measure"); });
      } while (std::next_permutation(order.begin(), order.end()));
    }
    report.checks.push_back(check.done());
  }

  {
    CheckBuilder check("subadditivity");
    check.expect(info <= sum_marginal_info, [] {
      return std::string("joint information ambiguity exceeds the marginal sum");
    });
    for (std::uint64_t a : masks) {
      for (std::uint64_t b : masks) {
        if ((a & b) != 0 || a > b) continue;
        const InformantSet sa = InformantSet::from_mask(a);
        const InformantSet sb = InformantSet::from_mask(b);
        const InformantSet sab = InformantSet::from_mask(a | b);
        const unsigned joint = information_ambiguity(project(s, sab));
        const unsigned split = information_ambiguity(project(s, sa)) +
                               information_ambiguity(project(s, sb));
        check.expect(joint <= split, [&] {
          return "I(X_{" + sab.str() + "}) > I(X_{" + sa.str() + "}) + I(X_{" + sb.str() + "})";
        });
      }
    }
    report.checks.push_back(check.done());
  }

  {
    CheckBuilder check("additivity");
    auto within_one_bit_each = [&](const SupportSet& t) {
      const long joint = information_ambiguity(t);
      long sum = 0;
      for (std::size_t i = 0; i < t.informants(); ++i) sum += ceil_log2(t.marginal_size(i));
      return std::labs(joint - sum) <= static_cast<long>(t.informants());
    };
    if (is_product_of_marginals(s)) {
      check.expect(within_one_bit_each(s), [] {
        return std::string("non-interacting set differs by more than one bit per variable");
      });
    }
    if (product_feasible) {
      const SupportSet product = product_of_marginals(s);
      check.expect(is_product_of_marginals(product) && within_one_bit_each(product), [] {
        return std::string("product of marginals differs by more than one bit per variable");
      });
    }
    report.checks.push_back(check.done());
  }

  {
    CheckBuilder check("conditioning_reduces");
    for (std::uint64_t a : masks) {
      const InformantSet sa = InformantSet::from_mask(a);
      const std::size_t mu_a = project(s, sa).size();
      for (std::uint64_t b : masks) {
        if ((a & b) != 0) continue;
        const InformantSet sb = InformantSet::from_mask(b);
        for (const auto& [key, values] : conditional_sets(s, sa, sb)) {
          check.expect(values.size() <= mu_a && ceil_log2(values.size()) <= ceil_log2(mu_a), [&] {
            return "mu(X_{" + sa.str() + "} | " + render_key(s, sb, key) + ") exceeds mu(X_{" +
                   sa.str() + "})";
          });
        }
      }
    }
    report.checks.push_back(check.done());
  }

  {
    CheckBuilder check("chain_rule");
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        const unsigned joint = information_ambiguity(project(s, InformantSet{i, j}));
        const unsigned bound =
            ceil_log2(s.marginal_size(i)) +
            ceil_log2(max_conditional_ambiguity(s, InformantSet{j}, InformantSet{i}));
        check.expect(joint <= bound, [&] {
          return "I(X" + std::to_string(i + 1) + ",X" + std::to_string(j + 1) + ") > I(X" +
                 std::to_string(i + 1) + ") + I^(X" + std::to_string(j + 1) + "|X" +
                 std::to_string(i + 1) + ")";
        });
      }
    }
    if (n <= options.max_permutation_informants) {
      std::vector<std::size_t> order(n);
      std::iota(order.begin(), order.end(), 0);
      do {
        check.expect(chain_cost(s, order) >= info,
                     [] { return std::string("a permutation chain undercuts I"); });
      } while (std::next_permutation(order.begin(), order.end()));
      check.expect(chain_bound(s, options.max_permutation_informants).bits >= info,
                   [] { return std::string("chain bound below I"); });
    }
    report.checks.push_back(check.done());
  }

  {
    CheckBuilder equality("intersection_lemma");
    CheckBuilder containment("intersection_containment");
    CheckBuilder mu_min("mu_min_bound");
    CheckBuilder mu_hat_min("mu_hat_min_bound");
    for (std::size_t i = 0; i < n; ++i) {
      std::vector<std::map<RankKey, std::set<RankKey>>> single(n);
      std::vector<std::size_t> single_hat(n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        single[j] = conditional_sets(s, InformantSet{i}, InformantSet{j});
        for (const auto& [key, values] : single[j]) single_hat[j] = std::max(single_hat[j], values.size());
      }
      for (std::uint64_t a : masks) {
        if (std::popcount(a) < 2 || (a >> i & 1u)) continue;
        const InformantSet sa = InformantSet::from_mask(a);
        std::size_t joint_hat = 0;
        std::size_t min_single_hat = mu;
        for (std::size_t j : sa.ids()) min_single_hat = std::min(min_single_hat, single_hat[j]);
        for (const auto& [key, values] : conditional_sets(s, InformantSet{i}, sa)) {
          joint_hat = std::max(joint_hat, values.size());
          std::set<RankKey> intersection;
          std::size_t min_single = mu;
          bool first = true;
          for (std::size_t k = 0; k < sa.size(); ++k) {
            const std::size_t j = sa.ids()[k];
            const auto& sj = single[j].at(RankKey{key[k]});
            min_single = std::min(min_single, sj.size());
            if (first) {
              intersection = sj;
              first = false;
            } else {
              std::set<RankKey> next;
              std::set_intersection(intersection.begin(), intersection.end(), sj.begin(),
                                    sj.end(), std::inserter(next, next.begin()));
              intersection = std::move(next);
            }
          }
          auto describe = [&, key = key] {
            return "S(X" + std::to_string(i + 1) + " | " + render_key(s, sa, key) + ")";
          };
          equality.expect(values == intersection, [&] {
            return describe() + " has " + std::to_string(values.size()) +
                   " values but the pairwise intersection has " +
                   std::to_string(intersection.size());
          });
          containment.expect(std::includes(intersection.begin(), intersection.end(),
                                            values.begin(), values.end()),
                             [&] { return describe() + " escapes the pairwise intersection"; });
          mu_min.expect(values.size() <= min_single,
                        [&] { return describe() + " exceeds a single-variable conditional"; });
        }
        mu_hat_min.expect(joint_hat <= min_single_hat, [&] {
          return "mu^(X" + std::to_string(i + 1) + " | X_{" + sa.str() +
                 "}) exceeds a single-variable maximum";
        });
      }
    }
    report.checks.push_back(equality.done());
    report.checks.push_back(containment.done());
    report.checks.push_back(mu_min.done());
    report.checks.push_back(mu_hat_min.done());
  }

  return report;
}

}  // namespace wcdsc
