#include "wcdsc/oracle.hpp"

#include <algorithm>
#include <bit>
#include <string>
#include <unordered_map>

#include "wcdsc/errors.hpp"

namespace wcdsc::oracle {
namespace {

struct Codes {
  std::vector<std::string> words;  // one '0'/'1' string per row
  std::vector<std::size_t> owner;  // informant of each position
  unsigned width = 0;
};

Codes codes_of(const SupportSet& s) {
  Codes c;
  for (std::size_t r = 0; r < s.size(); ++r) c.words.push_back(encode(s, s.tuple(r)));
  for (std::size_t i = 0; i < s.informants(); ++i) {
    const unsigned w = ceil_log2(s.marginal_size(i));
    c.owner.insert(c.owner.end(), w, i);
  }
  c.width = static_cast<unsigned>(c.owner.size());
  return c;
}

bool singles_out(const Codes& c, std::size_t x, const std::vector<unsigned>& bits) {
  for (std::size_t y = 0; y < c.words.size(); ++y) {
    if (y == x) continue;
    bool differs = false;
    for (unsigned j : bits) {
      if (c.words[y][j] != c.words[x][j]) {
        differs = true;
        break;
      }
    }
    if (!differs) return false;
  }
  return true;
}

// Lexicographic enumeration of size-k position sets starting at `from`.
bool search_size(const Codes& c, std::size_t x, unsigned k, unsigned from,
                 std::vector<unsigned>& picked) {
  if (picked.size() == k) return singles_out(c, x, picked);
  for (unsigned j = from; j + (k - picked.size()) <= c.width; ++j) {
    picked.push_back(j);
    if (search_size(c, x, k, j + 1, picked)) return true;
    picked.pop_back();
  }
  return false;
}

Certificate certificate_for(const Codes& c, std::size_t x) {
  for (unsigned k = 0; k <= c.width; ++k) {
    std::vector<unsigned> picked;
    if (search_size(c, x, k, 0, picked)) return {picked};
  }
  throw InvariantError("codewords are not distinct");
}

void require_certificate_caps(const SupportSet& s) {
  const unsigned w = layout(s).total_width();
  if (w > kCertificateMaxWidth) {
    throw ResourceError("certificate search supports codewords up to " +
                        std::to_string(kCertificateMaxWidth) + " bits, got " + std::to_string(w));
  }
}

using Vector = std::vector<unsigned>;
using VectorSet = std::set<Vector>;

class TreeSearch {
 public:
  explicit TreeSearch(const SupportSet& s) : codes_(codes_of(s)), masks_(std::size_t{1} << s.informants()) {}

  VectorSet solve(std::uint32_t rows) {
    if (const auto it = memo_.find(rows); it != memo_.end()) return it->second;
    VectorSet out;
    if (std::popcount(rows) <= 1) {
      out.insert(Vector(masks_, 0));
    } else {
      for (unsigned j = 0; j < codes_.width; ++j) {
        std::uint32_t zero = 0, one = 0;
        for (std::size_t r = 0; r < codes_.words.size(); ++r) {
          if (!(rows >> r & 1u)) continue;
          (codes_.words[r][j] == '1' ? one : zero) |= std::uint32_t{1} << r;
        }
        if (zero == 0 || one == 0) continue;
        const VectorSet a = solve(zero);
        const VectorSet b = solve(one);
        const std::size_t owner = codes_.owner[j];
        for (const Vector& u : a) {
          for (const Vector& v : b) {
            Vector w(masks_, 0);
            for (std::size_t m = 1; m < masks_; ++m) {
              w[m] = std::max(u[m], v[m]) + ((m >> owner & 1u) ? 1u : 0u);
            }
            out.insert(std::move(w));
          }
        }
      }
      if (out.empty()) throw InvariantError("rows with equal codewords");
    }
    memo_.emplace(rows, out);
    return out;
  }

 private:
  Codes codes_;
  std::size_t masks_;
  std::unordered_map<std::uint32_t, VectorSet> memo_;
};

}  // namespace

bool search_feasible(const SupportSet& s) {
  return s.size() <= kSearchMaxTuples && layout(s).total_width() <= kSearchMaxWidth &&
         s.informants() <= kSearchMaxInformants;
}

Certificate min_certificate(const SupportSet& s, const DataVector& x) {
  require_certificate_caps(s);
  const auto row = s.find(x);
  if (!row) throw MembershipError("data vector " + x.str() + " is not in the support set");
  return certificate_for(codes_of(s), *row);
}

unsigned certificate_c_b(const SupportSet& s) {
  require_certificate_caps(s);
  const Codes c = codes_of(s);
  unsigned best = 0;
  for (std::size_t x = 0; x < c.words.size(); ++x) best = std::max(best, certificate_for(c, x).size());
  return best;
}

SearchResult exhaustive_tree_search(const SupportSet& s) {
  if (!search_feasible(s)) {
    throw ResourceError("exhaustive search supports at most " + std::to_string(kSearchMaxTuples) +
                        " tuples, " + std::to_string(kSearchMaxWidth) + " code bits and " +
                        std::to_string(kSearchMaxInformants) + " informants");
  }
  TreeSearch search(s);
  const std::uint32_t all = s.size() == 0 ? 0 : (std::uint32_t{1} << s.size()) - 1;
  SearchResult result;
  result.vectors = search.solve(all);

  const std::uint64_t full = (std::uint64_t{1} << s.informants()) - 1;
  result.optimum = ~0u;
  for (const Vector& v : result.vectors) result.optimum = std::min(result.optimum, v[full]);
  for (std::uint64_t m = 1; m <= full; ++m) {
    unsigned best = ~0u;
    for (const Vector& v : result.vectors) {
      if (v[full] == result.optimum) best = std::min(best, v[m]);
    }
    result.min_bits_at_optimum[m] = best;
  }
  for (std::size_t i = 0; i < s.informants(); ++i) {
    result.per_informant.push_back(result.min_bits_at_optimum[std::uint64_t{1} << i]);
  }
  return result;
}

}  // namespace wcdsc::oracle
