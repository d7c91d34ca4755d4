#pragma once

// Plain memoized minimax over explicit row lists, written against codeword
// strings only. Used to pin block-extension values that are too large for
// the exhaustive tree search.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "wcdsc/support_model.hpp"

namespace wcdsc::testkit {

class ReferenceMinimax {
 public:
  explicit ReferenceMinimax(const SupportSet& s) {
    for (std::size_t r = 0; r < s.size(); ++r) codes_.push_back(encode(s, s.tuple(r)));
    width_ = codes_.empty() ? 0 : codes_.front().size();
  }

  unsigned optimum() {
    std::vector<std::size_t> all(codes_.size());
    for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
    return solve(all);
  }

 private:
  unsigned solve(const std::vector<std::size_t>& rows) {
    if (rows.size() <= 1) return 0;
    if (const auto it = memo_.find(rows); it != memo_.end()) return it->second;
    unsigned best = ~0u;
    for (std::size_t j = 0; j < width_; ++j) {
      std::vector<std::size_t> zero, one;
      for (std::size_t r : rows) (codes_[r][j] == '1' ? one : zero).push_back(r);
      if (zero.empty() || one.empty()) continue;
      best = std::min(best, 1 + std::max(solve(zero), solve(one)));
    }
    memo_.emplace(rows, best);
    return best;
  }

  std::vector<std::string> codes_;
  std::size_t width_ = 0;
  std::map<std::vector<std::size_t>, unsigned> memo_;
};

}  // namespace wcdsc::testkit
