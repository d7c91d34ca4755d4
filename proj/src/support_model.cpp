#include "wcdsc/support_model.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#include "wcdsc/errors.hpp"

namespace wcdsc {
namespace {

std::string join(const std::vector<std::string>& parts) {
  std::string out = "(";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) out += ',';
    out += parts[i];
  }
  out += ')';
  return out;
}

std::optional<long long> as_integer(const Label& label) {
  if (label.parts().size() != 1) return std::nullopt;
  const std::string& text = label.parts().front();
  long long value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return value;
}

// Ascending order; numeric when every label is an integer.
void natural_sort(std::vector<Label>& labels) {
  std::vector<std::optional<long long>> numeric;
  numeric.reserve(labels.size());
  bool all_numeric = true;
  for (const Label& l : labels) {
    numeric.push_back(as_integer(l));
    all_numeric = all_numeric && numeric.back().has_value();
  }
  if (!all_numeric) {
    std::sort(labels.begin(), labels.end());
    return;
  }
  std::vector<std::size_t> order(labels.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (*numeric[a] != *numeric[b]) return *numeric[a] < *numeric[b];
    return labels[a] < labels[b];  // "01" vs "1"
  });
  std::vector<Label> sorted;
  sorted.reserve(labels.size());
  for (std::size_t idx : order) sorted.push_back(std::move(labels[idx]));
  labels = std::move(sorted);
}

bool code_bit(std::uint32_t rank, unsigned width, std::size_t local_bit) {
  return ((rank >> (width - 1 - local_bit)) & 1u) != 0;
}

}  // namespace

std::string Label::str() const {
  if (parts_.size() == 1) return parts_.front();
  return join(parts_);
}

std::string DataVector::str() const {
  std::vector<std::string> parts;
  parts.reserve(values.size());
  for (const Label& v : values) parts.push_back(v.str());
  return join(parts);
}

InformantSet::InformantSet(std::initializer_list<std::size_t> ids)
    : InformantSet(std::vector<std::size_t>(ids)) {}

InformantSet::InformantSet(std::vector<std::size_t> ids) : ids_(std::move(ids)) {
  std::sort(ids_.begin(), ids_.end());
  ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
}

InformantSet InformantSet::all(std::size_t n) {
  std::vector<std::size_t> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return InformantSet(std::move(ids));
}

InformantSet InformantSet::from_mask(std::uint64_t mask) {
  std::vector<std::size_t> ids;
  for (std::size_t i = 0; i < 64; ++i) {
    if (mask >> i & 1u) ids.push_back(i);
  }
  return InformantSet(std::move(ids));
}

bool InformantSet::contains(std::size_t id) const noexcept {
  return std::binary_search(ids_.begin(), ids_.end(), id);
}

std::uint64_t InformantSet::mask() const noexcept {
  std::uint64_t m = 0;
  for (std::size_t id : ids_) m |= std::uint64_t{1} << id;
  return m;
}

std::string InformantSet::str() const {
  std::string out;
  for (std::size_t i = 0; i < ids_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(ids_[i] + 1);
  }
  return out;
}

SupportSet SupportSet::build(std::span<const SupportEntry> entries,
                             const std::vector<std::vector<Label>>& declared,
                             BuildStats* stats) {
  BuildStats local;
  std::size_t n = declared.size();
  std::vector<const SupportEntry*> kept;
  for (const SupportEntry& e : entries) {
    if (n == 0) n = e.values.size();
    if (e.values.size() != n || n == 0) {
      throw ParseError("tuple arity " + std::to_string(e.values.size()) +
                           " does not match " + std::to_string(n) + " informants",
                       0, 0);
    }
    if (e.weight) {
      if (*e.weight < 0.0) throw ParseError("negative weight", 0, 0);
      if (*e.weight == 0.0) {
        ++local.zero_weight;
        continue;
      }
    }
    kept.push_back(&e);
  }
  if (kept.empty()) {
    if (stats) *stats = local;
    throw DegenerateError("degenerate distribution: no tuple has positive weight");
  }

  std::vector<std::vector<Label>> marginals(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<Label> used;
    for (const SupportEntry* e : kept) used.push_back(e->values[i]);
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());

    if (i < declared.size() && !declared[i].empty()) {
      for (const Label& l : used) {
        if (std::find(declared[i].begin(), declared[i].end(), l) == declared[i].end()) {
          throw ParseError("label '" + l.str() + "' not in alphabet of informant " +
                               std::to_string(i + 1),
                           0, 0);
        }
      }
      for (const Label& l : declared[i]) {
        const bool is_used = std::binary_search(used.begin(), used.end(), l);
        const bool seen = std::find(marginals[i].begin(), marginals[i].end(), l) !=
                          marginals[i].end();
        if (is_used && !seen) marginals[i].push_back(l);
      }
    } else {
      natural_sort(used);
      marginals[i] = std::move(used);
    }
  }

  std::vector<std::uint32_t> flat;
  flat.reserve(kept.size() * n);
  for (const SupportEntry* e : kept) {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& m = marginals[i];
      const auto it = std::find(m.begin(), m.end(), e->values[i]);
      flat.push_back(static_cast<std::uint32_t>(it - m.begin()));
    }
  }
  SupportSet s = from_rank_rows(std::move(marginals), std::move(flat));
  local.duplicates = kept.size() - s.size();
  if (stats) *stats = local;
  return s;
}

SupportSet SupportSet::from_rank_rows(std::vector<std::vector<Label>> marginals,
                                      std::vector<std::uint32_t> flat_rows) {
  SupportSet s;
  s.n_ = marginals.size();
  const std::size_t n = s.n_;
  if (n == 0 || flat_rows.empty()) {
    s.marginals_.assign(n, {});
    return s;
  }
  const std::size_t rows = flat_rows.size() / n;

  std::vector<std::size_t> order(rows);
  std::iota(order.begin(), order.end(), 0);
  auto row_at = [&](std::size_t r) {
    return std::span<const std::uint32_t>(flat_rows.data() + r * n, n);
  };
  auto less = [&](std::size_t a, std::size_t b) {
    auto ra = row_at(a);
    auto rb = row_at(b);
    return std::lexicographical_compare(ra.begin(), ra.end(), rb.begin(), rb.end());
  };
  std::sort(order.begin(), order.end(), less);
  order.erase(std::unique(order.begin(), order.end(),
                          [&](std::size_t a, std::size_t b) {
                            auto ra = row_at(a);
                            auto rb = row_at(b);
                            return std::equal(ra.begin(), ra.end(), rb.begin());
                          }),
              order.end());

  // Drop labels no row uses; order-preserving remap keeps rows sorted.
  std::vector<std::vector<std::uint32_t>> remap(n);
  s.marginals_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<bool> used(marginals[i].size(), false);
    for (std::size_t r : order) used.at(flat_rows[r * n + i]) = true;
    remap[i].assign(marginals[i].size(), 0);
    for (std::size_t v = 0; v < marginals[i].size(); ++v) {
      if (!used[v]) continue;
      remap[i][v] = static_cast<std::uint32_t>(s.marginals_[i].size());
      s.marginals_[i].push_back(std::move(marginals[i][v]));
    }
  }
  s.ranks_.reserve(order.size() * n);
  for (std::size_t r : order) {
    for (std::size_t i = 0; i < n; ++i) s.ranks_.push_back(remap[i][flat_rows[r * n + i]]);
  }
  return s;
}

DataVector SupportSet::tuple(std::size_t r) const {
  DataVector x;
  x.values.reserve(n_);
  for (std::size_t i = 0; i < n_; ++i) x.values.push_back(marginals_[i][rank(r, i)]);
  return x;
}

std::optional<std::uint32_t> SupportSet::rank_of(std::size_t i, const Label& label) const {
  const auto& m = marginals_.at(i);
  const auto it = std::find(m.begin(), m.end(), label);
  if (it == m.end()) return std::nullopt;
  return static_cast<std::uint32_t>(it - m.begin());
}

std::optional<std::size_t> SupportSet::find(const DataVector& x) const {
  if (x.values.size() != n_) return std::nullopt;
  std::vector<std::uint32_t> ranks(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    auto r = rank_of(i, x.values[i]);
    if (!r) return std::nullopt;
    ranks[i] = *r;
  }
  return find_ranks(ranks);
}

std::optional<std::size_t> SupportSet::find_ranks(std::span<const std::uint32_t> ranks) const {
  if (ranks.size() != n_) return std::nullopt;
  std::size_t lo = 0;
  std::size_t hi = size();
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    auto r = row(mid);
    if (std::lexicographical_compare(r.begin(), r.end(), ranks.begin(), ranks.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo < size() && std::ranges::equal(row(lo), ranks)) return lo;
  return std::nullopt;
}

std::vector<SupportEntry> SupportSet::entries() const {
  std::vector<SupportEntry> out;
  out.reserve(size());
  for (std::size_t r = 0; r < size(); ++r) out.push_back({tuple(r).values, std::nullopt});
  return out;
}

SupportSet SupportSet::filter(const std::function<bool(std::size_t)>& keep_row) const {
  std::vector<std::uint32_t> flat;
  for (std::size_t r = 0; r < size(); ++r) {
    if (keep_row(r)) flat.insert(flat.end(), row(r).begin(), row(r).end());
  }
  return from_rank_rows(marginals_, std::move(flat));
}

SupportSet SupportSet::permuted(std::span<const std::size_t> order) const {
  if (order.size() != n_) throw DomainError("permutation arity mismatch");
  std::vector<std::vector<Label>> marginals;
  for (std::size_t j : order) marginals.push_back(marginals_.at(j));
  std::vector<std::uint32_t> flat;
  flat.reserve(ranks_.size());
  for (std::size_t r = 0; r < size(); ++r) {
    for (std::size_t j : order) flat.push_back(rank(r, j));
  }
  return from_rank_rows(std::move(marginals), std::move(flat));
}

SupportSet project(const SupportSet& s, const InformantSet& subset) {
  if (subset.empty()) throw DomainError("projection onto an empty informant set");
  for (std::size_t i : subset.ids()) {
    if (i >= s.informants()) throw DomainError("informant index out of range");
  }
  std::vector<std::vector<Label>> marginals;
  for (std::size_t i : subset.ids()) marginals.push_back(s.marginal(i));
  std::vector<std::uint32_t> flat;
  flat.reserve(s.size() * subset.size());
  for (std::size_t r = 0; r < s.size(); ++r) {
    for (std::size_t i : subset.ids()) flat.push_back(s.rank(r, i));
  }
  return SupportSet::from_rank_rows(std::move(marginals), std::move(flat));
}

BitLayout::BitLayout(std::vector<unsigned> widths) : widths_(std::move(widths)) {
  offsets_.reserve(widths_.size());
  for (unsigned w : widths_) {
    offsets_.push_back(total_);
    total_ += w;
  }
}

BitLayout::Location BitLayout::locate(unsigned global_bit) const {
  if (global_bit >= total_) throw DomainError("bit index outside layout");
  // Last informant whose offset is <= global_bit and whose width is nonzero.
  for (std::size_t i = widths_.size(); i-- > 0;) {
    if (widths_[i] > 0 && offsets_[i] <= global_bit) {
      return {i, global_bit - offsets_[i]};
    }
  }
  throw DomainError("bit index outside layout");
}

BitLayout layout(const SupportSet& s) {
  std::vector<unsigned> widths;
  widths.reserve(s.informants());
  for (std::size_t i = 0; i < s.informants(); ++i) widths.push_back(ceil_log2(s.marginal_size(i)));
  return BitLayout(std::move(widths));
}

void BitAssignment::set(unsigned index, bool value) {
  auto [it, inserted] = facts_.emplace(index, value);
  if (!inserted && it->second != value) {
    throw DomainError("conflicting facts for bit " + std::to_string(index));
  }
}

std::optional<bool> BitAssignment::get(unsigned index) const {
  auto it = facts_.find(index);
  if (it == facts_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t packed_code(const SupportSet& s, const BitLayout& l, std::size_t r) {
  std::uint64_t code = 0;
  for (std::size_t i = 0; i < l.informants(); ++i) {
    const unsigned w = l.width(i);
    const std::uint32_t rank = s.rank(r, i);
    for (unsigned b = 0; b < w; ++b) {
      if (code_bit(rank, w, b)) code |= std::uint64_t{1} << (l.offset(i) + b);
    }
  }
  return code;
}

std::string encode(const SupportSet& s, const DataVector& x) {
  const auto row = s.find(x);
  if (!row) throw MembershipError("data vector " + x.str() + " is not in the support set");
  const BitLayout l = layout(s);
  std::string bits;
  bits.reserve(l.total_width());
  for (std::size_t i = 0; i < s.informants(); ++i) {
    const unsigned w = l.width(i);
    for (unsigned b = 0; b < w; ++b) bits += code_bit(s.rank(*row, i), w, b) ? '1' : '0';
  }
  return bits;
}

DataVector decode(const SupportSet& s, std::string_view bits) {
  const BitLayout l = layout(s);
  if (bits.size() != l.total_width()) {
    throw MembershipError("codeword length " + std::to_string(bits.size()) +
                          " does not match layout width " + std::to_string(l.total_width()));
  }
  std::vector<std::uint32_t> ranks(s.informants());
  for (std::size_t i = 0; i < s.informants(); ++i) {
    std::uint32_t rank = 0;
    for (unsigned b = 0; b < l.width(i); ++b) {
      const char c = bits[l.offset(i) + b];
      if (c != '0' && c != '1') throw MembershipError("codeword holds a non-binary character");
      rank = rank << 1 | (c == '1' ? 1u : 0u);
    }
    if (rank >= s.marginal_size(i)) throw MembershipError("codeword outside informant alphabet");
    ranks[i] = rank;
  }
  const auto row = s.find_ranks(ranks);
  if (!row) throw MembershipError("codeword does not name an element of the support set");
  return s.tuple(*row);
}

SupportSet condition(const SupportSet& s, const BitAssignment& a) {
  const BitLayout l = layout(s);
  struct Check {
    std::size_t informant;
    unsigned width;
    std::size_t local;
    bool value;
  };
  std::vector<Check> checks;
  for (const auto& [index, value] : a.facts()) {
    if (index >= l.total_width()) throw DomainError("fact index outside layout");
    const auto loc = l.locate(index);
    checks.push_back({loc.informant, l.width(loc.informant), loc.local_bit, value});
  }
  return s.filter([&](std::size_t r) {
    for (const Check& c : checks) {
      if (code_bit(s.rank(r, c.informant), c.width, c.local) != c.value) return false;
    }
    return true;
  });
}

DefinedBits defined_bits(const SupportSet& s) {
  if (s.empty()) throw DomainError("defined bits of an empty set");
  const BitLayout l = layout(s);
  DefinedBits out;
  for (std::size_t i = 0; i < s.informants(); ++i) {
    const unsigned w = l.width(i);
    for (unsigned b = 0; b < w; ++b) {
      const unsigned global = l.offset(i) + b;
      const bool first = code_bit(s.rank(0, i), w, b);
      bool agree = true;
      for (std::size_t r = 1; r < s.size() && agree; ++r) {
        agree = code_bit(s.rank(r, i), w, b) == first;
      }
      if (agree) {
        out.defined.emplace_back(global, first);
      } else {
        out.undefined.push_back(global);
      }
    }
  }
  return out;
}

SupportSet k_extension(const SupportSet& s, unsigned k, std::size_t max_tuples) {
  if (k == 0) throw DomainError("extension order must be positive");
  if (k == 1) return s;
  const std::size_t mu = s.size();
  std::size_t total = 1;
  for (unsigned t = 0; t < k; ++t) {
    if (mu != 0 && total > max_tuples / mu) {
      throw ResourceError(std::to_string(k) + "-extension of a " + std::to_string(mu) +
                          "-tuple set exceeds the cap of " + std::to_string(max_tuples));
    }
    total *= mu;
  }
  const std::size_t n = s.informants();

  std::vector<std::vector<Label>> marginals(n);
  std::vector<std::uint32_t> radix(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t base = s.marginal_size(i);
    std::size_t count = 1;
    for (unsigned t = 0; t < k; ++t) count *= base;
    radix[i] = static_cast<std::uint32_t>(base);
    marginals[i].reserve(count);
    std::vector<std::size_t> digits(k, 0);
    for (std::size_t idx = 0; idx < count; ++idx) {
      std::size_t rest = idx;
      for (unsigned t = k; t-- > 0;) {
        digits[t] = rest % base;
        rest /= base;
      }
      std::vector<std::string> parts;
      parts.reserve(k);
      for (std::size_t d : digits) parts.push_back(s.marginal(i)[d].str());
      marginals[i].push_back(Label::tuple(std::move(parts)));
    }
  }

  std::vector<std::uint32_t> flat;
  flat.reserve(total * n);
  std::vector<std::size_t> rows(k, 0);
  for (std::size_t combo = 0; combo < total; ++combo) {
    std::size_t rest = combo;
    for (unsigned t = k; t-- > 0;) {
      rows[t] = rest % mu;
      rest /= mu;
    }
    for (std::size_t i = 0; i < n; ++i) {
      std::uint32_t rank = 0;
      for (unsigned t = 0; t < k; ++t) rank = rank * radix[i] + s.rank(rows[t], i);
      flat.push_back(rank);
    }
  }
  return SupportSet::from_rank_rows(std::move(marginals), std::move(flat));
}

}  // namespace wcdsc
