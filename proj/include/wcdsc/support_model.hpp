#pragma once

// Joint support sets, their projections, the concatenated fixed-width bit
// encoding, bit conditioning and k-fold extensions.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace wcdsc {

// Smallest m with 2^m >= x; 0 for x <= 1.
constexpr unsigned ceil_log2(std::uint64_t x) noexcept {
  return x <= 1 ? 0u : static_cast<unsigned>(std::bit_width(x - 1));
}

// Opaque value label. A plain label has one part; a k-extension label is the
// k-tuple of its component labels and renders as "(a,b,...)".
class Label {
 public:
  Label() = default;
  explicit Label(std::string atom) { parts_.push_back(std::move(atom)); }

  static Label tuple(std::vector<std::string> parts) {
    Label label;
    label.parts_ = std::move(parts);
    return label;
  }

  const std::vector<std::string>& parts() const noexcept { return parts_; }
  std::string str() const;

  bool operator==(const Label&) const = default;
  auto operator<=>(const Label&) const = default;

 private:
  std::vector<std::string> parts_;
};

struct DataVector {
  std::vector<Label> values;

  std::string str() const;
  bool operator==(const DataVector&) const = default;
};

// Sorted, duplicate-free set of 0-based informant indices.
class InformantSet {
 public:
  InformantSet() = default;
  InformantSet(std::initializer_list<std::size_t> ids);
  explicit InformantSet(std::vector<std::size_t> ids);

  static InformantSet all(std::size_t n);
  static InformantSet from_mask(std::uint64_t mask);

  std::span<const std::size_t> ids() const noexcept { return ids_; }
  std::size_t size() const noexcept { return ids_.size(); }
  bool empty() const noexcept { return ids_.empty(); }
  bool contains(std::size_t id) const noexcept;
  std::uint64_t mask() const noexcept;
  // 1-based, comma separated: "1,2".
  std::string str() const;

  bool operator==(const InformantSet&) const = default;

 private:
  std::vector<std::size_t> ids_;
};

struct SupportEntry {
  std::vector<Label> values;
  std::optional<double> weight;  // absent means positive
};

struct BuildStats {
  std::size_t duplicates = 0;
  std::size_t zero_weight = 0;
};

class SupportSet {
 public:
  // Drops zero-weight entries, collapses duplicates and canonicalizes.
  // declared[i], when present and nonempty, fixes the rank order of
  // informant i's labels; otherwise labels are ordered ascending (numerically
  // when every label is an integer).
  // Throws DegenerateError when nothing survives and ParseError on arity or
  // alphabet mismatches.
  static SupportSet build(std::span<const SupportEntry> entries,
                          const std::vector<std::vector<Label>>& declared = {},
                          BuildStats* stats = nullptr);

  // Canonicalizes rows given as per-informant ranks into `marginals`. Labels
  // that no row uses are dropped and the rest re-ranked. An empty row list
  // yields the empty set (only reachable through conditioning).
  static SupportSet from_rank_rows(std::vector<std::vector<Label>> marginals,
                                   std::vector<std::uint32_t> flat_rows);

  std::size_t informants() const noexcept { return n_; }
  std::size_t size() const noexcept { return n_ == 0 ? 0 : ranks_.size() / n_; }
  bool empty() const noexcept { return ranks_.empty(); }

  std::span<const std::uint32_t> row(std::size_t r) const noexcept {
    return {ranks_.data() + r * n_, n_};
  }
  std::uint32_t rank(std::size_t r, std::size_t i) const noexcept {
    return ranks_[r * n_ + i];
  }
  std::span<const std::uint32_t> flat_rows() const noexcept { return ranks_; }

  // Marginal support of informant i in rank order.
  const std::vector<Label>& marginal(std::size_t i) const { return marginals_.at(i); }
  std::size_t marginal_size(std::size_t i) const { return marginals_.at(i).size(); }
  const std::vector<std::vector<Label>>& marginals() const noexcept { return marginals_; }

  DataVector tuple(std::size_t r) const;
  std::optional<std::size_t> find(const DataVector& x) const;
  std::optional<std::size_t> find_ranks(std::span<const std::uint32_t> ranks) const;
  bool contains(const DataVector& x) const { return find(x).has_value(); }
  std::optional<std::uint32_t> rank_of(std::size_t i, const Label& label) const;

  // Rows as build() entries (weight absent).
  std::vector<SupportEntry> entries() const;

  SupportSet filter(const std::function<bool(std::size_t)>& keep_row) const;
  // New informant j is old informant order[j].
  SupportSet permuted(std::span<const std::size_t> order) const;

  bool operator==(const SupportSet&) const = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::vector<Label>> marginals_;
  std::vector<std::uint32_t> ranks_;
};

// Marginal support of the informants in `subset`, in subset order.
SupportSet project(const SupportSet& s, const InformantSet& subset);

class BitLayout {
 public:
  struct Location {
    std::size_t informant;
    std::size_t local_bit;  // 0 is the most significant bit
  };

  BitLayout() = default;
  explicit BitLayout(std::vector<unsigned> widths);

  const std::vector<unsigned>& widths() const noexcept { return widths_; }
  const std::vector<unsigned>& offsets() const noexcept { return offsets_; }
  unsigned width(std::size_t i) const { return widths_.at(i); }
  unsigned offset(std::size_t i) const { return offsets_.at(i); }
  unsigned total_width() const noexcept { return total_; }
  std::size_t informants() const noexcept { return widths_.size(); }

  Location locate(unsigned global_bit) const;

  bool operator==(const BitLayout&) const = default;

 private:
  std::vector<unsigned> widths_;
  std::vector<unsigned> offsets_;
  unsigned total_ = 0;
};

BitLayout layout(const SupportSet& s);

// Known (global bit index -> value) facts at the sink.
class BitAssignment {
 public:
  // Throws DomainError when the index already carries the opposite value.
  void set(unsigned index, bool value);
  std::optional<bool> get(unsigned index) const;
  const std::map<unsigned, bool>& facts() const noexcept { return facts_; }
  std::size_t size() const noexcept { return facts_.size(); }

 private:
  std::map<unsigned, bool> facts_;
};

// Codeword of row r packed LSB-first: global bit j lives at bit position j.
std::uint64_t packed_code(const SupportSet& s, const BitLayout& l, std::size_t r);

// '0'/'1' string of length W, global bit 0 first. Throws MembershipError.
std::string encode(const SupportSet& s, const DataVector& x);
// Inverse of encode on codewords of elements of s. Throws MembershipError.
DataVector decode(const SupportSet& s, std::string_view bits);

// Tuples whose codewords agree with every fact; may be empty. Facts index the
// layout of s. Throws DomainError for indices outside the layout.
SupportSet condition(const SupportSet& s, const BitAssignment& a);

struct DefinedBits {
  std::vector<std::pair<unsigned, bool>> defined;  // forced values
  std::vector<unsigned> undefined;
};

// Requires s nonempty.
DefinedBits defined_bits(const SupportSet& s);

inline constexpr std::size_t kDefaultExtensionCap = std::size_t{1} << 16;

// S^k. Informant i's alphabet becomes the k-tuples over its marginal, ordered
// lexicographically by rank. k = 1 returns s unchanged. Throws ResourceError
// when |s|^k exceeds max_tuples and DomainError for k = 0.
SupportSet k_extension(const SupportSet& s, unsigned k,
                       std::size_t max_tuples = kDefaultExtensionCap);

}  // namespace wcdsc
