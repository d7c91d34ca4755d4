#pragma once

// Column-major view of a support set's codewords. A conditional ambiguity set
// is a TupleSet (bitset over the rows of the root support set); conditioning
// on one bit is an AND / ANDNOT with that bit's column.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "wcdsc/support_model.hpp"

namespace wcdsc {

class TupleSet {
 public:
  TupleSet() = default;
  explicit TupleSet(std::size_t bits) : bits_(bits), words_((bits + 63) / 64, 0) {}
  static TupleSet full(std::size_t bits);

  std::size_t bits() const noexcept { return bits_; }
  std::size_t word_count() const noexcept { return words_.size(); }
  std::span<const std::uint64_t> words() const noexcept { return words_; }
  std::span<std::uint64_t> words() noexcept { return words_; }

  std::size_t count() const noexcept;
  bool test(std::size_t i) const noexcept { return words_[i / 64] >> (i % 64) & 1u; }
  void set(std::size_t i) noexcept { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  std::optional<std::size_t> first() const noexcept;
  std::vector<std::size_t> rows() const;

  bool operator==(const TupleSet&) const = default;

 private:
  std::size_t bits_ = 0;
  std::vector<std::uint64_t> words_;
};

struct TupleSetHash {
  std::size_t operator()(const TupleSet& s) const noexcept;
};

inline constexpr unsigned kMaxCodeWidth = 64;

class CodeBook {
 public:
  // Throws ResourceError when the layout is wider than kMaxCodeWidth.
  explicit CodeBook(SupportSet s);

  const SupportSet& support() const noexcept { return support_; }
  const BitLayout& layout() const noexcept { return layout_; }
  std::size_t size() const noexcept { return codes_.size(); }
  unsigned width() const noexcept { return layout_.total_width(); }

  std::uint64_t code(std::size_t row) const { return codes_.at(row); }
  bool bit(std::size_t row, unsigned j) const { return codes_.at(row) >> j & 1u; }
  std::size_t owner(unsigned j) const { return owner_.at(j); }
  std::size_t local_bit(unsigned j) const { return j - layout_.offset(owner_.at(j)); }
  std::span<const std::uint64_t> column(unsigned j) const { return columns_.at(j).words(); }

  TupleSet full() const { return TupleSet::full(size()); }

  // N^1 at location j over c.
  std::size_t ones(const TupleSet& c, unsigned j) const noexcept;
  void split(const TupleSet& c, unsigned j, TupleSet& zero, TupleSet& one) const;
  TupleSet restrict(const TupleSet& c, unsigned j, bool value) const;

  // Locations where c holds both values. c_count must equal c.count().
  std::vector<unsigned> undefined_bits(const TupleSet& c, std::size_t c_count) const;
  std::vector<unsigned> undefined_bits(const TupleSet& c) const {
    return undefined_bits(c, c.count());
  }

  TupleSet condition(const BitAssignment& a) const;
  // Support set holding exactly the rows of c.
  SupportSet materialize(const TupleSet& c) const;

 private:
  SupportSet support_;
  BitLayout layout_;
  std::vector<std::uint64_t> codes_;
  std::vector<std::size_t> owner_;
  std::vector<TupleSet> columns_;
};

}  // namespace wcdsc
