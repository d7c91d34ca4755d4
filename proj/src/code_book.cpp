#include "wcdsc/code_book.hpp"

#include <bit>

#include "wcdsc/bit_kernels.hpp"
#include "wcdsc/errors.hpp"

namespace wcdsc {

TupleSet TupleSet::full(std::size_t bits) {
  TupleSet s(bits);
  for (std::size_t w = 0; w < s.words_.size(); ++w) s.words_[w] = ~std::uint64_t{0};
  if (bits % 64 != 0) s.words_.back() = (std::uint64_t{1} << (bits % 64)) - 1;
  return s;
}

std::size_t TupleSet::count() const noexcept { return simd::popcount(words_); }

std::optional<std::size_t> TupleSet::first() const noexcept {
  for (std::size_t w = 0; w < words_.size(); ++w) {
    if (words_[w]) return w * 64 + static_cast<std::size_t>(std::countr_zero(words_[w]));
  }
  return std::nullopt;
}

std::vector<std::size_t> TupleSet::rows() const {
  std::vector<std::size_t> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t word = words_[w];
    while (word) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(word)));
      word &= word - 1;
    }
  }
  return out;
}

std::size_t TupleSetHash::operator()(const TupleSet& s) const noexcept {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ s.bits();
  for (std::uint64_t w : s.words()) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdull;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

CodeBook::CodeBook(SupportSet s) : support_(std::move(s)), layout_(wcdsc::layout(support_)) {
  if (layout_.total_width() > kMaxCodeWidth) {
    throw ResourceError("codeword width " + std::to_string(layout_.total_width()) +
                        " exceeds " + std::to_string(kMaxCodeWidth) + " bits");
  }
  codes_.reserve(support_.size());
  for (std::size_t r = 0; r < support_.size(); ++r) codes_.push_back(packed_code(support_, layout_, r));
  const unsigned w = layout_.total_width();
  owner_.resize(w);
  columns_.assign(w, TupleSet(support_.size()));
  for (unsigned j = 0; j < w; ++j) {
    owner_[j] = layout_.locate(j).informant;
    for (std::size_t r = 0; r < codes_.size(); ++r) {
      if (codes_[r] >> j & 1u) columns_[j].set(r);
    }
  }
}

std::size_t CodeBook::ones(const TupleSet& c, unsigned j) const noexcept {
  return simd::popcount_and(c.words(), columns_[j].words());
}

void CodeBook::split(const TupleSet& c, unsigned j, TupleSet& zero, TupleSet& one) const {
  zero = TupleSet(c.bits());
  one = TupleSet(c.bits());
  simd::andnot_into(zero.words(), c.words(), columns_[j].words());
  simd::and_into(one.words(), c.words(), columns_[j].words());
}

TupleSet CodeBook::restrict(const TupleSet& c, unsigned j, bool value) const {
  TupleSet out(c.bits());
  if (value) {
    simd::and_into(out.words(), c.words(), columns_[j].words());
  } else {
    simd::andnot_into(out.words(), c.words(), columns_[j].words());
  }
  return out;
}

std::vector<unsigned> CodeBook::undefined_bits(const TupleSet& c, std::size_t c_count) const {
  std::vector<unsigned> out;
  for (unsigned j = 0; j < width(); ++j) {
    const std::size_t n1 = ones(c, j);
    if (n1 != 0 && n1 != c_count) out.push_back(j);
  }
  return out;
}

TupleSet CodeBook::condition(const BitAssignment& a) const {
  TupleSet c = full();
  for (const auto& [index, value] : a.facts()) {
    if (index >= width()) throw DomainError("fact index outside layout");
    c = restrict(c, index, value);
  }
  return c;
}

SupportSet CodeBook::materialize(const TupleSet& c) const {
  return support_.filter([&](std::size_t r) { return c.test(r); });
}

}  // namespace wcdsc
