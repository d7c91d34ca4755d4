#pragma once

// Seeded random support sets for property and battery tests.

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "wcdsc/support_model.hpp"

namespace wcdsc::testkit {

struct RandomSetSpec {
  std::size_t min_informants = 2;
  std::size_t max_informants = 3;
  std::size_t max_alphabet = 4;
  std::size_t max_tuples = 20;
};

// Uniform subset of a random product of alphabets {0..a_i-1}, at least one
// tuple.
inline SupportSet random_support(std::mt19937_64& rng, const RandomSetSpec& spec = {}) {
  std::uniform_int_distribution<std::size_t> n_dist(spec.min_informants, spec.max_informants);
  std::uniform_int_distribution<std::size_t> a_dist(1, spec.max_alphabet);
  const std::size_t n = n_dist(rng);
  std::vector<std::size_t> alphabet(n);
  std::size_t product = 1;
  for (auto& a : alphabet) {
    a = a_dist(rng);
    product *= a;
  }
  std::vector<std::size_t> cells(product);
  for (std::size_t i = 0; i < product; ++i) cells[i] = i;
  std::shuffle(cells.begin(), cells.end(), rng);
  std::uniform_int_distribution<std::size_t> mu_dist(1, std::min(product, spec.max_tuples));
  cells.resize(mu_dist(rng));

  std::vector<SupportEntry> entries;
  for (std::size_t cell : cells) {
    SupportEntry e;
    for (std::size_t i = 0; i < n; ++i) {
      e.values.emplace_back(std::to_string(cell % alphabet[i]));
      cell /= alphabet[i];
    }
    entries.push_back(std::move(e));
  }
  return SupportSet::build(entries);
}

}  // namespace wcdsc::testkit
