#pragma once

// Sink-driven interactive data gathering. The sink knows the joint support
// set and polls individual codeword bits; informants are memoryless and only
// answer with bits of their own codeword.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wcdsc/code_book.hpp"
#include "wcdsc/support_model.hpp"

namespace wcdsc {

enum class ProtocolId { bit_serial, round_parallel, k_bit_serial };

std::string_view protocol_name(ProtocolId id) noexcept;
std::optional<ProtocolId> parse_protocol(std::string_view name) noexcept;

struct TieRule {
  enum class Mode { lowest_index, seeded_random };

  Mode mode = Mode::lowest_index;
  std::uint64_t seed = 0;

  static TieRule lowest_index() { return {}; }
  static TieRule seeded_random(std::uint64_t seed) { return {Mode::seeded_random, seed}; }
  bool deterministic() const noexcept { return mode == Mode::lowest_index; }
};

class Responder {
 public:
  static Responder honest(DataVector x) { return Responder(std::move(x)); }
  static Responder adversarial() { return Responder(); }

  bool is_adversarial() const noexcept { return !value_; }
  const DataVector& value() const { return *value_; }

 private:
  Responder() = default;
  explicit Responder(DataVector x) : value_(std::move(x)) {}

  std::optional<DataVector> value_;
};

struct Query {
  std::size_t informant = 0;
  std::size_t local_bit = 0;
  unsigned global_bit = 0;

  bool operator==(const Query&) const = default;
};

struct Round {
  std::vector<Query> queries;
  std::vector<bool> responses;
  std::size_t mu_before = 0;
  std::size_t mu_after = 0;
  std::size_t sink_bits = 0;

  bool operator==(const Round&) const = default;
};

struct Transcript {
  ProtocolId protocol = ProtocolId::bit_serial;
  unsigned block_length = 1;
  std::size_t informants = 0;
  std::size_t initial_mu = 0;
  std::vector<Round> rounds;
  std::size_t informant_bits = 0;
  std::size_t sink_bits = 0;
  std::size_t round_count = 0;
  std::vector<std::size_t> per_informant_bits;
  SupportSet final_set;
  std::optional<DataVector> decoded;

  bool operator==(const Transcript&) const = default;
};

// Sink cost of addressing one bit of an informant with codeword width w:
// ceil(log2 w), zero for w <= 1.
unsigned address_bits(unsigned width) noexcept;

Transcript run_bit_serial(const CodeBook& book, const Responder& responder,
                          const TieRule& tie = {});
Transcript run_bit_serial(const SupportSet& s, const Responder& responder,
                          const TieRule& tie = {});

Transcript run_round_parallel(const CodeBook& book, const Responder& responder,
                              const TieRule& tie = {});
Transcript run_round_parallel(const SupportSet& s, const Responder& responder,
                              const TieRule& tie = {});

// Bit-Serial on k_extension(s, k). An honest responder carries a data vector
// of the extension (one k-tuple label per informant).
Transcript run_k_bit_serial(const SupportSet& s, unsigned k, const Responder& responder,
                            const TieRule& tie = {},
                            std::size_t max_tuples = kDefaultExtensionCap);

// Builds the extension data vector from k samples of the base set.
DataVector extension_vector(const std::vector<DataVector>& samples);

struct SweepReport {
  ProtocolId protocol = ProtocolId::bit_serial;
  std::size_t runs = 0;
  std::size_t max_informant_bits = 0;
  std::size_t total_informant_bits = 0;  // over all honest runs; mean = total / runs
  std::vector<std::size_t> per_informant_worst;
  std::size_t max_rounds = 0;
  std::size_t max_sink_bits = 0;
  std::size_t adversarial_informant_bits = 0;
  std::size_t adversarial_rounds = 0;
  std::size_t adversarial_sink_bits = 0;
  bool all_decoded = true;
  // Honest totals per support row, in row order.
  std::vector<std::size_t> honest_bits;
  // Adversarial total equals the honest maximum. Only asserted for
  // deterministic tie rules.
  bool adversary_realizes_worst = true;
};

// Runs the protocol honestly for every element and once adversarially.
// Throws InvariantError when an honest run fails to decode its input.
SweepReport worst_case_sweep(const SupportSet& s, ProtocolId protocol, const TieRule& tie = {},
                             unsigned k = 1, std::size_t max_tuples = kDefaultExtensionCap);

struct ShrinkDiagnostics {
  std::vector<double> epsilons;
  double epsilon = 0.0;
  bool vacuous = false;  // epsilon >= 1: the round bound says nothing
  // Bit-Serial: ceil(log2 mu / (1 - eps)). Round-Parallel: k* =
  // ceil(log2 mu / ((1 - eps) * I)) with I = ceil(log2 mu) of the initial set.
  std::size_t round_bound = 0;
  // Round-Parallel only: ceil(1 / (1 - eps)), which dominates k*.
  std::size_t coarse_round_bound = 0;
  bool rounds_within_bound = true;
  // Round-Parallel only: informant bits <= k* * I and sink bits <= k* times
  // the largest per-round sink cost.
  bool informant_bits_within_bound = true;
  bool sink_bits_within_bound = true;
};

ShrinkDiagnostics round_shrink_diagnostics(const Transcript& tr);

}  // namespace wcdsc
