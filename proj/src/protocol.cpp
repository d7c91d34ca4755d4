#include "wcdsc/protocol.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "wcdsc/errors.hpp"

namespace wcdsc {
namespace {

class TieBreaker {
 public:
  explicit TieBreaker(const TieRule& rule) : rule_(rule), rng_(rule.seed) {}

  unsigned pick(const std::vector<unsigned>& ties) {
    if (rule_.deterministic() || ties.size() == 1) return ties.front();
    return ties[rng_() % ties.size()];
  }

 private:
  TieRule rule_;
  std::mt19937_64 rng_;
};

std::size_t imbalance(std::size_t mu, std::size_t ones) {
  const std::size_t zeros = mu - ones;
  return zeros > ones ? zeros - ones : ones - zeros;
}

// argmin over undefined locations of |N^0 - N^1|; nullopt when every bit is
// defined. `excluded` locations are skipped.
std::optional<unsigned> most_balanced(const CodeBook& book, const TupleSet& c, std::size_t mu,
                                      TieBreaker& ties,
                                      const std::vector<unsigned>& excluded = {}) {
  std::vector<unsigned> best;
  std::size_t best_gap = mu + 1;
  for (unsigned j = 0; j < book.width(); ++j) {
    if (std::find(excluded.begin(), excluded.end(), j) != excluded.end()) continue;
    const std::size_t ones = book.ones(c, j);
    if (ones == 0 || ones == mu) continue;
    const std::size_t gap = imbalance(mu, ones);
    if (gap < best_gap) {
      best_gap = gap;
      best.assign(1, j);
    } else if (gap == best_gap) {
      best.push_back(j);
    }
  }
  if (best.empty()) return std::nullopt;
  return ties.pick(best);
}

// Value keeping the larger part of c; 0 on a tie.
bool worst_case_value(const CodeBook& book, const TupleSet& c, std::size_t mu, unsigned j) {
  const std::size_t ones = book.ones(c, j);
  return ones > mu - ones;
}

std::size_t require_member(const CodeBook& book, const Responder& responder) {
  const auto row = book.support().find(responder.value());
  if (!row) {
    throw MembershipError("data vector " + responder.value().str() +
                          " is not in the support set");
  }
  return *row;
}

Transcript start(const CodeBook& book, ProtocolId id) {
  Transcript tr;
  tr.protocol = id;
  tr.informants = book.support().informants();
  tr.initial_mu = book.size();
  tr.per_informant_bits.assign(tr.informants, 0);
  return tr;
}

void finish(const CodeBook& book, const TupleSet& c, Transcript& tr) {
  tr.round_count = tr.rounds.size();
  tr.final_set = book.materialize(c);
  if (tr.final_set.size() == 1) tr.decoded = tr.final_set.tuple(0);
}

}  // namespace

std::string_view protocol_name(ProtocolId id) noexcept {
  switch (id) {
    case ProtocolId::bit_serial: return "bit-serial";
    case ProtocolId::round_parallel: return "round-parallel";
    case ProtocolId::k_bit_serial: return "k-bit-serial";
  }
  return "unknown";
}

std::optional<ProtocolId> parse_protocol(std::string_view name) noexcept {
  for (ProtocolId id : {ProtocolId::bit_serial, ProtocolId::round_parallel, ProtocolId::k_bit_serial}) {
    if (name == protocol_name(id)) return id;
  }
  return std::nullopt;
}

unsigned address_bits(unsigned width) noexcept { return width <= 1 ? 0 : ceil_log2(width); }

Transcript run_bit_serial(const CodeBook& book, const Responder& responder, const TieRule& tie) {
  const std::optional<std::size_t> secret =
      responder.is_adversarial() ? std::nullopt : std::optional(require_member(book, responder));
  Transcript tr = start(book, ProtocolId::bit_serial);
  const unsigned informant_address = ceil_log2(tr.informants);
  TieBreaker ties(tie);

  TupleSet c = book.full();
  std::size_t mu = c.count();
  while (mu > 1) {
    const auto j = most_balanced(book, c, mu, ties);
    if (!j) throw InvariantError("conditional set has several elements but no undefined bit");
    const bool value = secret ? book.bit(*secret, *j) : worst_case_value(book, c, mu, *j);
    TupleSet next = book.restrict(c, *j, value);
    const std::size_t next_mu = next.count();

    Round round;
    const std::size_t owner = book.owner(*j);
    round.queries.push_back({owner, book.local_bit(*j), *j});
    round.responses.push_back(value);
    round.mu_before = mu;
    round.mu_after = next_mu;
    round.sink_bits = informant_address + address_bits(book.layout().width(owner));
    tr.informant_bits += 1;
    tr.per_informant_bits[owner] += 1;
    tr.sink_bits += round.sink_bits;
    tr.rounds.push_back(std::move(round));

    c = std::move(next);
    mu = next_mu;
  }
  finish(book, c, tr);
  return tr;
}

Transcript run_bit_serial(const SupportSet& s, const Responder& responder, const TieRule& tie) {
  return run_bit_serial(CodeBook(s), responder, tie);
}

Transcript run_round_parallel(const CodeBook& book, const Responder& responder,
                              const TieRule& tie) {
  const std::optional<std::size_t> secret =
      responder.is_adversarial() ? std::nullopt : std::optional(require_member(book, responder));
  Transcript tr = start(book, ProtocolId::round_parallel);
  const std::size_t n = tr.informants;
  const std::size_t fixed_sink = n * ceil_log2(n) + n;
  TieBreaker ties(tie);

  TupleSet c = book.full();
  std::size_t mu = c.count();
  while (mu > 1) {
    const unsigned batch = ceil_log2(mu);
    // Pick the batch one location at a time, each under the worst-case
    // values hypothesized for the earlier picks.
    TupleSet hypothesis = c;
    std::size_t hypothesis_mu = mu;
    std::vector<unsigned> chosen;
    std::vector<bool> worst;
    for (unsigned k = 0; k < batch; ++k) {
      const auto j = most_balanced(book, hypothesis, hypothesis_mu, ties, chosen);
      // Unreachable: after k < ceil(log2 mu) worst-case picks at least
      // mu / 2^k > 1 candidates remain.
      if (!j) break;
      const bool value = worst_case_value(book, hypothesis, hypothesis_mu, *j);
      hypothesis = book.restrict(hypothesis, *j, value);
      hypothesis_mu = hypothesis.count();
      chosen.push_back(*j);
      worst.push_back(value);
    }

    Round round;
    round.mu_before = mu;
    round.sink_bits = fixed_sink;
    TupleSet next = c;
    for (std::size_t k = 0; k < chosen.size(); ++k) {
      const unsigned j = chosen[k];
      const bool value = secret ? book.bit(*secret, j) : worst[k];
      const std::size_t owner = book.owner(j);
      round.queries.push_back({owner, book.local_bit(j), j});
      round.responses.push_back(value);
      round.sink_bits += address_bits(book.layout().width(owner));
      tr.per_informant_bits[owner] += 1;
      next = book.restrict(next, j, value);
    }
    const std::size_t next_mu = next.count();
    if (next_mu == 0) throw InvariantError("responses are inconsistent with the support set");
    round.mu_after = next_mu;
    tr.informant_bits += chosen.size();
    tr.sink_bits += round.sink_bits;
    tr.rounds.push_back(std::move(round));

    c = std::move(next);
    mu = next_mu;
  }
  finish(book, c, tr);
  return tr;
}

Transcript run_round_parallel(const SupportSet& s, const Responder& responder,
                              const TieRule& tie) {
  return run_round_parallel(CodeBook(s), responder, tie);
}

Transcript run_k_bit_serial(const SupportSet& s, unsigned k, const Responder& responder,
                            const TieRule& tie, std::size_t max_tuples) {
  const SupportSet extension = k_extension(s, k, max_tuples);
  Transcript tr = run_bit_serial(CodeBook(extension), responder, tie);
  if (k != 1) {
    tr.protocol = ProtocolId::k_bit_serial;
    tr.block_length = k;
  }
  return tr;
}

DataVector extension_vector(const std::vector<DataVector>& samples) {
  if (samples.empty()) throw DomainError("an extension vector needs at least one sample");
  if (samples.size() == 1) return samples.front();
  const std::size_t n = samples.front().values.size();
  DataVector x;
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::string> parts;
    for (const DataVector& sample : samples) {
      if (sample.values.size() != n) throw DomainError("samples differ in arity");
      parts.push_back(sample.values[i].str());
    }
    x.values.push_back(Label::tuple(std::move(parts)));
  }
  return x;
}

SweepReport worst_case_sweep(const SupportSet& s, ProtocolId protocol, const TieRule& tie,
                             unsigned k, std::size_t max_tuples) {
  const SupportSet target = protocol == ProtocolId::k_bit_serial ? k_extension(s, k, max_tuples) : s;
  const CodeBook book(target);
  auto run = [&](const Responder& r) {
    return protocol == ProtocolId::round_parallel ? run_round_parallel(book, r, tie)
                                                  : run_bit_serial(book, r, tie);
  };

  SweepReport report;
  report.protocol = protocol;
  report.per_informant_worst.assign(target.informants(), 0);
  for (std::size_t r = 0; r < target.size(); ++r) {
    const DataVector x = target.tuple(r);
    const Transcript tr = run(Responder::honest(x));
    if (!tr.decoded || *tr.decoded != x) {
      report.all_decoded = false;
      throw InvariantError("honest run on " + x.str() + " did not decode its input");
    }
    ++report.runs;
    report.honest_bits.push_back(tr.informant_bits);
    report.total_informant_bits += tr.informant_bits;
    report.max_informant_bits = std::max(report.max_informant_bits, tr.informant_bits);
    report.max_rounds = std::max(report.max_rounds, tr.round_count);
    report.max_sink_bits = std::max(report.max_sink_bits, tr.sink_bits);
    for (std::size_t i = 0; i < target.informants(); ++i) {
      report.per_informant_worst[i] = std::max(report.per_informant_worst[i], tr.per_informant_bits[i]);
    }
  }
  const Transcript adversarial = run(Responder::adversarial());
  report.adversarial_informant_bits = adversarial.informant_bits;
  report.adversarial_rounds = adversarial.round_count;
  report.adversarial_sink_bits = adversarial.sink_bits;
  report.adversary_realizes_worst = adversarial.informant_bits == report.max_informant_bits;
  return report;
}

ShrinkDiagnostics round_shrink_diagnostics(const Transcript& tr) {
  constexpr double kSlack = 1e-9;
  ShrinkDiagnostics d;
  if (tr.rounds.empty() || tr.initial_mu <= 1) return d;

  const double log_mu = std::log2(static_cast<double>(tr.initial_mu));
  const bool parallel = tr.protocol == ProtocolId::round_parallel;
  const double per_round_bits = parallel ? static_cast<double>(ceil_log2(tr.initial_mu)) : 1.0;

  d.epsilon = -std::numeric_limits<double>::infinity();
  for (const Round& r : tr.rounds) {
    const double shrink = std::log2(static_cast<double>(r.mu_before) / static_cast<double>(r.mu_after));
    const double eps = 1.0 - shrink / per_round_bits;
    d.epsilons.push_back(eps);
    d.epsilon = std::max(d.epsilon, eps);
  }
  if (d.epsilon >= 1.0) {
    d.vacuous = true;
    d.rounds_within_bound = false;
    return d;
  }
  const double rate = 1.0 - d.epsilon;
  d.round_bound = static_cast<std::size_t>(std::ceil(log_mu / (rate * per_round_bits) - kSlack));
  d.rounds_within_bound = tr.round_count <= d.round_bound;
  if (parallel) {
    d.coarse_round_bound = static_cast<std::size_t>(std::ceil(1.0 / rate - kSlack));
    d.informant_bits_within_bound =
        tr.informant_bits <= d.round_bound * ceil_log2(tr.initial_mu);
    std::size_t widest = 0;
    for (const Round& r : tr.rounds) widest = std::max(widest, r.sink_bits);
    d.sink_bits_within_bound = tr.sink_bits <= d.round_bound * widest;
  }
  return d;
}

}  // namespace wcdsc
