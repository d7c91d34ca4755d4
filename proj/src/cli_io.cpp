#include "wcdsc/cli_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <memory>
#include <sstream>

#include "wcdsc/errors.hpp"
#include "wcdsc/oracle.hpp"

namespace wcdsc::cli {
namespace {

struct Token {
  std::string text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.push_back({std::string(line.substr(start, i - start)), start + 1});
  }
  return out;
}

std::optional<std::size_t> parse_count(const std::string& text) {
  if (text.empty() || text.size() > 9) return std::nullopt;
  std::size_t value = 0;
  for (char c : text) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + static_cast<std::size_t>(c - '0');
  }
  return value;
}

std::optional<double> parse_weight(const std::string& text) {
  std::istringstream in(text);
  in.imbue(std::locale::classic());
  double w = 0.0;
  if (!(in >> w) || !in.eof() || !std::isfinite(w)) return std::nullopt;
  return w;
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

std::string join_counts(const std::vector<std::size_t>& v) {
  std::string out;
  for (std::size_t k = 0; k < v.size(); ++k) {
    if (k) out += ',';
    out += std::to_string(v[k]);
  }
  return out;
}

std::string order_str(const std::vector<std::size_t>& order) {
  std::vector<std::size_t> one_based;
  for (std::size_t i : order) one_based.push_back(i + 1);
  return join_counts(one_based);
}

void kv(std::ostream& out, std::string_view key, const auto& value) {
  out << key << '\t' << value << '\n';
}

std::string fixed12(double v) {
  std::ostringstream o;
  o << std::setprecision(12) << v;
  return o.str();
}

}  // namespace

ParsedSupport parse_support(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<std::vector<Label>> declared;
  std::vector<SupportEntry> entries;
  std::size_t header_line = 0;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    pos = end + 1;
    ++line_no;

    const std::vector<Token> tokens = tokenize(line);
    if (tokens.empty()) continue;
    const Token& head = tokens.front();

    if (head.text == "informants") {
      if (n) throw ParseError("duplicate 'informants' header (first on line " + std::to_string(header_line) + ")", line_no, head.column);
      if (tokens.size() != 2) throw ParseError("expected 'informants N'", line_no, head.column);
      const auto count = parse_count(tokens[1].text);
      if (!count || *count == 0) throw ParseError("informant count must be a positive integer", line_no, tokens[1].column);
      n = count;
      header_line = line_no;
      declared.assign(*n, {});
      continue;
    }
    if (!n) throw ParseError("'" + head.text + "' before the 'informants' header", line_no, head.column);

    if (head.text == "alphabet") {
      // "alphabet 2: a b c" or "alphabet 2 : a b c"
      std::size_t first_label = 2;
      std::string id = tokens.size() > 1 ? tokens[1].text : "";
      if (!id.empty() && id.back() == ':') {
        id.pop_back();
      } else if (tokens.size() > 2 && tokens[2].text == ":") {
        first_label = 3;
      } else {
        throw ParseError("expected 'alphabet i: v1 v2 ...'", line_no, head.column);
      }
      const auto i = parse_count(id);
      if (!i || *i == 0 || *i > *n) {
        throw ParseError("informant index must be in 1.." + std::to_string(*n), line_no, tokens[1].column);
      }
      auto& alpha = declared[*i - 1];
      if (!alpha.empty()) throw ParseError("alphabet of informant " + id + " declared twice", line_no, head.column);
      if (first_label >= tokens.size()) throw ParseError("empty alphabet", line_no, head.column);
      for (std::size_t t = first_label; t < tokens.size(); ++t) {
        Label label(tokens[t].text);
        if (std::find(alpha.begin(), alpha.end(), label) != alpha.end()) {
          throw ParseError("label '" + tokens[t].text + "' repeated in alphabet", line_no, tokens[t].column);
        }
        alpha.push_back(std::move(label));
      }
      continue;
    }

    if (head.text == "tuple") {
      const std::size_t values = tokens.size() - 1;
      if (values != *n && values != *n + 1) {
        throw ParseError("tuple has " + std::to_string(values) + " fields, expected " +
                             std::to_string(*n) + " labels and an optional weight",
                         line_no, head.column);
      }
      SupportEntry e;
      for (std::size_t i = 0; i < *n; ++i) {
        const Token& tok = tokens[i + 1];
        Label label(tok.text);
        const auto& alpha = declared[i];
        if (!alpha.empty() && std::find(alpha.begin(), alpha.end(), label) == alpha.end()) {
          throw ParseError("label '" + tok.text + "' not in alphabet of informant " + std::to_string(i + 1),
                           line_no, tok.column);
        }
        e.values.push_back(std::move(label));
      }
      if (values == *n + 1) {
        const Token& tok = tokens.back();
        const auto w = parse_weight(tok.text);
        if (!w) throw ParseError("weight '" + tok.text + "' is not a number", line_no, tok.column);
        if (*w < 0.0) throw ParseError("negative weight", line_no, tok.column);
        e.weight = w;
      }
      entries.push_back(std::move(e));
      continue;
    }
    throw ParseError("unknown directive '" + head.text + "'", line_no, head.column);
  }

  if (!n) throw ParseError("missing 'informants' header", 1, 1);
  if (entries.empty()) throw DegenerateError("degenerate support: no tuples");
  ParsedSupport parsed;
  parsed.set = SupportSet::build(entries, declared, &parsed.stats);
  return parsed;
}

ParsedSupport parse_support_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  try {
    return parse_support(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ":" + e.what(), 0, 0);
  }
}

std::string emit_support(const SupportSet& s) {
  std::ostringstream out;
  out << "informants " << s.informants() << '\n';
  for (std::size_t i = 0; i < s.informants(); ++i) {
    out << "alphabet " << i + 1 << ':';
    for (const Label& l : s.marginal(i)) out << ' ' << l.str();
    out << '\n';
  }
  for (std::size_t r = 0; r < s.size(); ++r) {
    out << "tuple";
    for (std::size_t i = 0; i < s.informants(); ++i) out << ' ' << s.marginal(i)[s.rank(r, i)].str();
    out << '\n';
  }
  return out.str();
}

DataVector parse_data_vector(std::string_view text) {
  DataVector x;
  std::size_t depth = 0;
  std::string current;
  auto flush = [&] {
    std::string item = current;
    current.clear();
    const auto first = item.find_first_not_of(" \t");
    const auto last = item.find_last_not_of(" \t");
    if (first == std::string::npos) throw DomainError("empty component in data vector '" + std::string(text) + "'");
    item = item.substr(first, last - first + 1);
    if (item.front() == '(' && item.back() == ')') {
      std::vector<std::string> parts;
      std::string part;
      std::istringstream in(item.substr(1, item.size() - 2));
      while (std::getline(in, part, ',')) parts.push_back(part);
      if (parts.empty()) throw DomainError("empty tuple label in data vector");
      x.values.push_back(Label::tuple(std::move(parts)));
    } else {
      x.values.emplace_back(item);
    }
  };
  std::string_view body = text;
  // A fully parenthesized vector "(1,3)" is accepted as "1,3".
  if (body.size() >= 2 && body.front() == '(' && body.back() == ')') {
    std::size_t d = 0;
    bool wraps = true;
    for (std::size_t k = 0; k < body.size(); ++k) {
      if (body[k] == '(') ++d;
      if (body[k] == ')' && --d == 0 && k + 1 != body.size()) wraps = false;
    }
    if (wraps) body = body.substr(1, body.size() - 2);
  }
  for (char c : body) {
    if (c == '(') ++depth;
    if (c == ')') {
      if (depth == 0) throw DomainError("unbalanced parentheses in data vector");
      --depth;
    }
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    current += c;
  }
  if (depth != 0) throw DomainError("unbalanced parentheses in data vector");
  flush();
  return x;
}

void write_measure(std::ostream& out, const SupportSet& s, const AmbiguityReport& r) {
  kv(out, "informants", s.informants());
  kv(out, "joint_ambiguity", r.joint_ambiguity);
  kv(out, "information_ambiguity", r.information_ambiguity);
  for (std::size_t i = 0; i < r.marginal_ambiguity.size(); ++i) {
    kv(out, "marginal_ambiguity." + std::to_string(i + 1), r.marginal_ambiguity[i]);
    kv(out, "marginal_information." + std::to_string(i + 1), r.marginal_information[i]);
  }
  kv(out, "code_width", layout(s).total_width());
  kv(out, "product_of_marginals", yes_no(is_product_of_marginals(s)));
  for (const ConditionalEntry& c : r.conditionals) {
    kv(out,
       "conditional_ambiguity." + std::to_string(c.target + 1) + "|" + std::to_string(c.given + 1) +
           "=" + c.value.str(),
       c.mu);
  }
  for (const MaxConditionalEntry& c : r.max_conditionals) {
    kv(out, "max_conditional_ambiguity." + std::to_string(c.target + 1) + "|" + std::to_string(c.given + 1),
       c.mu_hat);
  }
  if (r.chain_available) {
    if (s.informants() <= 4) {
      std::vector<std::size_t> order(s.informants());
      for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
      do {
        kv(out, "chain_cost." + order_str(order), chain_cost(s, order));
      } while (std::next_permutation(order.begin(), order.end()));
    }
    kv(out, "chain_bound", r.chain.bits);
    kv(out, "chain_order", order_str(r.chain.order));
  }
}

void write_properties(std::ostream& out, const PropertyReport& report) {
  for (const PropertyCheck& c : report.checks) {
    out << "property." << c.name << '\t' << (c.passed ? "pass" : "fail") << '\t' << c.cases;
    if (!c.passed) out << '\t' << c.detail;
    out << '\n';
  }
  kv(out, "all_passed", yes_no(report.all_passed()));
}

void write_trace(std::ostream& out, const Transcript& tr) {
  for (std::size_t l = 0; l < tr.rounds.size(); ++l) {
    const Round& r = tr.rounds[l];
    out << "round " << l + 1 << " | query ";
    for (std::size_t q = 0; q < r.queries.size(); ++q) {
      if (q) out << ',';
      out << r.queries[q].informant + 1 << '.' << r.queries[q].local_bit + 1;
    }
    out << " | response ";
    for (std::size_t q = 0; q < r.responses.size(); ++q) {
      if (q) out << ',';
      out << (r.responses[q] ? 1 : 0);
    }
    out << " | " << r.mu_before << " -> " << r.mu_after << " | sink_bits +" << r.sink_bits << '\n';
  }
  if (tr.decoded) {
    out << "decoded " << tr.decoded->str() << '\n';
  } else {
    out << "undecoded " << tr.final_set.size() << '\n';
  }
}

void write_transcript_summary(std::ostream& out, const Transcript& tr) {
  kv(out, "protocol", protocol_name(tr.protocol));
  kv(out, "block_length", tr.block_length);
  kv(out, "initial_ambiguity", tr.initial_mu);
  kv(out, "rounds", tr.round_count);
  kv(out, "informant_bits", tr.informant_bits);
  for (std::size_t i = 0; i < tr.per_informant_bits.size(); ++i) {
    kv(out, "informant_bits." + std::to_string(i + 1), tr.per_informant_bits[i]);
  }
  kv(out, "sink_bits", tr.sink_bits);
  kv(out, "decoded", tr.decoded ? tr.decoded->str() : std::string("none"));
}

void write_sweep(std::ostream& out, const SweepReport& r) {
  kv(out, "protocol", protocol_name(r.protocol));
  kv(out, "runs", r.runs);
  kv(out, "max_informant_bits", r.max_informant_bits);
  if (r.runs) {
    kv(out, "mean_informant_bits", Rational(static_cast<std::int64_t>(r.total_informant_bits),
                                            static_cast<std::int64_t>(r.runs)).str());
  }
  for (std::size_t i = 0; i < r.per_informant_worst.size(); ++i) {
    kv(out, "worst_informant_bits." + std::to_string(i + 1), r.per_informant_worst[i]);
  }
  kv(out, "max_rounds", r.max_rounds);
  kv(out, "max_sink_bits", r.max_sink_bits);
  kv(out, "adversarial_informant_bits", r.adversarial_informant_bits);
  kv(out, "adversarial_rounds", r.adversarial_rounds);
  kv(out, "adversarial_sink_bits", r.adversarial_sink_bits);
  kv(out, "all_decoded", yes_no(r.all_decoded));
  kv(out, "adversary_realizes_worst", yes_no(r.adversary_realizes_worst));
}

void write_compressibility(std::ostream& out, const SupportSet& s, const CodeBook& book,
                           const CompressibilityResult& r) {
  kv(out, "joint_ambiguity", s.size());
  kv(out, "information_ambiguity", r.information_ambiguity);
  kv(out, "c_b", r.c_b);
  kv(out, "greedy_bits", r.greedy_bits);
  kv(out, "certificate_bound", r.certificate_bound ? std::to_string(*r.certificate_bound) : std::string("unavailable"));
  kv(out, "code_width", r.code_width);
  kv(out, "incompressible", yes_no(r.incompressible()));
  kv(out, "states_explored", r.states_explored);
  if (r.strategy.nodes.empty()) return;
  kv(out, "strategy_depth", r.strategy.depth());
  for (std::size_t id = 0; id < r.strategy.nodes.size(); ++id) {
    const StrategyTree::Node& node = r.strategy.nodes[id];
    out << "strategy\t" << id << ' ';
    if (node.bit < 0) {
      out << "leaf " << s.tuple(node.row).str() << '\n';
    } else {
      const unsigned j = static_cast<unsigned>(node.bit);
      out << "query " << book.owner(j) + 1 << '.' << book.local_bit(j) + 1 << " zero " << node.zero
          << " one " << node.one << '\n';
    }
  }
}

void write_region(std::ostream& out, const RateRegion& region) {
  for (const auto& [mask, bits] : region.subset_bounds) {
    out << "subset " << InformantSet::from_mask(mask).str() << " min_bits " << bits << '\n';
  }
  for (const auto& [r1, r2] : region.corners) out << "corner " << r1 << ' ' << r2 << '\n';
  out << "cb " << region.c_b << '\n';
}

void write_block_region(std::ostream& out, const RateRegion& region, unsigned k) {
  const auto per = [k](unsigned v) { return Rational(v, k).str(); };
  for (const auto& [mask, bits] : region.subset_bounds) {
    out << "subset " << InformantSet::from_mask(mask).str() << " min_bits " << per(bits) << '\n';
  }
  for (const auto& [r1, r2] : region.corners) out << "corner " << per(r1) << ' ' << per(r2) << '\n';
  out << "cb " << per(region.c_b) << '\n';
}

void write_block_report(std::ostream& out, const BlockGainReport& report) {
  out << "k\tcb_k\tcb_k_per_block\tgap";
  for (const auto& [mask, bits] : report.base.subset_bounds) out << "\tM{" << InformantSet::from_mask(mask).str() << '}';
  out << '\n';
  for (const BlockGainRow& row : report.rows) {
    out << row.k << '\t' << row.c_b_k << '\t' << row.per_block.str() << '\t' << row.gap.str();
    for (const auto& [mask, bound] : row.direct_bounds) out << '\t' << bound.str();
    out << '\n';
  }
  out << "inf\t-\t" << fixed12(report.asymptotic_c_b) << '\t'
      << fixed12(static_cast<double>(report.c_b) - report.asymptotic_c_b);
  for (const auto& [mask, bound] : report.asymptotic) out << '\t' << fixed12(bound);
  out << '\n';
  if (report.truncated) out << "# truncated at " << *report.truncated << '\n';
}

namespace {

int report_error(std::ostream& err, int code, const std::string& what) {
  err << "error: " << what << '\n';
  return code;
}

DataVector vector_for(const Command& cmd, const std::string& text) {
  if (cmd.protocol == ProtocolId::k_bit_serial && cmd.k > 1 && text.find(';') != std::string::npos) {
    std::vector<DataVector> samples;
    std::istringstream in(text);
    std::string sample;
    while (std::getline(in, sample, ';')) samples.push_back(parse_data_vector(sample));
    if (samples.size() != cmd.k) {
      throw DomainError("expected " + std::to_string(cmd.k) + " samples separated by ';', got " +
                        std::to_string(samples.size()));
    }
    return extension_vector(samples);
  }
  return parse_data_vector(text);
}

int simulate(const Command& cmd, const SupportSet& s, std::ostream& out) {
  if (cmd.sweep) {
    const SweepReport r = worst_case_sweep(s, cmd.protocol, cmd.tie, cmd.k);
    write_sweep(out, r);
    return kExitOk;
  }
  const Responder responder = cmd.adversary ? Responder::adversarial() : Responder::honest(vector_for(cmd, *cmd.x));
  Transcript tr;
  switch (cmd.protocol) {
    case ProtocolId::bit_serial: tr = run_bit_serial(s, responder, cmd.tie); break;
    case ProtocolId::round_parallel: tr = run_round_parallel(s, responder, cmd.tie); break;
    case ProtocolId::k_bit_serial: tr = run_k_bit_serial(s, cmd.k, responder, cmd.tie); break;
  }
  if (cmd.trace) write_trace(out, tr);
  write_transcript_summary(out, tr);
  if (!cmd.adversary && (!tr.decoded || *tr.decoded != responder.value())) {
    throw InvariantError("honest run did not decode its input");
  }
  return kExitOk;
}

int compressibility(const Command& cmd, const SupportSet& base, std::ostream& out) {
  const SupportSet s = k_extension(base, cmd.k);
  const CodeBook book(s);
  const CompressibilityResult r = solve_c_b(s);
  if (cmd.k > 1) kv(out, "block_length", cmd.k);
  write_compressibility(out, s, book, r);
  if (cmd.k > 1) {
    SolveOptions quick;
    quick.with_certificate = false;
    quick.with_strategy = false;
    const unsigned base_c_b = solve_c_b(base, quick).c_b;
    kv(out, "c_b_single", base_c_b);
    kv(out, "c_b_per_block", Rational(r.c_b, cmd.k).str());
    kv(out, "block_gap", (Rational(base_c_b) - Rational(r.c_b, cmd.k)).str());
  }
  // Guaranteed for every support set: an adaptive strategy needs at least
  // ceil(log2 mu) bits, every strategy path yields a certificate, and polling
  // every bit always works. The full chain additionally places the
  // certificate above ceil(log2 mu) and the greedy adversarial run above c_b.
  bool holds = r.information_ambiguity <= r.c_b && r.c_b <= r.code_width && r.greedy_bits <= r.code_width;
  if (r.certificate_bound) holds = holds && *r.certificate_bound <= r.c_b;
  const bool chain = holds && r.c_b <= r.greedy_bits &&
                     (!r.certificate_bound || r.information_ambiguity <= *r.certificate_bound);
  kv(out, "bounds_hold", yes_no(holds));
  kv(out, "sandwich_holds", yes_no(chain));
  if (cmd.oracle) {
    if (oracle::search_feasible(s)) {
      const oracle::SearchResult o = oracle::exhaustive_tree_search(s);
      kv(out, "oracle_optimum", o.optimum);
      kv(out, "oracle_agrees", yes_no(o.optimum == r.c_b));
      holds = holds && o.optimum == r.c_b;
    } else {
      kv(out, "oracle_optimum", "unavailable");
    }
  }
  if (!holds) throw InvariantError("compressibility result violates its guaranteed bounds");
  return kExitOk;
}

int region(const Command& cmd, const SupportSet& base, std::ostream& out) {
  const SupportSet s = k_extension(base, cmd.k);
  const RateRegion r = rate_region(s);
  if (cmd.k == 1) {
    write_region(out, r);
  } else {
    write_block_region(out, r, cmd.k);
  }
  if (cmd.oracle && oracle::search_feasible(s)) {
    const oracle::SearchResult o = oracle::exhaustive_tree_search(s);
    bool agrees = o.optimum == r.c_b;
    for (const auto& [mask, bits] : r.subset_bounds) agrees = agrees && o.min_bits_at_optimum.at(mask) == bits;
    out << "oracle_agrees " << yes_no(agrees) << '\n';
    if (!agrees) throw InvariantError("rate region disagrees with exhaustive search");
  }
  return kExitOk;
}

int dispatch(const Command& cmd, std::ostream& out) {
  const ParsedSupport parsed = parse_support_file(cmd.input);
  const SupportSet& s = parsed.set;
  switch (cmd.verb) {
    case Verb::measure:
      write_measure(out, s, measure(s));
      return kExitOk;
    case Verb::check_properties:
      write_properties(out, property_suite(s));
      return kExitOk;
    case Verb::simulate:
      return simulate(cmd, s, out);
    case Verb::compressibility:
      return compressibility(cmd, s, out);
    case Verb::rate_region:
      return region(cmd, s, out);
    case Verb::block_compare: {
      const BlockGainReport report = block_gain_report(s, cmd.k_max);
      write_block_report(out, report);
      for (const BlockGainRow& row : report.rows) {
        if (row.gap > Rational(1)) throw InvariantError("block gain above one bit at k=" + std::to_string(row.k));
      }
      return kExitOk;
    }
  }
  return kExitUsage;
}

std::optional<std::string> validate(const Command& cmd) {
  if (cmd.k == 0) return "--k must be at least 1";
  if (cmd.k_max == 0) return "--k-max must be at least 1";
  if (cmd.verb == Verb::simulate) {
    const int modes = (cmd.x ? 1 : 0) + (cmd.adversary ? 1 : 0) + (cmd.sweep ? 1 : 0);
    if (cmd.x && cmd.adversary) return "--x cannot be combined with --adversary";
    if (modes != 1) return "simulate needs exactly one of --x, --adversary, --sweep";
    if (cmd.k > 1 && cmd.protocol != ProtocolId::k_bit_serial) return "--k > 1 needs --protocol k-bit-serial";
    if (cmd.trace && cmd.sweep) return "--trace applies to single runs, not --sweep";
  } else {
    if (cmd.x || cmd.adversary || cmd.sweep || cmd.trace) {
      return "--x, --adversary, --sweep and --trace only apply to simulate";
    }
  }
  return std::nullopt;
}

}  // namespace

int run(const Command& cmd, std::ostream& out, std::ostream& err) {
  if (const auto problem = validate(cmd)) return report_error(err, kExitUsage, *problem);

  std::unique_ptr<std::ofstream> file;
  std::ostringstream buffer;
  try {
    const int code = dispatch(cmd, buffer);
    if (cmd.output) {
      file = std::make_unique<std::ofstream>(*cmd.output, std::ios::binary);
      if (!*file) return report_error(err, kExitParse, "cannot write " + *cmd.output);
      *file << buffer.str();
    } else {
      out << buffer.str();
    }
    return code;
  } catch (const InvariantError& e) {
    out << buffer.str();
    return report_error(err, kExitInvariant, e.what());
  } catch (const IoError& e) {
    return report_error(err, kExitParse, e.what());
  } catch (const ParseError& e) {
    return report_error(err, kExitParse, e.what());
  } catch (const DegenerateError& e) {
    return report_error(err, kExitDegenerate, e.what());
  } catch (const ResourceError& e) {
    return report_error(err, kExitDegenerate, e.what());
  } catch (const MembershipError& e) {
    return report_error(err, kExitUsage, e.what());
  } catch (const DomainError& e) {
    return report_error(err, kExitUsage, e.what());
  }
}

}  // namespace wcdsc::cli
