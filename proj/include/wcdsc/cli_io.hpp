#pragma once

// Support-set text format, report emission and the command-line driver.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "wcdsc/ambiguity.hpp"
#include "wcdsc/compressibility.hpp"
#include "wcdsc/protocol.hpp"
#include "wcdsc/support_model.hpp"

namespace wcdsc::cli {

struct ParsedSupport {
  SupportSet set;
  BuildStats stats;
};

// Throws ParseError (with line and column), DegenerateError.
ParsedSupport parse_support(std::string_view text);
// As parse_support; IoError when the file cannot be read.
ParsedSupport parse_support_file(const std::filesystem::path& path);

// Canonical text form: header, one alphabet line per informant in rank
// order, tuples in row order. parse_support(emit_support(s)).set == s.
std::string emit_support(const SupportSet& s);

// "1,3" -> data vector with plain labels. Parenthesized k-tuple labels such
// as "(1,1),(1,3)" are accepted too.
DataVector parse_data_vector(std::string_view text);

void write_measure(std::ostream& out, const SupportSet& s, const AmbiguityReport& report);
void write_properties(std::ostream& out, const PropertyReport& report);
void write_trace(std::ostream& out, const Transcript& tr);
void write_transcript_summary(std::ostream& out, const Transcript& tr);
void write_sweep(std::ostream& out, const SweepReport& report);
void write_compressibility(std::ostream& out, const SupportSet& s, const CodeBook& book,
                           const CompressibilityResult& result);
void write_region(std::ostream& out, const RateRegion& region);
// Per-block region of S^k: every bound divided by k.
void write_block_region(std::ostream& out, const RateRegion& region, unsigned k);
void write_block_report(std::ostream& out, const BlockGainReport& report);

enum class Verb { measure, check_properties, simulate, compressibility, rate_region, block_compare };

struct Command {
  Verb verb = Verb::measure;
  std::string input;
  ProtocolId protocol = ProtocolId::bit_serial;
  std::optional<std::string> x;
  unsigned k = 1;
  unsigned k_max = 2;
  TieRule tie;
  bool adversary = false;
  bool sweep = false;
  bool oracle = false;
  bool trace = false;
  std::optional<std::string> output;
};

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitParse = 2,
  kExitDegenerate = 3,
  kExitInvariant = 4,
};

// Executes a parsed command, writing the report to `out` (or the output
// file) and diagnostics to `err`. Returns the process exit code.
int run(const Command& cmd, std::ostream& out, std::ostream& err);

// Full command line: argv[0] is the program name.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace wcdsc::cli
