#include <CLI11.hpp>

#include <ostream>

#include "wcdsc/cli_io.hpp"

namespace wcdsc::cli {

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Worst-case asymmetric distributed source coding toolkit", "wcdsc"};
  app.require_subcommand(1);

  Command cmd;
  std::string protocol = "bit-serial";
  std::string tie = "lowest";
  std::uint64_t seed = 0;

  struct VerbSpec {
    const char* name;
    Verb verb;
    const char* help;
  };
  const VerbSpec verbs[] = {
      {"measure", Verb::measure, "ambiguity measures of a support set"},
      {"check-properties", Verb::check_properties, "evaluate the measure axioms and set lemmas"},
      {"simulate", Verb::simulate, "run a data-gathering protocol"},
      {"compressibility", Verb::compressibility, "optimal worst-case bits and bounds"},
      {"rate-region", Verb::rate_region, "worst-case achievable rate region"},
      {"block-compare", Verb::block_compare, "block coding gain over k = 1..k-max"},
  };
  for (const VerbSpec& v : verbs) {
    CLI::App* sub = app.add_subcommand(v.name, v.help);
    sub->add_option("input", cmd.input, "support set file")->required();
    sub->add_option("--protocol", protocol, "bit-serial | round-parallel | k-bit-serial")
        ->check(CLI::IsMember({"bit-serial", "round-parallel", "k-bit-serial"}));
    sub->add_option("--x", cmd.x, "data vector, e.g. \"1,3\"; k samples separated by ';'");
    sub->add_option("--k", cmd.k, "block length")->check(CLI::PositiveNumber);
    sub->add_option("--k-max", cmd.k_max, "largest block length for block-compare")->check(CLI::PositiveNumber);
    sub->add_option("--tie", tie, "tie rule: lowest | random")->check(CLI::IsMember({"lowest", "random"}));
    sub->add_option("--seed", seed, "seed for --tie random");
    sub->add_flag("--adversary", cmd.adversary, "worst-case responder");
    sub->add_flag("--sweep", cmd.sweep, "run every element and the adversary");
    sub->add_flag("--oracle", cmd.oracle, "cross-check against exhaustive search");
    sub->add_flag("--trace", cmd.trace, "emit one line per round");
    sub->add_option("--output", cmd.output, "write the report to a file");
    sub->callback([&cmd, verb = v.verb] { cmd.verb = verb; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    if (const CLI::App* used = app.get_subcommands().empty() ? nullptr : app.get_subcommands().front()) {
      err << "run '" << used->get_name() << " --help' for usage\n";
    }
    return kExitUsage;
  }
  cmd.protocol = *parse_protocol(protocol);
  cmd.tie = tie == "random" ? TieRule::seeded_random(seed) : TieRule::lowest_index();
  return run(cmd, out, err);
}

}  // namespace wcdsc::cli
