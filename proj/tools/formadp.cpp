#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "formadp/dp.hpp"
#include "formadp/parser.hpp"
#include "formadp/prove.hpp"
#include "formadp/report.hpp"
#include "formadp/rule_filters.hpp"
#include "formadp/sort_infer.hpp"

namespace {

using namespace formadp;

void print_rules(const std::vector<Rule>& rules, const Signature& sig) {
  for (const Rule& r : rules)
    std::cout << "  " << r.id << ": " << print_rule(r, sig) << "\n";
}

int emit_ruleset(const Mtrs& system, const std::string& which) {
  DpResult dp = dependency_pairs(system);

  if (which == "ur" || which == "ur-tcap" || which == "fr" ||
      which == "fr-tcap") {
    bool tcap = which.size() > 2;
    FilterOpts opts{nullptr, tcap};
    RuleSetResult sel =
        which[0] == 'u'
            ? usable_rules(dp.pairs, system.rules, dp.sig, opts)
            : formative_rules(dp.pairs, system.rules, dp.sig, opts);
    std::cout << (which[0] == 'u' ? "usable" : "formative") << " rules"
              << (tcap ? " (capped)" : "") << " of the initial problem:\n";
    print_rules(sel.select(system.rules), dp.sig);
    return 0;
  }

  // both remaining computations live in the single-sorted world
  Mtrs marked;
  marked.sig = dp.sig;
  marked.rules = system.rules;
  Mtrs flat = collapse_sorts(marked);
  int floor = 0;
  for (const Rule& p : dp.pairs) floor = std::max(floor, p.id);
  CombinedSystem combined = combine_rules(flat.rules, flat.sig, floor + 1);

  if (which == "combined") {
    std::cout << "projection rules (Cl):\n";
    print_rules(combined.cl, flat.sig);
    std::cout << "non-collapsing rules (NC):\n";
    print_rules(combined.nc, flat.sig);
    return 0;
  }

  std::vector<Rule> pairs;
  for (const Rule& p : dp.pairs) {
    Rule np = p;
    np.lhs = translate_term(p.lhs, flat.sig);
    np.rhs = translate_term(p.rhs, flat.sig);
    pairs.push_back(std::move(np));
  }
  std::vector<Rule> all = combined.all();
  RuleSetResult sel = split_formative_rules(pairs, all, flat.sig);
  std::cout << "split-formative rules of the initial problem over the "
               "combined system:\n";
  print_rules(sel.select(all), flat.sig);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"termination prover for first-order term rewrite systems"};
  app.require_subcommand(1);

  CLI::App* cmd = app.add_subcommand("prove", "analyze one system");
  std::string file;
  cmd->add_option("file", file, "input system")
      ->required()
      ->check(CLI::ExistingFile);
  std::string strategy = "default";
  cmd->add_option("--strategy", strategy, "rule-set strategy")
      ->check(CLI::IsMember({"default", "usable-only", "formative",
                             "split-formative", "aprove"}));
  int coef_bound = 3;
  cmd->add_option("--coef-bound", coef_bound, "max polynomial coefficient")
      ->check(CLI::NonNegativeNumber);
  bool infer = false;
  cmd->add_flag("--infer-sorts", infer,
                "replace the single sort of an unsorted input by the most "
                "general sorting");
  bool innermost = false;
  cmd->add_flag("--innermost", innermost, "prove innermost termination");
  std::string formative_start = "on";
  cmd->add_option("--formative-start", formative_start,
                  "start from the formative rules of the pairs")
      ->check(CLI::IsMember({"on", "off"}));
  double timeout = 60.0;
  cmd->add_option("--timeout", timeout, "wall-clock budget in seconds")
      ->check(CLI::PositiveNumber);
  std::string format = "text";
  cmd->add_option("--format", format, "report format")
      ->check(CLI::IsMember({"text", "json"}));
  std::string emit;
  cmd->add_option("--emit-ruleset", emit,
                  "print the named rule-set computation instead of proving")
      ->check(CLI::IsMember({"ur", "ur-tcap", "fr", "fr-tcap", "sr",
                             "combined"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    ParsedProblem parsed = parse_problem_file(file);
    Mtrs system = std::move(parsed.system);
    if (innermost) system.innermost_only = true;
    if (infer) {
      if (parsed.sorted)
        std::cerr << "note: input already carries sorts; inference skipped\n";
      else
        system = infer_sorts(system);
    }

    if (!emit.empty()) return emit_ruleset(system, emit);

    bool start_explicit = cmd->count("--formative-start") > 0;
    bool start = formative_start == "on";
    if (system.innermost_only && start) {
      if (start_explicit) {
        std::cerr << "error: the formative start is unsound for innermost "
                     "termination; drop --formative-start on\n";
        return 2;
      }
      start = false;
    }

    ProveConfig cfg;
    cfg.formative_start = start;
    cfg.search.coef_bound = coef_bound;
    cfg.timeout_secs = timeout;
    if (strategy == "default") {
      cfg.strategy = RuleSetStrategy::FormativeUsable;
    } else if (strategy == "usable-only") {
      cfg.strategy = RuleSetStrategy::Usable;
    } else if (strategy == "formative") {
      cfg.strategy = RuleSetStrategy::FilteredFormative;
      cfg.tcap = true;
    } else if (strategy == "split-formative") {
      cfg.strategy = RuleSetStrategy::SplitFormative;
    } else {
      cfg.strategy = RuleSetStrategy::AproveIntersection;
      cfg.tcap = true;
    }

    ProveResult result = prove(system, cfg);
    std::cout << to_string(result.verdict) << "\n";
    if (format == "json")
      std::cout << proof_json(result) << "\n";
    else
      std::cout << proof_text(result);
    return result.verdict == Verdict::Yes ? 0 : 1;
  } catch (const ParseError& e) {
    std::cerr << file << ": " << e.what() << "\n";
    return 2;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
