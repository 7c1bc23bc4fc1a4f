#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <map>
#include <optional>
#include <sstream>

#include "eufui/conditional.hpp"
#include "eufui/euf_check.hpp"
#include "eufui/parser.hpp"
#include "eufui/preprocess.hpp"
#include "eufui/printer.hpp"
#include "eufui/tableaux.hpp"

namespace eufui::cli {

namespace {

enum class Algorithm { Tableaux, Conditional, Both };
enum class Verify { Off, Residue, Equivalence };
enum class Format { Smtlib, StatsJson };

struct RunConfig {
  Algorithm algorithm = Algorithm::Conditional;
  bool unravel = false;
  Verify verify = Verify::Off;
  Format format = Format::Smtlib;
  Strategy strategy = Strategy::Default;
  Prune prune = Prune::Syntactic;
  unsigned jobs = 1;
  std::size_t max_branches = Limits{}.max_branches;
  std::size_t max_clauses = Limits{}.max_clauses;
  std::size_t max_cdags = Limits{}.max_cdags;
  std::size_t max_cubes = Limits{}.max_cubes;
  std::optional<std::uint64_t> timeout_ms;
  std::string input = "-";
};

struct Outcome {
  std::string name;
  Formula ui;
  nlohmann::ordered_json stats;
};

std::string render_cube(const TermTable& table, const std::vector<Literal>& cube) {
  std::string out;
  for (const auto& l : cube) {
    if (!out.empty()) out += " & ";
    out += to_string(table, l);
  }
  return out.empty() ? "true" : out;
}

nlohmann::ordered_json base_stats(const std::string& name) {
  nlohmann::ordered_json j;
  j["algorithm"] = name;
  j["branches_explored"] = 0;
  j["rule4_firings"] = 0;
  j["s2_size"] = 0;
  j["s3_size"] = 0;
  j["num_cdags"] = 0;
  return j;
}

void parse_partial(const std::string& partial, nlohmann::ordered_json& j) {
  std::istringstream in(partial);
  std::string field;
  while (in >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) continue;
    j[field.substr(0, eq)] = std::stoull(field.substr(eq + 1));
  }
}

Outcome run_tableaux_algorithm(TermTable& table, const PreprocessedInput& pre, const RunConfig& cfg,
                               const Limits& limits) {
  TableauxOptions options;
  options.strategy = cfg.strategy;
  options.jobs = std::max(1u, cfg.jobs);
  options.limits = limits;
  const auto start = std::chrono::steady_clock::now();
  const TableauxResult r = run_tableaux(table, pre, options);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  Outcome o{"tableaux", r.ui.to_formula(), base_stats("tableaux")};
  o.stats["branches_explored"] = r.stats.branches_explored;
  o.stats["rule4_firings"] = r.stats.rule4_firings;
  o.stats["disjuncts"] = r.ui.disjuncts.size();
  o.stats["max_branch_steps"] = r.stats.max_branch_steps;
  o.stats["time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return o;
}

Outcome run_conditional_algorithm(TermTable& table, const PreprocessedInput& pre, const RunConfig& cfg,
                                  const Limits& limits) {
  ConditionalOptions options;
  options.limits = limits;
  options.prune = cfg.prune;
  const auto start = std::chrono::steady_clock::now();
  const ConditionalResult r = conditional_ui(table, pre, options);
  const auto elapsed = std::chrono::steady_clock::now() - start;
  Outcome o{"conditional", r.ui, base_stats("conditional")};
  o.stats["s2_size"] = r.stats.s2_size;
  o.stats["s3_size"] = r.stats.s3_size;
  o.stats["num_cdags"] = r.stats.num_cdags;
  o.stats["nontrivial_cdags"] = r.cdags.size();
  o.stats["time_ms"] = std::chrono::duration_cast<std::chrono::milliseconds>(elapsed).count();
  return o;
}

void emit_stats(const RunConfig& cfg, const nlohmann::ordered_json& stats, std::ostream& err) {
  if (cfg.format == Format::StatsJson) {
    err << stats.dump() << '\n';
    return;
  }
  err << ';';
  for (const auto& [key, value] : stats.items()) err << ' ' << key << '=' << (value.is_string() ? value.get<std::string>() : value.dump());
  err << '\n';
}

int execute(const RunConfig& cfg, std::istream& in, std::ostream& out, std::ostream& err) {
  std::string text;
  std::string source = cfg.input;
  if (cfg.input == "-") {
    source = "<stdin>";
    std::ostringstream buffer;
    buffer << in.rdbuf();
    text = buffer.str();
  } else {
    std::ifstream file(cfg.input, std::ios::binary);
    if (!file) {
      err << "error: cannot open " << cfg.input << '\n';
      return kInputError;
    }
    std::ostringstream buffer;
    buffer << file.rdbuf();
    text = buffer.str();
  }

  Problem problem;
  try {
    problem = parse_problem(text);
  } catch (const ParseError& e) {
    err << "error: " << source << ':' << e.what() << '\n';
    return kInputError;
  } catch (const Error& e) {
    err << "error: " << source << ": " << e.what() << '\n';
    return kInputError;
  }
  TermTable& table = *problem.table;

  Limits limits;
  limits.max_branches = cfg.max_branches;
  limits.max_clauses = cfg.max_clauses;
  limits.max_cdags = cfg.max_cdags;
  limits.max_cubes = cfg.max_cubes;
  if (cfg.timeout_ms) limits.deadline = std::chrono::steady_clock::now() + std::chrono::milliseconds(*cfg.timeout_ms);

  std::vector<Outcome> outcomes;
  std::string current = "preprocess";
  try {
    const PreprocessedInput pre = flatten(problem);
    if (cfg.algorithm != Algorithm::Conditional) {
      current = "tableaux";
      outcomes.push_back(run_tableaux_algorithm(table, pre, cfg, limits));
    }
    if (cfg.algorithm != Algorithm::Tableaux) {
      current = "conditional";
      outcomes.push_back(run_conditional_algorithm(table, pre, cfg, limits));
    }

    const PrintMode mode = cfg.unravel ? PrintMode::Unravelled : PrintMode::Compressed;
    for (auto& o : outcomes) {
      const std::string compressed = print_formula(table, o.ui, PrintMode::Compressed);
      o.stats["ui_compressed_size"] = token_count(compressed);
      std::string shown = compressed;
      if (cfg.unravel) {
        shown = print_formula(table, o.ui, mode);
        o.stats["ui_unravelled_size"] = token_count(shown);
      }
      if (outcomes.size() > 1) out << "; " << o.name << '\n';
      out << shown << '\n';
    }

    current = "verification";
    int status = kOk;
    if (cfg.verify != Verify::Off) {
      const Formula body = Formula::from(problem.body);
      for (auto& o : outcomes) {
        const ValidityResult v = euf_valid(table, body, o.ui, limits);
        o.stats["residue_verified"] = v.valid;
        if (v.valid) continue;
        out << "; " << o.name << " output is not implied by the input\n";
        out << "; witness: " << render_cube(table, v.countermodel) << '\n';
        status = kVerificationFailed;
      }
      if (cfg.verify == Verify::Equivalence && status == kOk) {
        const EquivalenceResult eq = euf_equiv(table, outcomes[0].ui, outcomes[1].ui, limits);
        if (eq.equivalent) {
          out << "; equivalent\n";
        } else {
          out << "; not equivalent: " << (eq.forward_failed ? "tableaux does not imply conditional"
                                                            : "conditional does not imply tableaux")
              << '\n';
          out << "; witness: " << render_cube(table, eq.countermodel) << '\n';
          status = kVerificationFailed;
        }
      }
    }
    for (const auto& o : outcomes) emit_stats(cfg, o.stats, err);
    return status;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << '\n';
    nlohmann::ordered_json stats = base_stats(current);
    stats["limit"] = to_string(e.kind());
    parse_partial(e.partial(), stats);
    for (const auto& o : outcomes) emit_stats(cfg, o.stats, err);
    emit_stats(cfg, stats, err);
    return kResourceLimit;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Uniform interpolants of existentially quantified EUF constraints", "euf-ui"};

  const std::map<std::string, Algorithm> algorithms{
      {"tableaux", Algorithm::Tableaux}, {"conditional", Algorithm::Conditional}, {"both", Algorithm::Both}};
  const std::map<std::string, Verify> verifies{
      {"off", Verify::Off}, {"residue", Verify::Residue}, {"equivalence", Verify::Equivalence}};
  const std::map<std::string, Format> formats{{"smtlib-like", Format::Smtlib}, {"stats-json", Format::StatsJson}};
  const std::map<std::string, Strategy> strategies{{"default", Strategy::Default}, {"reversed", Strategy::Reversed}};
  const std::map<std::string, Prune> prunes{
      {"none", Prune::None}, {"syntactic", Prune::Syntactic}, {"semantic", Prune::Semantic}};

  app.add_option("input", cfg.input, "Problem file, or - for standard input");
  app.add_option("--algorithm", cfg.algorithm, "tableaux, conditional or both")
      ->transform(CLI::CheckedTransformer(algorithms, CLI::ignore_case));
  app.add_flag("--unravel", cfg.unravel, "Print the UI with every let expanded");
  app.add_option("--verify", cfg.verify, "off, residue or equivalence (needs --algorithm both)")
      ->transform(CLI::CheckedTransformer(verifies, CLI::ignore_case));
  app.add_option("--max-branches", cfg.max_branches, "Tableaux branch cap");
  app.add_option("--max-clauses", cfg.max_clauses, "Saturation clause cap");
  app.add_option("--max-cdags", cfg.max_cdags, "Conditional DAG enumeration cap");
  app.add_option("--max-cubes", cfg.max_cubes, "Validity search cap");
  app.add_option("--timeout-ms", cfg.timeout_ms, "Wall-clock budget in milliseconds");
  app.add_option("--format", cfg.format, "smtlib-like or stats-json")
      ->transform(CLI::CheckedTransformer(formats, CLI::ignore_case));
  app.add_option("--strategy", cfg.strategy, "Tableaux scan order: default or reversed")
      ->transform(CLI::CheckedTransformer(strategies, CLI::ignore_case));
  app.add_option("--prune", cfg.prune, "Trivial phi_delta removal: none, syntactic or semantic")
      ->transform(CLI::CheckedTransformer(prunes, CLI::ignore_case));
  app.add_option("--jobs", cfg.jobs, "Worker threads for the tableaux search")->check(CLI::Range(1u, 256u));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  if (cfg.verify == Verify::Equivalence && cfg.algorithm != Algorithm::Both) {
    err << "error: --verify equivalence requires --algorithm both\n";
    return kInputError;
  }
  return execute(cfg, in, out, err);
}

}  // namespace eufui::cli
