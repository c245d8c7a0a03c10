// hornmcts: operation-count minimization of polynomial expressions via
// Horner schemes found by Monte Carlo tree search, followed by CSE.
//
// Exit codes: 0 success, 1 usage error, 2 input error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "hornmcts/benchgen.hpp"
#include "hornmcts/commands.hpp"

namespace {

using namespace hornmcts;

constexpr int kUsage = 1;
constexpr int kInput = 2;

struct SearchFlags {
  double cp = 1.0;
  std::uint64_t n_updates = 1000;
  std::uint32_t repeats = 1;
  std::string criterion = "sa-uct";
  std::string schedule = "linear";
  std::string direction = "forward";
  std::uint64_t seed = 0;
};

void add_common(CLI::App *cmd, SearchFlags &f) {
  cmd->add_option("--n-updates", f.n_updates, "MCTS iterations per search (N)");
  cmd->add_option("--criterion", f.criterion, "uct or sa-uct")->check(CLI::IsMember({"uct", "sa-uct"}));
  cmd->add_option("--schedule", f.schedule, "SA-UCT temperature: linear, const, exp:<half-life>");
  cmd->add_option("--direction", f.direction, "forward or backward")->check(CLI::IsMember({"forward", "backward"}));
  cmd->add_option("--seed", f.seed, "base seed");
}

OutputFormat format_of(const std::string &s) {
  if (s == "json") {
    return OutputFormat::Json;
  }
  if (s == "csv") {
    return OutputFormat::Csv;
  }
  return OutputFormat::Text;
}

/// Writes to the named file, or stdout when the name is empty or "-".
template <class F> void with_output(const std::string &path, F &&body) {
  if (path.empty() || path == "-") {
    body(std::cout);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw InputError("cannot write '" + path + "'");
  }
  body(out);
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Horner-scheme search with UCT / SA-UCT and common subexpression elimination"};
  app.require_subcommand(1);

  std::string expr_path;
  std::string out_path;
  std::string format = "text";
  SearchFlags flags;

  auto *simplify = app.add_subcommand("simplify", "Apply one scheme and report operation counts");
  std::string scheme_text = "occurrence";
  simplify->add_option("expr", expr_path, "expression file")->required();
  simplify->add_option("--scheme", scheme_text, "comma-separated variables, or 'occurrence'");
  simplify->add_option("--direction", flags.direction)->check(CLI::IsMember({"forward", "backward"}));
  simplify->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto *search_cmd = app.add_subcommand("search", "Run MCTS (repeated R times) and print the best scheme as JSON");
  search_cmd->add_option("expr", expr_path, "expression file")->required();
  search_cmd->add_option("--cp", flags.cp, "exploration constant / initial temperature");
  search_cmd->add_option("--repeats", flags.repeats, "independent searches (R)");
  search_cmd->add_option("--format", format)->check(CLI::IsMember({"json"}));
  add_common(search_cmd, flags);

  auto *sweep = app.add_subcommand("sweep", "C_p sensitivity sweep, one CSV row per search");
  SweepConfig sweep_cfg;
  sweep->add_option("expr", expr_path, "expression file")->required();
  sweep->add_option("--cp-min", sweep_cfg.cp_min);
  sweep->add_option("--cp-max", sweep_cfg.cp_max);
  sweep->add_option("--samples", sweep_cfg.samples);
  sweep->add_option("-o,--output", out_path, "CSV file (default stdout)");
  sweep->add_option("--format", format)->check(CLI::IsMember({"csv"}));
  add_common(sweep, flags);

  auto *brute = app.add_subcommand("bruteforce", "Exhaustive minimum over all variable orders");
  brute->add_option("expr", expr_path, "expression file")->required();
  brute->add_option("--direction", flags.direction)->check(CLI::IsMember({"forward", "backward"}));
  brute->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));

  auto *generate = app.add_subcommand("generate", "Write a benchmark expression");
  generate->require_subcommand(1);
  std::size_t res_m = 0;
  std::size_t res_n = 0;
  auto *gen_res = generate->add_subcommand("resultant", "res(m,n) via the Sylvester determinant");
  gen_res->add_option("m", res_m)->required();
  gen_res->add_option("n", res_n)->required();
  RandomExprParams rnd;
  auto *gen_rnd = generate->add_subcommand("random", "Seeded random polynomial");
  gen_rnd->add_option("--vars", rnd.n_vars);
  gen_rnd->add_option("--terms", rnd.n_terms);
  gen_rnd->add_option("--max-exponent", rnd.max_exponent);
  gen_rnd->add_option("--coeff-range", rnd.coeff_range);
  gen_rnd->add_option("--seed", rnd.seed);
  std::string preset_name;
  auto *gen_preset = generate->add_subcommand("preset", "Named random stand-in (hep-like-15, hep-like-22)");
  gen_preset->add_option("name", preset_name)->required();
  for (auto *g : {gen_res, gen_rnd, gen_preset}) {
    g->add_option("-o,--output", out_path, "expression file (default stdout)");
  }

  auto *analyze = app.add_subcommand("analyze", "Region-of-interest analysis of a sweep CSV");
  std::string csv_path;
  double epsilon = 0.05;
  std::size_t bins = 50;
  analyze->add_option("csv", csv_path, "sweep CSV")->required();
  analyze->add_option("--epsilon", epsilon, "relative slack over the global minimum");
  analyze->add_option("--bins", bins, "log(cp) bins");
  analyze->add_option("--format", format)->check(CLI::IsMember({"json", "csv"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return kUsage;
  }

  try {
    const Direction direction = parse_direction(flags.direction);
    if (*simplify) {
      cmd_simplify(load_expression(expr_path), scheme_text, direction, format_of(format), std::cout);
    } else if (*search_cmd || *sweep) {
      const Expression e = load_expression(expr_path);
      if (*search_cmd) {
        SearchParams p;
        p.cp = flags.cp;
        p.n_updates = flags.n_updates;
        p.repeats = flags.repeats;
        p.criterion = parse_criterion(flags.criterion);
        p.schedule = parse_schedule(flags.schedule);
        p.direction = direction;
        p.seed = flags.seed;
        validate(p);
        cmd_search(e, p, std::cout);
      } else {
        sweep_cfg.n_updates = flags.n_updates;
        sweep_cfg.criterion = parse_criterion(flags.criterion);
        sweep_cfg.schedule = parse_schedule(flags.schedule);
        sweep_cfg.direction = direction;
        sweep_cfg.base_seed = flags.seed;
        validate(sweep_cfg);
        with_output(out_path, [&](std::ostream &out) { cmd_sweep(e, sweep_cfg, out); });
      }
    } else if (*brute) {
      cmd_bruteforce(load_expression(expr_path), direction, format_of(format), std::cout);
    } else if (*generate) {
      Expression e;
      if (*gen_res) {
        e = resultant_expr(res_m, res_n);
      } else if (*gen_rnd) {
        e = random_expr(rnd);
      } else {
        e = random_expr(preset(preset_name));
      }
      with_output(out_path, [&](std::ostream &out) { out << to_string(e) << '\n'; });
    } else if (*analyze) {
      std::ifstream in(csv_path, std::ios::binary);
      if (!in) {
        throw InputError("cannot read '" + csv_path + "'");
      }
      cmd_analyze(in, epsilon, bins, format == "csv" ? OutputFormat::Csv : OutputFormat::Json, std::cout);
    }
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << '\n';
    return kInput;
  }
  return 0;
}
