#include "hornmcts/commands.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace hornmcts {

using nlohmann::json;

Expression load_expression(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InputError("cannot read '" + path.string() + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse(text.str());
}

namespace {

json ops_json(const OpCount &c) { return {{"mul", c.mul}, {"add", c.add}, {"total", c.total()}}; }

std::string ops_text(const OpCount &c) {
  return "mul=" + std::to_string(c.mul) + " add=" + std::to_string(c.add) + " total=" + std::to_string(c.total());
}

} // namespace

void cmd_simplify(const Expression &e, const std::string &scheme_text, Direction direction, OutputFormat format,
                  std::ostream &out) {
  Scheme scheme;
  if (scheme_text == "occurrence") {
    scheme = occurrence_order(e);
    scheme.direction = direction;
  } else {
    scheme = parse_scheme(scheme_text, e.atoms());
    if (scheme_text.find(';') == std::string::npos) {
      scheme.direction = direction;
    }
  }
  const auto tree = apply_scheme(e, scheme);
  const auto result = simplify(e, scheme);
  const auto naive = naive_op_count(e);
  const auto horner = tree_op_count(tree);

  if (format == OutputFormat::Json) {
    json j;
    j["scheme"] = format_scheme(scheme, e.atoms());
    j["naive"] = ops_json(naive);
    j["horner"] = ops_json(horner);
    j["cse"] = ops_json(result.ops);
    j["horner_form"] = to_string(tree, e.atoms());
    j["three_address"] = to_three_address(result.dag, e.atoms());
    out << j.dump(2) << '\n';
    return;
  }
  out << "scheme: " << format_scheme(scheme, e.atoms()) << '\n'
      << "naive:  " << ops_text(naive) << '\n'
      << "horner: " << ops_text(horner) << '\n'
      << "cse:    " << ops_text(result.ops) << '\n'
      << "horner form: " << to_string(tree, e.atoms()) << '\n'
      << "three-address:\n"
      << to_three_address(result.dag, e.atoms());
}

void cmd_search(const Expression &e, const SearchParams &params, std::ostream &out) {
  SearchParams p = params;
  p.record_trace = false;
  const auto r = repeat_search(e, p);
  json j;
  j["best_total"] = r.best_delta.total();
  j["best_mul"] = r.best_delta.mul;
  j["best_add"] = r.best_delta.add;
  j["scheme"] = format_scheme(r.best_scheme, e.atoms());
  j["direction"] = std::string(to_string(p.direction));
  j["criterion"] = std::string(to_string(p.criterion));
  j["schedule"] = to_string(p.schedule);
  j["cp"] = p.cp;
  j["n_updates"] = p.n_updates;
  j["repeats"] = p.repeats;
  j["seed"] = p.seed;
  j["best_seed"] = r.seed;
  out << j.dump(2) << '\n';
}

void cmd_sweep(const Expression &e, const SweepConfig &cfg, std::ostream &out) {
  write_sweep_csv(out, run_sweep(e, cfg));
}

void cmd_bruteforce(const Expression &e, Direction direction, OutputFormat format, std::ostream &out) {
  const auto r = brute_force(e, direction);
  if (format == OutputFormat::Json) {
    json j;
    j["best_total"] = r.best.total();
    j["best_mul"] = r.best.mul;
    j["best_add"] = r.best.add;
    j["scheme"] = format_scheme(r.scheme, e.atoms());
    j["direction"] = std::string(to_string(direction));
    j["schemes_evaluated"] = r.schemes_evaluated;
    out << j.dump(2) << '\n';
    return;
  }
  out << "schemes evaluated: " << r.schemes_evaluated << '\n'
      << "best: " << ops_text(r.best) << '\n'
      << "scheme: " << format_scheme(r.scheme, e.atoms()) << '\n';
}

void cmd_analyze(std::istream &csv, double epsilon, std::size_t bins, OutputFormat format, std::ostream &out) {
  if (!(epsilon > 0.0)) {
    throw InputError("epsilon must be positive");
  }
  if (bins == 0) {
    throw InputError("bins must be positive");
  }
  const auto rows = read_sweep_csv(csv);
  if (rows.empty()) {
    throw InputError("sweep CSV has no rows");
  }
  const auto points = to_points(rows);
  const auto roi = region_of_interest(points, epsilon, bins);
  double lo = points.front().cp;
  double hi = lo;
  for (const auto &p : points) {
    lo = std::min(lo, p.cp);
    hi = std::max(hi, p.cp);
  }
  const auto mins = per_bin_minima(points, bins, lo, hi);
  const double step = (std::log10(hi) - std::log10(lo)) / static_cast<double>(bins);
  auto edge = [&](std::size_t b) { return std::pow(10.0, std::log10(lo) + static_cast<double>(b) * step); };

  if (format == OutputFormat::Csv) {
    out << "bin,cp_low,cp_high,min_ops\n";
    for (std::size_t b = 0; b < bins; ++b) {
      out << b << ',' << format_double(edge(b)) << ',' << format_double(edge(b + 1)) << ',';
      if (mins[b]) {
        out << *mins[b];
      }
      out << '\n';
    }
    return;
  }
  json j;
  j["rows"] = rows.size();
  j["epsilon"] = epsilon;
  j["bins"] = bins;
  j["global_min"] = roi.global_min;
  j["roi_width_decades"] = roi.width;
  j["roi_cp_low"] = roi.cp_low;
  j["roi_cp_high"] = roi.cp_high;
  json per_bin = json::array();
  for (const auto &m : mins) {
    per_bin.push_back(m ? json(*m) : json(nullptr));
  }
  j["bin_minima"] = per_bin;
  out << j.dump(2) << '\n';
}

} // namespace hornmcts
