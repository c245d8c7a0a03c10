#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "hornmcts/sweep.hpp"

namespace hornmcts {

/// Bad user input (unreadable file, malformed expression or scheme, invalid
/// parameters). The CLI maps it to exit code 2.
class InputError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Text, Csv, Json };

Expression load_expression(const std::filesystem::path &path);

/// `scheme_text` is a comma-separated variable list or "occurrence". A
/// ";forward"/";backward" suffix overrides `direction`.
void cmd_simplify(const Expression &e, const std::string &scheme_text, Direction direction, OutputFormat format,
                  std::ostream &out);
void cmd_search(const Expression &e, const SearchParams &params, std::ostream &out);
void cmd_sweep(const Expression &e, const SweepConfig &cfg, std::ostream &out);
void cmd_bruteforce(const Expression &e, Direction direction, OutputFormat format, std::ostream &out);
void cmd_analyze(std::istream &csv, double epsilon, std::size_t bins, OutputFormat format, std::ostream &out);

} // namespace hornmcts
