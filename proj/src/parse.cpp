// Recursive-descent parser for the expression text format:
//
//   expr   := ['+'|'-'] term (('+'|'-') term)*
//   term   := factor ('*' factor)*
//   factor := integer | atom ['^' positive-integer]
//   atom   := identifier | identifier '(' balanced-text ')'
//
// Whitespace is ignored everywhere; inside a call atom it is stripped from the
// interned text, so "sin( x )" and "sin(x)" are the same atom.

#include "hornmcts/expr.hpp"

#include <cctype>

namespace hornmcts {

ParseError::ParseError(const std::string &what, std::size_t position)
    : std::runtime_error("parse error at offset " + std::to_string(position) + ": " + what),
      position_(position) {}

namespace {

class Parser {
public:
  Parser(std::string_view text, AtomTable &atoms) : text_(text), atoms_(atoms) {}

  std::vector<Term> parse_all() {
    skip_ws();
    if (pos_ == text_.size()) {
      throw ParseError("empty expression", pos_);
    }
    std::vector<Term> terms;
    bool negative = false;
    if (peek() == '+' || peek() == '-') {
      negative = take() == '-';
    }
    terms.push_back(parse_term(negative));
    while (true) {
      skip_ws();
      if (pos_ == text_.size()) {
        break;
      }
      const char c = peek();
      if (c != '+' && c != '-') {
        throw ParseError(std::string("unexpected character '") + c + "'", pos_);
      }
      take();
      terms.push_back(parse_term(c == '-'));
    }
    return terms;
  }

private:
  char peek() const { return text_[pos_]; }
  char take() { return text_[pos_++]; }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  Term parse_term(bool negative) {
    Term t{negative ? Coeff(-1) : Coeff(1), {}};
    parse_factor(t);
    while (true) {
      skip_ws();
      if (pos_ < text_.size() && peek() == '*') {
        take();
        parse_factor(t);
      } else {
        break;
      }
    }
    return t;
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    return std::string(text_.substr(start, pos_ - start));
  }

  void parse_factor(Term &t) {
    skip_ws();
    if (pos_ == text_.size()) {
      throw ParseError("expected a factor", pos_);
    }
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.coeff *= Coeff(digits());
      return;
    }
    if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) {
      throw ParseError(std::string("expected a factor, found '") + c + "'", pos_);
    }
    const AtomId atom = atoms_.intern(parse_atom());
    std::uint32_t exp = 1;
    skip_ws();
    if (pos_ < text_.size() && peek() == '^') {
      take();
      skip_ws();
      const std::size_t at = pos_;
      if (pos_ < text_.size() && peek() == '-') {
        throw ParseError("negative exponent", at);
      }
      const std::string d = digits();
      if (d.empty()) {
        throw ParseError("expected an exponent", at);
      }
      if (d.size() > 9) {
        throw ParseError("exponent too large", at);
      }
      exp = static_cast<std::uint32_t>(std::stoul(d));
      if (exp == 0) {
        throw ParseError("exponent must be positive", at);
      }
    }
    t.factors.push_back({atom, exp});
  }

  std::string parse_atom() {
    const std::size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
      ++pos_;
    }
    std::string name(text_.substr(start, pos_ - start));
    const std::size_t after_name = pos_;
    skip_ws();
    if (pos_ == text_.size() || peek() != '(') {
      pos_ = after_name;
      return name;
    }
    // opaque call: keep the balanced argument text, minus whitespace
    const std::size_t open = pos_;
    int depth = 0;
    std::string out = name;
    do {
      if (pos_ == text_.size()) {
        throw ParseError("unbalanced parenthesis", open);
      }
      const char c = take();
      if (c == '(') {
        ++depth;
      } else if (c == ')') {
        --depth;
      }
      if (!std::isspace(static_cast<unsigned char>(c))) {
        out += c;
      }
    } while (depth > 0);
    return out;
  }

  std::string_view text_;
  AtomTable &atoms_;
  std::size_t pos_ = 0;
};

} // namespace

Expression parse(std::string_view text, const AtomTable &seed) {
  auto atoms = std::make_shared<AtomTable>(seed);
  auto terms = Parser(text, *atoms).parse_all();
  return Expression(std::move(atoms), std::move(terms));
}

Expression parse(std::string_view text) { return parse(text, AtomTable{}); }

} // namespace hornmcts
