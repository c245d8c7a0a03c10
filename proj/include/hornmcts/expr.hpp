#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hornmcts {

using Coeff = boost::multiprecision::cpp_int;
using AtomId = std::uint32_t;
using Residue = std::uint64_t;

/// Thrown by the parser; position is a byte offset into the input.
class ParseError : public std::runtime_error {
public:
  ParseError(const std::string &what, std::size_t position);
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

class EvalError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Interned atom texts. An atom is a plain identifier or an opaque call such
/// as "sin(x)"; ids are assigned in first-interned order.
class AtomTable {
public:
  AtomId intern(std::string_view text);
  std::optional<AtomId> find(std::string_view text) const;
  const std::string &text(AtomId id) const { return texts_.at(id); }
  std::size_t size() const { return texts_.size(); }

private:
  std::vector<std::string> texts_;
  std::unordered_map<std::string, AtomId> index_;
};

struct Factor {
  AtomId atom;
  std::uint32_t exp;
  bool operator==(const Factor &) const = default;
};

/// coeff * prod(atom^exp). Factors are sorted by atom id, exponents positive.
struct Term {
  Coeff coeff;
  std::vector<Factor> factors;

  std::uint32_t degree() const;
  std::uint32_t exponent_of(AtomId atom) const;
  bool operator==(const Term &) const = default;
};

struct OpCount {
  std::uint64_t mul = 0;
  std::uint64_t add = 0;

  std::uint64_t total() const { return mul + add; }
  OpCount &operator+=(const OpCount &o) {
    mul += o.mul;
    add += o.add;
    return *this;
  }
  friend OpCount operator+(OpCount a, const OpCount &b) { return a += b; }
  bool operator==(const OpCount &) const = default;
};

/// Sparse polynomial with integer coefficients over an immutable atom table.
/// Terms are kept merged and in graded-lex order (atom id 0 most significant),
/// so two expressions over the same table compare equal iff their term lists do.
class Expression {
public:
  Expression();
  Expression(std::shared_ptr<const AtomTable> atoms, std::vector<Term> terms);

  const AtomTable &atoms() const { return *atoms_; }
  const std::shared_ptr<const AtomTable> &atom_table() const { return atoms_; }
  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Expression operator+(const Expression &other) const;
  Expression operator-(const Expression &other) const;
  Expression operator*(const Expression &other) const;
  /// Multiply every term by coeff * atom^exp (exp may be 0).
  Expression times(const Coeff &coeff, std::optional<AtomId> atom = {},
                   std::uint32_t exp = 1) const;

  /// Equality by atom text, so expressions over different tables compare
  /// structurally.
  bool operator==(const Expression &other) const;

private:
  Expression combine(const Expression &other, bool negate) const;

  std::shared_ptr<const AtomTable> atoms_;
  std::vector<Term> terms_;
};

/// Merges like terms, drops zeros and sorts into canonical order.
std::vector<Term> canonicalize(std::vector<Term> terms);

/// Strict graded-lex "comes first" ordering used for canonical output.
bool grlex_before(const Term &a, const Term &b);

Expression parse(std::string_view text);
/// Parse against a pre-seeded atom table (copied); new atoms are appended.
Expression parse(std::string_view text, const AtomTable &seed);

std::string to_string(const Expression &e);

OpCount naive_op_count(const Expression &e);

/// Atoms occurring with a nonzero exponent, ascending id.
std::vector<AtomId> variables(const Expression &e);

using Assignment = std::unordered_map<AtomId, Residue>;

Residue mul_mod(Residue a, Residue b, Residue p);
Residue coeff_mod(const Coeff &c, Residue p);
Residue pow_mod(Residue base, std::uint64_t exp, Residue p);

/// Value of e in Z/pZ. Opaque atoms are free variables.
Residue eval_mod_p(const Expression &e, const Assignment &assignment, Residue p);

} // namespace hornmcts
