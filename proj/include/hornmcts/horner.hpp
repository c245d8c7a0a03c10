#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hornmcts/expr.hpp"

namespace hornmcts {

enum class Direction { Forward, Backward };

std::string_view to_string(Direction d);
Direction parse_direction(std::string_view text);

class SchemeError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Variable extraction order. May be a strict prefix of the variable set;
/// variables not listed are never extracted.
struct Scheme {
  std::vector<AtomId> order;
  Direction direction = Direction::Forward;
  bool operator==(const Scheme &) const = default;
};

/// Forward: order as given. Backward: reversed (inside-out construction).
std::vector<AtomId> effective_order(const Scheme &s);

/// Throws SchemeError on duplicates or atoms absent from e.
void validate_scheme(const Expression &e, const Scheme &s);

/// "y,x;forward". Atom texts may themselves contain commas inside parentheses.
std::string format_scheme(const Scheme &s, const AtomTable &atoms);
Scheme parse_scheme(std::string_view text, const AtomTable &atoms);

/// Nested Horner form. Sum and Product nodes are flattened (no Sum child
/// under a Sum, no Product under a Product) and have at least two children.
/// Power keeps its base in children[0].
struct ExprTree {
  enum class Kind { Sum, Product, Power, Atom, Const };

  Kind kind = Kind::Const;
  std::vector<ExprTree> children;
  AtomId atom = 0;
  std::uint32_t exp = 0;
  Coeff value = 0;

  static ExprTree make_atom(AtomId id);
  static ExprTree make_const(Coeff c);
  /// exp 1 returns the base itself.
  static ExprTree make_power(ExprTree base, std::uint32_t exp);
  static ExprTree make_sum(std::vector<ExprTree> children);
  /// Drops unit constants; a single remaining child is returned as-is.
  static ExprTree make_product(std::vector<ExprTree> children);

  bool operator==(const ExprTree &) const = default;
};

/// Multivariate Horner form of e under s.
///
/// For the leading variable v of the effective order: terms without v are
/// Hornered with the rest of the order; from the terms containing v the
/// greatest common monomial g over the not-yet-processed scheme variables is
/// factored out (v's exponent in g is at least one), and the cofactor is
/// Hornered again starting at v. This repeats extraction of v until its
/// exponent classes are exhausted.
ExprTree apply_scheme(const Expression &e, const Scheme &s);

/// Per occurrence: Sum of k children costs k-1 additions; Product of k
/// children k-1 multiplications, less one when a child is the constant -1
/// (negation folds into subtraction); Power e costs e-1 multiplications.
OpCount tree_op_count(const ExprTree &t);

Residue eval_tree_mod_p(const ExprTree &t, const Assignment &assignment, Residue p);

std::string to_string(const ExprTree &t, const AtomTable &atoms);

/// Variables by descending term-occurrence count, ties by ascending id.
Scheme occurrence_order(const Expression &e);

} // namespace hornmcts
