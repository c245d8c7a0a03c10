#include "hornmcts/expr.hpp"

#include <algorithm>
#include <map>

namespace hornmcts {

AtomId AtomTable::intern(std::string_view text) {
  if (text.empty()) {
    throw std::invalid_argument("atom text must be non-empty");
  }
  std::string key(text);
  if (auto it = index_.find(key); it != index_.end()) {
    return it->second;
  }
  const auto id = static_cast<AtomId>(texts_.size());
  texts_.push_back(key);
  index_.emplace(std::move(key), id);
  return id;
}

std::optional<AtomId> AtomTable::find(std::string_view text) const {
  if (auto it = index_.find(std::string(text)); it != index_.end()) {
    return it->second;
  }
  return std::nullopt;
}

std::uint32_t Term::degree() const {
  std::uint32_t d = 0;
  for (const auto &f : factors) {
    d += f.exp;
  }
  return d;
}

std::uint32_t Term::exponent_of(AtomId atom) const {
  auto it = std::lower_bound(factors.begin(), factors.end(), atom,
                             [](const Factor &f, AtomId a) { return f.atom < a; });
  return (it != factors.end() && it->atom == atom) ? it->exp : 0;
}

bool grlex_before(const Term &a, const Term &b) {
  const auto da = a.degree();
  const auto db = b.degree();
  if (da != db) {
    return da > db;
  }
  // Walk both sparse exponent vectors in atom order; the first atom where
  // exponents differ decides, larger exponent first.
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.factors.size() || j < b.factors.size()) {
    const AtomId ai = i < a.factors.size() ? a.factors[i].atom : UINT32_MAX;
    const AtomId bj = j < b.factors.size() ? b.factors[j].atom : UINT32_MAX;
    const AtomId atom = std::min(ai, bj);
    const std::uint32_t ea = ai == atom ? a.factors[i].exp : 0;
    const std::uint32_t eb = bj == atom ? b.factors[j].exp : 0;
    if (ea != eb) {
      return ea > eb;
    }
    i += ai == atom;
    j += bj == atom;
  }
  return false;
}

std::vector<Term> canonicalize(std::vector<Term> terms) {
  for (auto &t : terms) {
    std::sort(t.factors.begin(), t.factors.end(),
              [](const Factor &a, const Factor &b) { return a.atom < b.atom; });
    // merge repeated atoms within a term
    std::vector<Factor> merged;
    for (const auto &f : t.factors) {
      if (f.exp == 0) {
        continue;
      }
      if (!merged.empty() && merged.back().atom == f.atom) {
        merged.back().exp += f.exp;
      } else {
        merged.push_back(f);
      }
    }
    t.factors = std::move(merged);
  }
  std::sort(terms.begin(), terms.end(), grlex_before);
  std::vector<Term> out;
  out.reserve(terms.size());
  for (auto &t : terms) {
    if (!out.empty() && out.back().factors == t.factors) {
      out.back().coeff += t.coeff;
    } else {
      out.push_back(std::move(t));
    }
  }
  std::erase_if(out, [](const Term &t) { return t.coeff == 0; });
  return out;
}

Expression::Expression() : atoms_(std::make_shared<const AtomTable>()) {}

Expression::Expression(std::shared_ptr<const AtomTable> atoms, std::vector<Term> terms)
    : atoms_(std::move(atoms)), terms_(canonicalize(std::move(terms))) {
  for (const auto &t : terms_) {
    for (const auto &f : t.factors) {
      if (f.atom >= atoms_->size()) {
        throw std::invalid_argument("term references an atom outside the table");
      }
    }
  }
}

Expression Expression::combine(const Expression &other, bool negate) const {
  if (atoms_ != other.atoms_) {
    throw std::invalid_argument("arithmetic on expressions over different atom tables");
  }
  std::vector<Term> all(terms_.begin(), terms_.end());
  for (auto t : other.terms_) {
    if (negate) {
      t.coeff = -t.coeff;
    }
    all.push_back(std::move(t));
  }
  return Expression(atoms_, std::move(all));
}

Expression Expression::operator+(const Expression &other) const { return combine(other, false); }
Expression Expression::operator-(const Expression &other) const { return combine(other, true); }

Expression Expression::operator*(const Expression &other) const {
  if (atoms_ != other.atoms_) {
    throw std::invalid_argument("arithmetic on expressions over different atom tables");
  }
  std::vector<Term> all;
  all.reserve(terms_.size() * other.terms_.size());
  for (const auto &a : terms_) {
    for (const auto &b : other.terms_) {
      Term t{a.coeff * b.coeff, a.factors};
      t.factors.insert(t.factors.end(), b.factors.begin(), b.factors.end());
      all.push_back(std::move(t));
    }
  }
  return Expression(atoms_, std::move(all));
}

Expression Expression::times(const Coeff &coeff, std::optional<AtomId> atom,
                             std::uint32_t exp) const {
  std::vector<Term> all(terms_.begin(), terms_.end());
  for (auto &t : all) {
    t.coeff *= coeff;
    if (atom && exp > 0) {
      t.factors.push_back({*atom, exp});
    }
  }
  return Expression(atoms_, std::move(all));
}

namespace {

using TextKey = std::vector<std::pair<std::string, std::uint32_t>>;

std::map<TextKey, Coeff> text_form(const Expression &e) {
  std::map<TextKey, Coeff> out;
  for (const auto &t : e.terms()) {
    TextKey key;
    for (const auto &f : t.factors) {
      key.emplace_back(e.atoms().text(f.atom), f.exp);
    }
    std::sort(key.begin(), key.end());
    out.emplace(std::move(key), t.coeff);
  }
  return out;
}

} // namespace

bool Expression::operator==(const Expression &other) const {
  if (atoms_ == other.atoms_) {
    return terms_ == other.terms_;
  }
  return text_form(*this) == text_form(other);
}

std::string to_string(const Expression &e) {
  if (e.is_zero()) {
    return "0";
  }
  std::string out;
  bool first = true;
  for (const auto &t : e.terms()) {
    const bool negative = t.coeff < 0;
    if (first) {
      if (negative) {
        out += '-';
      }
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    const Coeff magnitude = negative ? Coeff(-t.coeff) : t.coeff;
    bool need_star = false;
    if (magnitude != 1 || t.factors.empty()) {
      out += magnitude.str();
      need_star = true;
    }
    for (const auto &f : t.factors) {
      if (need_star) {
        out += '*';
      }
      out += e.atoms().text(f.atom);
      if (f.exp != 1) {
        out += '^';
        out += std::to_string(f.exp);
      }
      need_star = true;
    }
  }
  return out;
}

OpCount naive_op_count(const Expression &e) {
  OpCount c;
  for (const auto &t : e.terms()) {
    if (t.factors.empty()) {
      continue;
    }
    c.mul += t.degree() - 1;
    if (t.coeff != 1 && t.coeff != -1) {
      c.mul += 1;
    }
  }
  c.add = e.size() > 0 ? e.size() - 1 : 0;
  return c;
}

std::vector<AtomId> variables(const Expression &e) {
  std::vector<bool> seen(e.atoms().size(), false);
  for (const auto &t : e.terms()) {
    for (const auto &f : t.factors) {
      seen[f.atom] = true;
    }
  }
  std::vector<AtomId> out;
  for (AtomId id = 0; id < seen.size(); ++id) {
    if (seen[id]) {
      out.push_back(id);
    }
  }
  return out;
}

Residue mul_mod(Residue a, Residue b, Residue p) {
  return static_cast<Residue>((static_cast<unsigned __int128>(a) * b) % p);
}

Residue coeff_mod(const Coeff &c, Residue p) {
  Coeff r = c % p;
  if (r < 0) {
    r += p;
  }
  return r.convert_to<Residue>();
}

Residue pow_mod(Residue base, std::uint64_t exp, Residue p) {
  Residue result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) {
      result = mul_mod(result, base, p);
    }
    base = mul_mod(base, base, p);
    exp >>= 1U;
  }
  return result;
}

Residue eval_mod_p(const Expression &e, const Assignment &assignment, Residue p) {
  if (p < 2) {
    throw EvalError("modulus must be at least 2");
  }
  Residue sum = 0;
  for (const auto &t : e.terms()) {
    Residue v = coeff_mod(t.coeff, p);
    for (const auto &f : t.factors) {
      auto it = assignment.find(f.atom);
      if (it == assignment.end()) {
        throw EvalError("no value assigned to atom '" + e.atoms().text(f.atom) + "'");
      }
      v = mul_mod(v, pow_mod(it->second, f.exp, p), p);
    }
    sum = (sum + v) % p;
  }
  return sum;
}

} // namespace hornmcts
