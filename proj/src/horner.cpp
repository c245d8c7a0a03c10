#include "hornmcts/horner.hpp"

#include <algorithm>
#include <unordered_set>

#include "horner_kernel.hpp"

namespace hornmcts {

std::string_view to_string(Direction d) { return d == Direction::Forward ? "forward" : "backward"; }

Direction parse_direction(std::string_view text) {
  if (text == "forward") {
    return Direction::Forward;
  }
  if (text == "backward") {
    return Direction::Backward;
  }
  throw SchemeError("unknown direction '" + std::string(text) + "'");
}

std::vector<AtomId> effective_order(const Scheme &s) {
  std::vector<AtomId> order = s.order;
  if (s.direction == Direction::Backward) {
    std::reverse(order.begin(), order.end());
  }
  return order;
}

void validate_scheme(const Expression &e, const Scheme &s) {
  const auto vars = variables(e);
  std::unordered_set<AtomId> seen;
  for (AtomId a : s.order) {
    if (!seen.insert(a).second) {
      throw SchemeError("scheme lists a variable twice");
    }
    if (!std::binary_search(vars.begin(), vars.end(), a)) {
      const std::string name = a < e.atoms().size() ? e.atoms().text(a) : std::to_string(a);
      throw SchemeError("scheme variable '" + name + "' does not occur in the expression");
    }
  }
}

std::string format_scheme(const Scheme &s, const AtomTable &atoms) {
  std::string out;
  for (std::size_t i = 0; i < s.order.size(); ++i) {
    if (i > 0) {
      out += ',';
    }
    out += atoms.text(s.order[i]);
  }
  out += ';';
  out += to_string(s.direction);
  return out;
}

Scheme parse_scheme(std::string_view text, const AtomTable &atoms) {
  Scheme s;
  if (const auto semi = text.rfind(';'); semi != std::string_view::npos) {
    s.direction = parse_direction(text.substr(semi + 1));
    text = text.substr(0, semi);
  }
  std::string current;
  int depth = 0;
  auto flush = [&] {
    if (current.empty()) {
      return;
    }
    auto id = atoms.find(current);
    if (!id) {
      throw SchemeError("unknown variable '" + current + "' in scheme");
    }
    s.order.push_back(*id);
    current.clear();
  };
  for (char c : text) {
    if (c == ',' && depth == 0) {
      flush();
      continue;
    }
    if (c == '(') {
      ++depth;
    } else if (c == ')') {
      --depth;
    }
    if (c != ' ' && c != '\t') {
      current += c;
    }
  }
  flush();
  return s;
}

ExprTree ExprTree::make_atom(AtomId id) {
  ExprTree t;
  t.kind = Kind::Atom;
  t.atom = id;
  return t;
}

ExprTree ExprTree::make_const(Coeff c) {
  ExprTree t;
  t.kind = Kind::Const;
  t.value = std::move(c);
  return t;
}

ExprTree ExprTree::make_power(ExprTree base, std::uint32_t exp) {
  if (exp == 1) {
    return base;
  }
  ExprTree t;
  t.kind = Kind::Power;
  t.exp = exp;
  t.children.push_back(std::move(base));
  return t;
}

namespace {

ExprTree make_nary(ExprTree::Kind kind, std::vector<ExprTree> children) {
  std::vector<ExprTree> flat;
  flat.reserve(children.size());
  for (auto &c : children) {
    if (c.kind == kind) {
      for (auto &g : c.children) {
        flat.push_back(std::move(g));
      }
    } else {
      flat.push_back(std::move(c));
    }
  }
  if (kind == ExprTree::Kind::Product && flat.size() > 1) {
    std::erase_if(flat, [](const ExprTree &c) { return c.kind == ExprTree::Kind::Const && c.value == 1; });
    if (flat.empty()) {
      return ExprTree::make_const(1);
    }
  }
  if (flat.empty()) {
    return ExprTree::make_const(kind == ExprTree::Kind::Sum ? 0 : 1);
  }
  if (flat.size() == 1) {
    return std::move(flat.front());
  }
  ExprTree t;
  t.kind = kind;
  t.children = std::move(flat);
  return t;
}

struct TreeBuilder {
  using Handle = ExprTree;
  const Expression &e;

  Handle atom(AtomId id) { return ExprTree::make_atom(id); }
  Handle constant(std::uint32_t term) { return ExprTree::make_const(e.terms()[term].coeff); }
  Handle unit() { return ExprTree::make_const(1); }
  Handle zero() { return ExprTree::make_const(0); }
  Handle power(Handle base, std::uint32_t exp) { return ExprTree::make_power(std::move(base), exp); }
  Handle product(std::vector<Handle> cs) { return make_nary(ExprTree::Kind::Product, std::move(cs)); }
  Handle sum(std::vector<Handle> cs) { return make_nary(ExprTree::Kind::Sum, std::move(cs)); }
};

bool is_minus_one(const ExprTree &t) { return t.kind == ExprTree::Kind::Const && t.value == -1; }

} // namespace

ExprTree ExprTree::make_sum(std::vector<ExprTree> children) {
  return make_nary(Kind::Sum, std::move(children));
}

ExprTree ExprTree::make_product(std::vector<ExprTree> children) {
  return make_nary(Kind::Product, std::move(children));
}

ExprTree apply_scheme(const Expression &e, const Scheme &s) {
  validate_scheme(e, s);
  const auto order = effective_order(s);
  TreeBuilder builder{e};
  return detail::HornerKernel<TreeBuilder>(e, order, builder).run();
}

OpCount tree_op_count(const ExprTree &t) {
  OpCount c;
  switch (t.kind) {
  case ExprTree::Kind::Sum:
    c.add = t.children.size() - 1;
    break;
  case ExprTree::Kind::Product:
    c.mul = t.children.size() - 1;
    if (std::any_of(t.children.begin(), t.children.end(), is_minus_one)) {
      c.mul -= 1;
    }
    break;
  case ExprTree::Kind::Power:
    c.mul = t.exp - 1;
    break;
  case ExprTree::Kind::Atom:
  case ExprTree::Kind::Const:
    break;
  }
  for (const auto &child : t.children) {
    c += tree_op_count(child);
  }
  return c;
}

Residue eval_tree_mod_p(const ExprTree &t, const Assignment &assignment, Residue p) {
  switch (t.kind) {
  case ExprTree::Kind::Atom: {
    auto it = assignment.find(t.atom);
    if (it == assignment.end()) {
      throw EvalError("no value assigned to atom " + std::to_string(t.atom));
    }
    return it->second % p;
  }
  case ExprTree::Kind::Const:
    return coeff_mod(t.value, p);
  case ExprTree::Kind::Power:
    return pow_mod(eval_tree_mod_p(t.children[0], assignment, p), t.exp, p);
  case ExprTree::Kind::Sum: {
    Residue acc = 0;
    for (const auto &c : t.children) {
      acc = (acc + eval_tree_mod_p(c, assignment, p)) % p;
    }
    return acc;
  }
  case ExprTree::Kind::Product: {
    Residue acc = 1 % p;
    for (const auto &c : t.children) {
      acc = mul_mod(acc, eval_tree_mod_p(c, assignment, p), p);
    }
    return acc;
  }
  }
  return 0;
}

namespace {

void print(const ExprTree &t, const AtomTable &atoms, std::string &out) {
  switch (t.kind) {
  case ExprTree::Kind::Atom:
    out += atoms.text(t.atom);
    return;
  case ExprTree::Kind::Const:
    out += t.value.str();
    return;
  case ExprTree::Kind::Power: {
    const auto &base = t.children[0];
    const bool wrap = base.kind != ExprTree::Kind::Atom;
    if (wrap) {
      out += '(';
    }
    print(base, atoms, out);
    if (wrap) {
      out += ')';
    }
    out += '^';
    out += std::to_string(t.exp);
    return;
  }
  case ExprTree::Kind::Product: {
    bool first = true;
    for (const auto &c : t.children) {
      if (is_minus_one(c)) {
        out += '-';
        continue;
      }
      if (!first) {
        out += '*';
      }
      first = false;
      const bool wrap = c.kind == ExprTree::Kind::Sum;
      if (wrap) {
        out += '(';
      }
      print(c, atoms, out);
      if (wrap) {
        out += ')';
      }
    }
    return;
  }
  case ExprTree::Kind::Sum: {
    for (std::size_t i = 0; i < t.children.size(); ++i) {
      std::string part;
      print(t.children[i], atoms, part);
      if (i > 0) {
        if (part.front() == '-') {
          out += " - ";
          part.erase(0, 1);
        } else {
          out += " + ";
        }
      }
      out += part;
    }
    return;
  }
  }
}

} // namespace

std::string to_string(const ExprTree &t, const AtomTable &atoms) {
  std::string out;
  print(t, atoms, out);
  return out;
}

Scheme occurrence_order(const Expression &e) {
  std::vector<std::size_t> count(e.atoms().size(), 0);
  for (const auto &t : e.terms()) {
    for (const auto &f : t.factors) {
      ++count[f.atom];
    }
  }
  Scheme s;
  s.order = variables(e);
  std::stable_sort(s.order.begin(), s.order.end(),
                   [&](AtomId a, AtomId b) { return count[a] > count[b]; });
  return s;
}

} // namespace hornmcts
