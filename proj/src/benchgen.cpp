#include "hornmcts/benchgen.hpp"

#include <bit>
#include <set>
#include <unordered_map>

#include "hornmcts/rng.hpp"

namespace hornmcts {

SylvesterMatrix sylvester_matrix(std::size_t m, std::size_t n) {
  if (m < 1 || n < 1 || m + n > 12) {
    throw GeneratorError("resultant needs m, n >= 1 and m + n <= 12");
  }
  auto atoms = std::make_shared<AtomTable>();
  std::vector<AtomId> a(m + 1);
  std::vector<AtomId> b(n + 1);
  for (std::size_t i = 0; i <= m; ++i) {
    a[i] = atoms->intern("a_" + std::to_string(i));
  }
  for (std::size_t j = 0; j <= n; ++j) {
    b[j] = atoms->intern("b_" + std::to_string(j));
  }
  SylvesterMatrix s;
  s.m = m;
  s.n = n;
  s.atoms = atoms;
  const std::size_t size = m + n;
  s.entries.assign(size * size, std::nullopt);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t k = 0; k <= m; ++k) {
      s.entries[r * size + r + k] = a[m - k];
    }
  }
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t k = 0; k <= n; ++k) {
      s.entries[(n + r) * size + r + k] = b[n - k];
    }
  }
  return s;
}

namespace {

/// Laplace expansion along the top remaining row, memoized on the set of
/// columns still available. The row index is implied by the set's size.
class MinorExpander {
public:
  explicit MinorExpander(const SylvesterMatrix &s) : s_(s) {}

  Expression det(std::uint32_t columns) {
    const std::size_t size = s_.size();
    const auto remaining = static_cast<std::size_t>(std::popcount(columns));
    if (remaining == 0) {
      return Expression(s_.atoms, {Term{1, {}}});
    }
    if (auto it = memo_.find(columns); it != memo_.end()) {
      return it->second;
    }
    const std::size_t row = size - remaining;
    Expression acc(s_.atoms, {});
    int position = 0;
    for (std::size_t col = 0; col < size; ++col) {
      if ((columns & (1U << col)) == 0) {
        continue;
      }
      if (const auto &entry = s_.at(row, col)) {
        const Coeff sign = (position % 2 == 0) ? 1 : -1;
        acc = acc + det(columns & ~(1U << col)).times(sign, *entry, 1);
      }
      ++position;
    }
    memo_.emplace(columns, acc);
    return acc;
  }

private:
  const SylvesterMatrix &s_;
  std::unordered_map<std::uint32_t, Expression> memo_;
};

} // namespace

Expression resultant_expr(std::size_t m, std::size_t n) {
  const auto s = sylvester_matrix(m, n);
  MinorExpander expander(s);
  return expander.det((1U << s.size()) - 1);
}

Expression random_expr(const RandomExprParams &p) {
  if (p.n_vars == 0 || p.n_terms == 0 || p.max_exponent == 0 || p.coeff_range == 0) {
    throw GeneratorError("random expression parameters must be positive");
  }
  // distinct nonzero monomials available: (max_exponent+1)^n_vars - 1
  std::uint64_t capacity = 1;
  for (std::uint32_t v = 0; v < p.n_vars && capacity <= p.n_terms; ++v) {
    capacity *= static_cast<std::uint64_t>(p.max_exponent) + 1;
  }
  if (capacity - 1 < p.n_terms) {
    throw GeneratorError("more terms requested than distinct monomials exist");
  }
  auto atoms = std::make_shared<AtomTable>();
  for (std::uint32_t v = 1; v <= p.n_vars; ++v) {
    atoms->intern("x" + std::to_string(v));
  }
  SplitMix64 rng(p.seed);
  std::set<std::vector<std::uint32_t>> seen;
  std::vector<Term> terms;
  while (terms.size() < p.n_terms) {
    std::vector<std::uint32_t> exps(p.n_vars);
    bool nonzero = false;
    for (auto &e : exps) {
      e = static_cast<std::uint32_t>(rng.below(p.max_exponent + 1ULL));
      nonzero = nonzero || e > 0;
    }
    if (!nonzero || !seen.insert(exps).second) {
      continue;
    }
    const auto draw = static_cast<std::int64_t>(rng.below(2ULL * p.coeff_range));
    const std::int64_t range = p.coeff_range;
    const std::int64_t c = draw < range ? -(draw + 1) : draw - range + 1;
    Term t{Coeff(c), {}};
    for (std::uint32_t v = 0; v < p.n_vars; ++v) {
      if (exps[v] > 0) {
        t.factors.push_back({v, exps[v]});
      }
    }
    terms.push_back(std::move(t));
  }
  return Expression(std::move(atoms), std::move(terms));
}

RandomExprParams preset(std::string_view name) {
  if (name == "hep-like-15") {
    return {15, 200, 2, 20, 15};
  }
  if (name == "hep-like-22") {
    return {22, 300, 2, 20, 22};
  }
  throw GeneratorError("unknown preset '" + std::string(name) + "'");
}

std::vector<std::string_view> preset_names() { return {"hep-like-15", "hep-like-22"}; }

} // namespace hornmcts
