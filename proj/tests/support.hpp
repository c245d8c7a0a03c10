#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "hornmcts/benchgen.hpp"
#include "hornmcts/horner.hpp"
#include "hornmcts/rng.hpp"

namespace hornmcts::testing {

inline constexpr Residue kPrime = 2147483647; // 2^31 - 1

inline Assignment random_point(const Expression &e, SplitMix64 &rng) {
  Assignment a;
  for (AtomId id = 0; id < e.atoms().size(); ++id) {
    a[id] = rng.below(kPrime);
  }
  return a;
}

/// Small random expression whose shape (vars, terms, exponents) is itself drawn
/// from rng, so property tests cover sparse and dense cases.
inline Expression random_small_expr(SplitMix64 &rng) {
  RandomExprParams p;
  p.n_vars = 1 + static_cast<std::uint32_t>(rng.below(5));
  p.max_exponent = 1 + static_cast<std::uint32_t>(rng.below(4));
  std::uint64_t capacity = 1;
  for (std::uint32_t v = 0; v < p.n_vars; ++v) {
    capacity *= p.max_exponent + 1;
  }
  p.n_terms = 1 + static_cast<std::uint32_t>(rng.below(std::min<std::uint64_t>(capacity - 1, 25)));
  p.coeff_range = 1 + static_cast<std::uint32_t>(rng.below(9));
  p.seed = rng.next();
  return random_expr(p);
}

/// A random subset of the variables in random order (possibly empty).
inline Scheme random_scheme(const Expression &e, SplitMix64 &rng) {
  Scheme s;
  s.order = variables(e);
  for (std::size_t i = s.order.size(); i > 1; --i) {
    std::swap(s.order[i - 1], s.order[rng.below(i)]);
  }
  s.order.resize(rng.below(s.order.size() + 1));
  s.direction = rng.below(2) == 0 ? Direction::Forward : Direction::Backward;
  return s;
}

/// Coefficients (mod p, ascending degree) of a random degree-d polynomial
/// with root r: (x - r) * g(x), g random of degree d-1.
inline std::vector<Residue> with_root(std::size_t d, Residue r, SplitMix64 &rng) {
  std::vector<Residue> g(d);
  for (auto &c : g) {
    c = rng.below(kPrime);
  }
  g.back() = 1 + rng.below(kPrime - 1);
  std::vector<Residue> f(d + 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    f[i + 1] = (f[i + 1] + g[i]) % kPrime;
    f[i] = (f[i] + mul_mod(kPrime - r, g[i], kPrime)) % kPrime;
  }
  return f;
}

inline Assignment coefficients(const Expression &res, std::size_t m, std::size_t n, const std::vector<Residue> &f,
                               const std::vector<Residue> &h) {
  Assignment a;
  for (std::size_t i = 0; i <= m; ++i) {
    a[*res.atoms().find("a_" + std::to_string(i))] = f[i];
  }
  for (std::size_t j = 0; j <= n; ++j) {
    a[*res.atoms().find("b_" + std::to_string(j))] = h[j];
  }
  return a;
}

} // namespace hornmcts::testing
