#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

#include "hornmcts/expr.hpp"

namespace hornmcts {

class GeneratorError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// (m+n) x (m+n) Sylvester matrix of sum a_i x^i (degree m) and sum b_j x^j
/// (degree n). Entries are single atoms or zero. Row r < n holds a_m..a_0
/// starting at column r; row n+r holds b_n..b_0 starting at column r.
struct SylvesterMatrix {
  std::size_t m = 0;
  std::size_t n = 0;
  std::shared_ptr<const AtomTable> atoms; // a_0..a_m, b_0..b_n
  std::vector<std::optional<AtomId>> entries; // row-major, nullopt for zero

  std::size_t size() const { return m + n; }
  const std::optional<AtomId> &at(std::size_t row, std::size_t col) const {
    return entries[row * size() + col];
  }
};

SylvesterMatrix sylvester_matrix(std::size_t m, std::size_t n);

/// res(m, n): the Sylvester determinant expanded over the m+n+2 coefficient
/// atoms. Requires m, n >= 1 and m + n <= 12.
Expression resultant_expr(std::size_t m, std::size_t n);

struct RandomExprParams {
  std::uint32_t n_vars = 5;
  std::uint32_t n_terms = 30;
  std::uint32_t max_exponent = 3;
  std::uint32_t coeff_range = 10;
  std::uint64_t seed = 0;
};

/// n_terms distinct monomials over x1..x<n_vars>, exponents uniform in
/// [0, max_exponent] (the all-zero monomial is rejected), coefficients uniform
/// in [-coeff_range, coeff_range] \ {0}. Deterministic in the seed.
Expression random_expr(const RandomExprParams &p);

/// Named stand-ins for large physics expressions: "hep-like-15", "hep-like-22".
RandomExprParams preset(std::string_view name);
std::vector<std::string_view> preset_names();

} // namespace hornmcts
