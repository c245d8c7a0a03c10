#pragma once

// Horner construction shared by the tree builder (horner.cpp) and the direct
// DAG builder used when scoring schemes (cse.cpp). A Builder provides:
//
//   Handle atom(AtomId);
//   Handle constant(std::uint32_t term_index);   // coefficient of that term
//   Handle power(Handle base, std::uint32_t exp);
//   Handle product(std::vector<Handle>);
//   Handle sum(std::vector<Handle>);
//   Handle unit();                               // the constant 1
//   Handle zero();                               // the zero expression

#include <algorithm>
#include <span>
#include <utility>
#include <vector>

#include "hornmcts/expr.hpp"

namespace hornmcts::detail {

template <class Builder> class HornerKernel {
public:
  using Handle = typename Builder::Handle;

  HornerKernel(const Expression &e, std::span<const AtomId> order, Builder &builder)
      : e_(e), builder_(builder) {
    columns_ = variables(e);
    std::vector<std::uint32_t> col_of_atom(e.atoms().size(), UINT32_MAX);
    for (std::uint32_t c = 0; c < columns_.size(); ++c) {
      col_of_atom[columns_[c]] = c;
    }
    order_cols_.reserve(order.size());
    for (AtomId a : order) {
      order_cols_.push_back(col_of_atom.at(a));
    }
    width_ = columns_.size();
    exps_.assign(e.size() * width_, 0);
    for (std::size_t r = 0; r < e.size(); ++r) {
      for (const auto &f : e.terms()[r].factors) {
        exps_[r * width_ + col_of_atom[f.atom]] = f.exp;
      }
    }
  }

  /// Single use: the kernel consumes its exponent table.
  Handle run() {
    if (e_.is_zero()) {
      return builder_.zero();
    }
    std::vector<std::uint32_t> all(e_.size());
    for (std::uint32_t i = 0; i < all.size(); ++i) {
      all[i] = i;
    }
    return build(std::move(all), 0);
  }

private:
  std::uint32_t &exp_at(std::uint32_t row, std::uint32_t col) { return exps_[row * width_ + col]; }

  Handle build(std::vector<std::uint32_t> rows, std::size_t k) {
    std::vector<std::uint32_t> without;
    std::vector<std::uint32_t> with;
    for (; k < order_cols_.size(); ++k) {
      const auto col = order_cols_[k];
      without.clear();
      with.clear();
      for (auto r : rows) {
        (exp_at(r, col) == 0 ? without : with).push_back(r);
      }
      if (!with.empty()) {
        break;
      }
    }
    if (k == order_cols_.size()) {
      std::vector<Handle> leaves;
      leaves.reserve(rows.size());
      for (auto r : rows) {
        leaves.push_back(leaf(r));
      }
      return builder_.sum(std::move(leaves));
    }

    // greatest common monomial of `with` over the scheme variables still in play
    std::vector<std::pair<AtomId, std::uint32_t>> common;
    for (std::size_t q = k; q < order_cols_.size(); ++q) {
      const auto col = order_cols_[q];
      std::uint32_t m = UINT32_MAX;
      for (auto r : with) {
        m = std::min(m, exp_at(r, col));
      }
      if (m > 0) {
        for (auto r : with) {
          exp_at(r, col) -= m;
        }
        common.emplace_back(columns_[col], m);
      }
    }
    std::sort(common.begin(), common.end());

    std::vector<Handle> factors;
    factors.reserve(common.size() + 1);
    for (const auto &[atom, m] : common) {
      factors.push_back(builder_.power(builder_.atom(atom), m));
    }
    factors.push_back(build(std::move(with), k));
    Handle extracted = builder_.product(std::move(factors));
    if (without.empty()) {
      return extracted;
    }
    Handle rest = build(std::move(without), k + 1);
    return builder_.sum({std::move(rest), std::move(extracted)});
  }

  Handle leaf(std::uint32_t row) {
    std::vector<Handle> factors;
    const auto &coeff = e_.terms()[row].coeff;
    if (coeff != 1) {
      factors.push_back(builder_.constant(row));
    }
    for (std::uint32_t c = 0; c < width_; ++c) {
      if (const auto m = exp_at(row, c); m > 0) {
        factors.push_back(builder_.power(builder_.atom(columns_[c]), m));
      }
    }
    if (factors.empty()) {
      return builder_.unit();
    }
    return builder_.product(std::move(factors));
  }

  const Expression &e_;
  Builder &builder_;
  std::vector<AtomId> columns_;
  std::vector<std::uint32_t> order_cols_;
  std::size_t width_ = 0;
  std::vector<std::uint32_t> exps_;
};

} // namespace hornmcts::detail
