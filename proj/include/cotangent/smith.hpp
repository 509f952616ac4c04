#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cotangent/int_matrix.hpp"

namespace cotangent {

/// Smith normal form U * M * V = S with U, V unimodular.
///
/// `U_inverse` is maintained alongside U so callers can move between the
/// original and the diagonal coordinates without a second inversion.
struct SmithForm {
  IntMatrix S;
  IntMatrix U;
  IntMatrix V;
  IntMatrix U_inverse;
  std::size_t rank = 0;

  /// The first min(rows, cols) diagonal entries of S.
  std::vector<Integer> diagonal() const {
    std::vector<Integer> d;
    for (std::size_t i = 0; i < std::min(S.rows(), S.cols()); ++i) d.push_back(S(i, i));
    return d;
  }
};

namespace detail {

inline Integer abs_value(const Integer& x) {
  Integer a;
  mpz_abs(a.get_mpz_t(), x.get_mpz_t());
  return a;
}

struct SmithState {
  IntMatrix S, U, V, Uinv;

  void swap_rows(std::size_t a, std::size_t b) {
    S.swap_rows(a, b);
    U.swap_rows(a, b);
    Uinv.swap_cols(a, b);
  }
  void swap_cols(std::size_t a, std::size_t b) {
    S.swap_cols(a, b);
    V.swap_cols(a, b);
  }
  // row[target] += factor * row[source]; the inverse picks up col[source] -= factor * col[target].
  void add_row(std::size_t target, std::size_t source, const Integer& factor) {
    S.add_row_multiple(target, source, factor);
    U.add_row_multiple(target, source, factor);
    Uinv.add_col_multiple(source, target, -factor);
  }
  void add_col(std::size_t target, std::size_t source, const Integer& factor) {
    S.add_col_multiple(target, source, factor);
    V.add_col_multiple(target, source, factor);
  }
  void negate_row(std::size_t i) {
    S.negate_row(i);
    U.negate_row(i);
    Uinv.negate_col(i);
  }
};

// Smallest nonzero |entry| among the candidates, ties broken by lowest (row, col).
template <class Candidates>
std::optional<std::pair<std::size_t, std::size_t>> pick_pivot(const IntMatrix& s, Candidates&& each) {
  std::optional<std::pair<std::size_t, std::size_t>> best;
  Integer best_abs;
  each([&](std::size_t i, std::size_t j) {
    const Integer& x = s(i, j);
    if (x == 0) return;
    Integer a = abs_value(x);
    if (!best || a < best_abs || (a == best_abs && std::make_pair(i, j) < *best)) {
      best = std::make_pair(i, j);
      best_abs = a;
    }
  });
  return best;
}

}  // namespace detail

inline SmithForm smith_normal_form(const IntMatrix& m) {
  const std::size_t rows = m.rows(), cols = m.cols();
  detail::SmithState st{m, IntMatrix::identity(rows), IntMatrix::identity(cols),
                        IntMatrix::identity(rows)};
  std::size_t t = 0;
  for (; t < std::min(rows, cols); ++t) {
    auto pivot = detail::pick_pivot(st.S, [&](auto&& visit) {
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j) visit(i, j);
    });
    if (!pivot) break;
    st.swap_rows(t, pivot->first);
    st.swap_cols(t, pivot->second);

    for (;;) {
      for (std::size_t i = t + 1; i < rows; ++i)
        if (st.S(i, t) != 0) st.add_row(i, t, -Integer(st.S(i, t) / st.S(t, t)));
      for (std::size_t j = t + 1; j < cols; ++j)
        if (st.S(t, j) != 0) st.add_col(j, t, -Integer(st.S(t, j) / st.S(t, t)));

      auto smaller = detail::pick_pivot(st.S, [&](auto&& visit) {
        for (std::size_t i = t + 1; i < rows; ++i) visit(i, t);
        for (std::size_t j = t + 1; j < cols; ++j) visit(t, j);
      });
      if (smaller) {
        st.swap_rows(t, smaller->first);
        st.swap_cols(t, smaller->second);
        continue;
      }

      // Row and column are clear; enforce divisibility of the trailing block.
      std::optional<std::size_t> offending_row;
      for (std::size_t i = t + 1; i < rows && !offending_row; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (mpz_divisible_p(st.S(i, j).get_mpz_t(), st.S(t, t).get_mpz_t()) == 0) {
            offending_row = i;
            break;
          }
      if (!offending_row) break;
      st.add_row(t, *offending_row, 1);
    }
    if (st.S(t, t) < 0) st.negate_row(t);
  }
  return SmithForm{std::move(st.S), std::move(st.U), std::move(st.V), std::move(st.Uinv), t};
}

/// Basis of the integer kernel {v : M v = 0}, as columns.
inline IntMatrix integer_kernel(const IntMatrix& m) {
  SmithForm snf = smith_normal_form(m);
  return snf.V.columns(snf.rank, m.cols());
}

/// An integer solution of M z = b, if one exists.
inline std::optional<IntVector> solve_integer(const IntMatrix& m, const IntVector& b) {
  if (b.size() != m.rows()) throw ShapeMismatch("solve_integer: right-hand side length mismatch");
  SmithForm snf = smith_normal_form(m);
  IntVector ub = snf.U * b;
  IntVector w = zero_vector(m.cols());
  for (std::size_t i = 0; i < ub.size(); ++i) {
    if (i < snf.rank) {
      if (mpz_divisible_p(ub[i].get_mpz_t(), snf.S(i, i).get_mpz_t()) == 0) return std::nullopt;
      w[i] = ub[i] / snf.S(i, i);
    } else if (ub[i] != 0) {
      return std::nullopt;
    }
  }
  return snf.V * w;
}

}  // namespace cotangent
