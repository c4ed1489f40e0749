#pragma once

// Exact integer and rational linear algebra over Eigen dense matrices.
//
// Everything here is templated on the scalar so the same code runs on
// std::int64_t (tests, small oracles) and bsset::Integer (production paths).

#include <cstdlib>
#include <optional>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "bsset/errors.hpp"
#include "bsset/exact.hpp"

namespace bsset {

namespace detail {

template <class Scalar>
Scalar magnitude(const Scalar& x) {
  using std::abs;
  return abs(x);
}

template <class Derived>
bool find_smallest_nonzero(const Eigen::MatrixBase<Derived>& m, Eigen::Index from, Eigen::Index& row,
                           Eigen::Index& col) {
  using Scalar = typename Derived::Scalar;
  bool found = false;
  Scalar best{};
  for (Eigen::Index j = from; j < m.cols(); ++j) {
    for (Eigen::Index i = from; i < m.rows(); ++i) {
      if (m(i, j) == Scalar(0)) continue;
      Scalar a = magnitude(m(i, j));
      if (!found || a < best) {
        best = a;
        row = i;
        col = j;
        found = true;
      }
    }
  }
  return found;
}

}  // namespace detail

enum class Transforms { none, both };

// D = U * M * V with U, V unimodular and D diagonal, d_1 | d_2 | ... .
// U and V are left empty when transforms are not requested.
template <class Scalar>
struct SmithDecomposition {
  Matrix<Scalar> U;
  Matrix<Scalar> D;
  Matrix<Scalar> V;
  std::vector<Scalar> divisors;  // nonzero diagonal entries, all positive

  Eigen::Index rank() const { return static_cast<Eigen::Index>(divisors.size()); }
};

// Smith normal form by greedy smallest-nonzero-entry pivoting.
template <class Derived>
SmithDecomposition<typename Derived::Scalar> smith_normal_form(const Eigen::MatrixBase<Derived>& m,
                                                               Transforms transforms = Transforms::both) {
  using Scalar = typename Derived::Scalar;
  const bool track = transforms == Transforms::both;
  const Eigen::Index rows = m.rows();
  const Eigen::Index cols = m.cols();

  SmithDecomposition<Scalar> out;
  out.D = m;
  Matrix<Scalar>& D = out.D;
  if (track) {
    out.U = Matrix<Scalar>::Identity(rows, rows);
    out.V = Matrix<Scalar>::Identity(cols, cols);
  }

  auto swap_rows = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.row(a).swap(D.row(b));
    if (track) out.U.row(a).swap(out.U.row(b));
  };
  auto swap_cols = [&](Eigen::Index a, Eigen::Index b) {
    if (a == b) return;
    D.col(a).swap(D.col(b));
    if (track) out.V.col(a).swap(out.V.col(b));
  };
  // row a -= q * row b
  auto sub_row = [&](Eigen::Index a, Eigen::Index b, const Scalar& q) {
    D.row(a) -= q * D.row(b);
    if (track) out.U.row(a) -= q * out.U.row(b);
  };
  auto sub_col = [&](Eigen::Index a, Eigen::Index b, const Scalar& q) {
    D.col(a) -= q * D.col(b);
    if (track) out.V.col(a) -= q * out.V.col(b);
  };

  const Eigen::Index diag = std::min(rows, cols);
  for (Eigen::Index t = 0; t < diag; ++t) {
    Eigen::Index pr = t, pc = t;
    if (!detail::find_smallest_nonzero(D, t, pr, pc)) break;
    swap_rows(t, pr);
    swap_cols(t, pc);

    for (;;) {
      bool dirty = false;
      for (Eigen::Index i = t + 1; i < rows; ++i) {
        if (D(i, t) == Scalar(0)) continue;
        sub_row(i, t, Scalar(D(i, t) / D(t, t)));
        if (D(i, t) != Scalar(0)) dirty = true;
      }
      for (Eigen::Index j = t + 1; j < cols; ++j) {
        if (D(t, j) == Scalar(0)) continue;
        sub_col(j, t, Scalar(D(t, j) / D(t, t)));
        if (D(t, j) != Scalar(0)) dirty = true;
      }
      if (dirty) {
        // A remainder smaller than the pivot survives; move it to the pivot.
        Eigen::Index best_r = t, best_c = t;
        Scalar best = detail::magnitude(D(t, t));
        for (Eigen::Index i = t + 1; i < rows; ++i)
          if (D(i, t) != Scalar(0) && detail::magnitude(D(i, t)) < best) {
            best = detail::magnitude(D(i, t));
            best_r = i;
            best_c = t;
          }
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (D(t, j) != Scalar(0) && detail::magnitude(D(t, j)) < best) {
            best = detail::magnitude(D(t, j));
            best_r = t;
            best_c = j;
          }
        swap_rows(t, best_r);
        swap_cols(t, best_c);
        continue;
      }
      // Row and column are clear; enforce divisibility on the trailing block.
      Eigen::Index bad = -1;
      for (Eigen::Index i = t + 1; i < rows && bad < 0; ++i)
        for (Eigen::Index j = t + 1; j < cols; ++j)
          if (D(i, j) % D(t, t) != Scalar(0)) {
            bad = i;
            break;
          }
      if (bad < 0) break;
      sub_row(t, bad, Scalar(-1));
    }
    if (D(t, t) < Scalar(0)) {
      D.row(t) = -D.row(t);
      if (track) out.U.row(t) = -out.U.row(t);
    }
    out.divisors.push_back(D(t, t));
  }
  return out;
}

template <class Derived>
std::vector<typename Derived::Scalar> elementary_divisors(const Eigen::MatrixBase<Derived>& m) {
  return smith_normal_form(m, Transforms::none).divisors;
}

template <class Derived>
Eigen::Index integer_rank(const Eigen::MatrixBase<Derived>& m) {
  return smith_normal_form(m, Transforms::none).rank();
}

// Columns form a Z-basis of the integral kernel of m. The integral kernel is
// saturated, so these columns are also a basis over every Z_(p).
template <class Derived>
Matrix<typename Derived::Scalar> integral_kernel_basis(const Eigen::MatrixBase<Derived>& m) {
  auto snf = smith_normal_form(m, Transforms::both);
  const Eigen::Index r = snf.rank();
  return snf.V.rightCols(m.cols() - r);
}

// Rank over Q by fraction-based Gaussian elimination.
inline Eigen::Index rational_rank(RatMatrix a) {
  Eigen::Index rank = 0;
  for (Eigen::Index c = 0; c < a.cols() && rank < a.rows(); ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = rank; r < a.rows(); ++r)
      if (!a(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    a.row(rank).swap(a.row(piv));
    for (Eigen::Index r = rank + 1; r < a.rows(); ++r) {
      if (a(r, c).is_zero()) continue;
      Rational f = a(r, c) / a(rank, c);
      a.row(r) -= f * a.row(rank);
    }
    ++rank;
  }
  return rank;
}

inline RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

// Solves basis * X = rhs exactly over Q where basis has full column rank.
// Returns nullopt when some column of rhs is not in the column span.
inline std::optional<RatMatrix> solve_in_span(const RatMatrix& basis, const RatMatrix& rhs) {
  const Eigen::Index n = basis.rows();
  const Eigen::Index k = basis.cols();
  RatMatrix aug(n, k + rhs.cols());
  aug << basis, rhs;

  std::vector<Eigen::Index> pivot_row(k, -1);
  Eigen::Index row = 0;
  for (Eigen::Index c = 0; c < k; ++c) {
    Eigen::Index piv = -1;
    for (Eigen::Index r = row; r < n; ++r)
      if (!aug(r, c).is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw InternalError("solve_in_span: basis is not of full column rank");
    aug.row(row).swap(aug.row(piv));
    aug.row(row) /= Rational(aug(row, c));
    for (Eigen::Index r = 0; r < n; ++r) {
      if (r == row || aug(r, c).is_zero()) continue;
      Rational f = aug(r, c);
      aug.row(r) -= f * aug.row(row);
    }
    pivot_row[c] = row++;
  }
  for (Eigen::Index r = row; r < n; ++r)
    for (Eigen::Index j = k; j < aug.cols(); ++j)
      if (!aug(r, j).is_zero()) return std::nullopt;

  RatMatrix x(k, rhs.cols());
  for (Eigen::Index c = 0; c < k; ++c) x.row(c) = aug.row(pivot_row[c]).tail(rhs.cols());
  return x;
}

}  // namespace bsset
