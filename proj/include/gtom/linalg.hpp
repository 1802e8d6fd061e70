#pragma once

#include <optional>
#include <vector>

#include "gtom/rational.hpp"

// Exact dense linear algebra over a field scalar (no pivot thresholds).
namespace gtom::linalg {

template <class Scalar>
struct RowEchelon {
  Matrix<Scalar> reduced;
  std::vector<Eigen::Index> pivots;  // pivot column of each nonzero row
  Eigen::Index rank() const { return static_cast<Eigen::Index>(pivots.size()); }
};

/// Reduced row echelon form by Gauss-Jordan elimination.
template <class Derived>
RowEchelon<typename Derived::Scalar> rref(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  RowEchelon<Scalar> out{input.eval(), {}};
  Matrix<Scalar>& m = out.reduced;
  Eigen::Index row = 0;
  for (Eigen::Index col = 0; col < m.cols() && row < m.rows(); ++col) {
    Eigen::Index pivot = row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    m.row(pivot).swap(m.row(row));
    const Scalar inv = Scalar(1) / m(row, col);
    m.row(row) *= inv;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Scalar factor = m(r, col);
      m.row(r) -= factor * m.row(row);
    }
    out.pivots.push_back(col);
    ++row;
  }
  return out;
}

template <class Derived>
Eigen::Index rank(const Eigen::MatrixBase<Derived>& m) {
  return rref(m).rank();
}

/// Basis of the right null space, one vector per column.
template <class Derived>
Matrix<typename Derived::Scalar> kernel(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const RowEchelon<Scalar> e = rref(m);
  std::vector<bool> is_pivot(static_cast<std::size_t>(m.cols()), false);
  for (Eigen::Index c : e.pivots) is_pivot[static_cast<std::size_t>(c)] = true;
  Matrix<Scalar> basis(m.cols(), m.cols() - e.rank());
  basis.setZero();
  Eigen::Index k = 0;
  for (Eigen::Index free = 0; free < m.cols(); ++free) {
    if (is_pivot[static_cast<std::size_t>(free)]) continue;
    basis(free, k) = Scalar(1);
    for (Eigen::Index r = 0; r < e.rank(); ++r) basis(e.pivots[static_cast<std::size_t>(r)], k) = -e.reduced(r, free);
    ++k;
  }
  return basis;
}

/// Inverse of a square matrix, or nullopt when singular.
template <class Derived>
std::optional<Matrix<typename Derived::Scalar>> inverse(const Eigen::MatrixBase<Derived>& m) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index k = m.rows();
  Matrix<Scalar> aug(k, 2 * k);
  aug.leftCols(k) = m;
  aug.rightCols(k) = Matrix<Scalar>::Identity(k, k);
  const RowEchelon<Scalar> e = rref(aug);
  if (e.rank() < k || e.pivots.back() >= k) return std::nullopt;
  return Matrix<Scalar>(e.reduced.rightCols(k));
}

/// Unique solution of m x = b, or nullopt when inconsistent or underdetermined.
template <class DerivedA, class DerivedB>
std::optional<Vector<typename DerivedA::Scalar>> solve_unique(const Eigen::MatrixBase<DerivedA>& m,
                                                               const Eigen::MatrixBase<DerivedB>& b) {
  using Scalar = typename DerivedA::Scalar;
  Matrix<Scalar> aug(m.rows(), m.cols() + 1);
  aug.leftCols(m.cols()) = m;
  aug.col(m.cols()) = b;
  const RowEchelon<Scalar> e = rref(aug);
  if (e.rank() != m.cols()) return std::nullopt;
  if (!e.pivots.empty() && e.pivots.back() == m.cols()) return std::nullopt;
  Vector<Scalar> x(m.cols());
  for (Eigen::Index r = 0; r < e.rank(); ++r) x(e.pivots[static_cast<std::size_t>(r)]) = e.reduced(r, m.cols());
  return x;
}

template <class Derived>
typename Derived::Scalar determinant(const Eigen::MatrixBase<Derived>& input) {
  using Scalar = typename Derived::Scalar;
  Matrix<Scalar> m = input.eval();
  Scalar det(1);
  const Eigen::Index k = m.rows();
  for (Eigen::Index col = 0; col < k; ++col) {
    Eigen::Index pivot = col;
    while (pivot < k && m(pivot, col) == 0) ++pivot;
    if (pivot == k) return Scalar(0);
    if (pivot != col) {
      m.row(pivot).swap(m.row(col));
      det = -det;
    }
    det *= m(col, col);
    for (Eigen::Index r = col + 1; r < k; ++r) {
      if (m(r, col) == 0) continue;
      const Scalar factor = m(r, col) / m(col, col);
      m.row(r) -= factor * m.row(col);
    }
  }
  return det;
}

}  // namespace gtom::linalg
