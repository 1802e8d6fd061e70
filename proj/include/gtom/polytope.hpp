#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "gtom/linalg.hpp"

namespace gtom {

template <class Scalar>
struct HullFacet {
  Vector<Scalar> normal;   // ambient coordinates; normal . x >= offset on the hull
  Scalar offset;
  std::vector<int> points;  // indices of the input points on the facet, ascending
};

/// Convex hull of a small point configuration by exhaustive hyperplane
/// enumeration. Points are the columns of the input matrix and must be
/// pairwise distinct; at most 64 points.
template <class Scalar>
class ConvexHull {
 public:
  explicit ConvexHull(Matrix<Scalar> points) : points_(std::move(points)) {
    if (points_.cols() == 0) throw std::invalid_argument("convex hull of no points");
    if (points_.cols() > 64) throw std::invalid_argument("convex hull limited to 64 points");
    Matrix<Scalar> diffs(points_.cols() - 1, points_.rows());
    for (Eigen::Index q = 1; q < points_.cols(); ++q) diffs.row(q - 1) = (points_.col(q) - points_.col(0)).transpose();
    coords_ = points_.cols() > 1 ? linalg::rref(diffs).pivots : std::vector<Eigen::Index>{};
    local_.resize(static_cast<Eigen::Index>(coords_.size()), points_.cols());
    for (std::size_t r = 0; r < coords_.size(); ++r) local_.row(static_cast<Eigen::Index>(r)) = points_.row(coords_[r]);
    enumerate_facets();
  }

  int dim() const { return static_cast<int>(coords_.size()); }
  int size() const { return static_cast<int>(points_.cols()); }
  const Matrix<Scalar>& points() const { return points_; }
  /// Ambient coordinates whose projection is injective on the affine hull.
  const std::vector<Eigen::Index>& coordinates() const { return coords_; }
  const Matrix<Scalar>& local() const { return local_; }
  const std::vector<HullFacet<Scalar>>& facets() const { return facets_; }

  /// Indices of the points that are vertices of the hull.
  std::vector<int> vertices() const {
    std::vector<int> out;
    for (int p = 0; p < size(); ++p) {
      if (closure(std::uint64_t{1} << p) == (std::uint64_t{1} << p)) out.push_back(p);
    }
    return out;
  }

  /// True iff the given point indices are exactly the points of some face.
  bool is_face(const std::vector<int>& subset) const {
    std::uint64_t mask = 0;
    for (int p : subset) mask |= std::uint64_t{1} << p;
    if (mask == 0) return false;
    return closure(mask) == mask;
  }

  /// Pulling triangulation from the lowest-index point, as index sets.
  std::vector<std::vector<int>> triangulation() const {
    std::vector<int> all(static_cast<std::size_t>(size()));
    for (int p = 0; p < size(); ++p) all[static_cast<std::size_t>(p)] = p;
    return triangulate(all);
  }

 private:
  // Smallest face containing the given points, as a point mask.
  std::uint64_t closure(std::uint64_t mask) const {
    std::uint64_t out = size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << size()) - 1;
    for (const auto& f : facets_) {
      std::uint64_t fm = 0;
      for (int p : f.points) fm |= std::uint64_t{1} << p;
      if ((mask & ~fm) == 0) out &= fm;
    }
    return out;
  }

  void enumerate_facets() {
    const int k = dim();
    if (k == 0) return;
    std::vector<std::uint64_t> found;
    std::vector<int> pick(static_cast<std::size_t>(k));
    for (int t = 0; t < k; ++t) pick[static_cast<std::size_t>(t)] = t;
    const int m = size();
    while (true) {
      std::uint64_t chosen = 0;
      for (int p : pick) chosen |= std::uint64_t{1} << p;
      const bool known = std::any_of(found.begin(), found.end(), [&](std::uint64_t f) { return (chosen & ~f) == 0; });
      if (!known) try_hyperplane(pick, found);
      int t = k - 1;
      while (t >= 0 && pick[static_cast<std::size_t>(t)] == m - k + t) --t;
      if (t < 0) break;
      ++pick[static_cast<std::size_t>(t)];
      for (int u = t + 1; u < k; ++u) pick[static_cast<std::size_t>(u)] = pick[static_cast<std::size_t>(u - 1)] + 1;
    }
    std::sort(facets_.begin(), facets_.end(), [](const auto& a, const auto& b) { return a.points < b.points; });
  }

  void try_hyperplane(const std::vector<int>& pick, std::vector<std::uint64_t>& found) {
    const int k = dim();
    Matrix<Scalar> sys(k, k + 1);
    for (int r = 0; r < k; ++r) {
      sys.row(r).head(k) = local_.col(pick[static_cast<std::size_t>(r)]).transpose();
      sys(r, k) = Scalar(-1);
    }
    const Matrix<Scalar> ker = linalg::kernel(sys);
    if (ker.cols() != 1) return;
    Vector<Scalar> a = ker.col(0).head(k);
    Scalar c = ker(k, 0);
    int sign = 0;
    std::uint64_t tight = 0;
    for (int q = 0; q < size(); ++q) {
      const Scalar s = a.dot(local_.col(q)) - c;
      if (s == 0) {
        tight |= std::uint64_t{1} << q;
        continue;
      }
      const int sq = s > 0 ? 1 : -1;
      if (sign == 0) sign = sq;
      if (sign != sq) return;
    }
    if (sign == 0) return;
    if (sign < 0) {
      a = -a;
      c = -c;
    }
    found.push_back(tight);
    HullFacet<Scalar> f;
    f.normal = Vector<Scalar>::Zero(points_.rows());
    for (std::size_t r = 0; r < coords_.size(); ++r) f.normal(coords_[r]) = a(static_cast<Eigen::Index>(r));
    f.offset = c;
    for (int q = 0; q < size(); ++q) {
      if ((tight >> q) & 1u) f.points.push_back(q);
    }
    facets_.push_back(std::move(f));
  }

  std::vector<std::vector<int>> triangulate(const std::vector<int>& subset) const {
    Matrix<Scalar> sub(points_.rows(), static_cast<Eigen::Index>(subset.size()));
    for (std::size_t q = 0; q < subset.size(); ++q) sub.col(static_cast<Eigen::Index>(q)) = points_.col(subset[q]);
    const ConvexHull<Scalar> hull(sub);
    if (hull.dim() == 0) return {{subset.front()}};
    std::vector<std::vector<int>> out;
    for (const auto& f : hull.facets()) {
      if (f.points.front() == 0) continue;  // facet through the apex
      std::vector<int> face;
      for (int q : f.points) face.push_back(subset[static_cast<std::size_t>(q)]);
      for (auto simplex : triangulate(face)) {
        simplex.insert(simplex.begin(), subset.front());
        out.push_back(std::move(simplex));
      }
    }
    return out;
  }

  Matrix<Scalar> points_;
  std::vector<Eigen::Index> coords_;
  Matrix<Scalar> local_;
  std::vector<HullFacet<Scalar>> facets_;
};

/// Euclidean volume of the convex hull of full-dimensional points, exact.
template <class Scalar>
Scalar volume(const Matrix<Scalar>& points) {
  const ConvexHull<Scalar> hull(points);
  const auto k = points.rows();
  if (hull.dim() != k) throw std::invalid_argument("volume needs a full-dimensional point set");
  Scalar factorial(1);
  for (Eigen::Index t = 2; t <= k; ++t) factorial *= Scalar(static_cast<long>(t));
  Scalar total(0);
  for (const auto& simplex : hull.triangulation()) {
    Matrix<Scalar> edges(k, k);
    for (Eigen::Index t = 1; t <= k; ++t) {
      edges.col(t - 1) = points.col(simplex[static_cast<std::size_t>(t)]) - points.col(simplex[0]);
    }
    Scalar det = linalg::determinant(edges);
    total += det < 0 ? Scalar(-det) : det;
  }
  return total / factorial;
}

/// Column-wise deduplication, keeping the lexicographically sorted order.
template <class Scalar>
Matrix<Scalar> unique_columns(const std::vector<Vector<Scalar>>& cols, Eigen::Index rows) {
  auto less = [](const Vector<Scalar>& a, const Vector<Scalar>& b) {
    return std::lexicographical_compare(a.data(), a.data() + a.size(), b.data(), b.data() + b.size());
  };
  std::vector<Vector<Scalar>> sorted(cols);
  std::sort(sorted.begin(), sorted.end(), less);
  sorted.erase(std::unique(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return a == b; }),
               sorted.end());
  Matrix<Scalar> out(rows, static_cast<Eigen::Index>(sorted.size()));
  for (std::size_t q = 0; q < sorted.size(); ++q) out.col(static_cast<Eigen::Index>(q)) = sorted[q];
  return out;
}

}  // namespace gtom
