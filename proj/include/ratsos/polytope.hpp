#pragma once

// Exact Newton polytopes and the lattice points that index Gram matrices.

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "ratsos/polynomial.hpp"

namespace ratsos {

/// Half-space <normal, x> <= offset.
struct Facet {
  std::vector<long long> normal;
  long long offset = 0;

  bool satisfied_by(const std::vector<long long>& x) const;
  friend bool operator==(const Facet&, const Facet&) = default;
};

/// Convex hull of finitely many lattice points. A lower dimensional hull
/// carries each equality of its affine span as a pair of opposite facets.
struct LatticePolytope {
  std::size_t n = 0;
  std::vector<Monomial> vertices;
  std::vector<Facet> facets;

  bool contains(const std::vector<long long>& x) const;
  bool contains(const Monomial& m) const;
  /// Dimension of the affine hull.
  std::size_t dimension = 0;
};

/// Ordered set of exponent vectors (Gram basis), sorted by BasisOrder.
class SupportBasis {
 public:
  SupportBasis() = default;
  explicit SupportBasis(std::vector<Monomial> points);

  const std::vector<Monomial>& points() const { return points_; }
  std::size_t size() const { return points_.size(); }
  const Monomial& operator[](std::size_t i) const { return points_[i]; }
  std::optional<std::size_t> find(const Monomial& m) const;
  bool contains(const Monomial& m) const { return find(m).has_value(); }
  /// Number of variables (0 for an empty basis).
  std::size_t nvars() const { return points_.empty() ? 0 : points_.front().size(); }

  friend bool operator==(const SupportBasis& a, const SupportBasis& b) {
    return a.points_ == b.points_;
  }

 private:
  std::vector<Monomial> points_;
  std::map<std::vector<unsigned>, std::size_t> index_;
};

LatticePolytope convex_hull(const std::vector<Monomial>& points);
LatticePolytope newton_polytope(const Polynomial& f);
SupportBasis half_lattice_points(const LatticePolytope& P);
SupportBasis degree_simplex_points(std::size_t n, unsigned k);
/// Half lattice points of hull(supp f + N^n_{2D}) with degree <= ceil(deg f / 2) + D.
SupportBasis minkowski_half_support(const Polynomial& f, unsigned D);

}  // namespace ratsos
