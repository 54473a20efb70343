#include <gtest/gtest.h>

#include <random>
#include <set>

#include "ratsos/errors.hpp"
#include "ratsos/polytope.hpp"

using namespace ratsos;

namespace {

using Pt = std::vector<long long>;

Pt to_pt(const Monomial& m) { return Pt(m.exp.begin(), m.exp.end()); }

// Brute-force hyperplanes through every d-subset of a full dimensional point
// set in dimension 2 or 3; a hyperplane is kept when all points lie on one side.
std::vector<std::pair<Pt, long long>> brute_facets(const std::vector<Pt>& pts) {
  std::vector<std::pair<Pt, long long>> out;
  const std::size_t d = pts.front().size();
  auto keep = [&](Pt a) {
    if (std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; })) return;
    for (int s = 0; s < 2; ++s) {
      long long b = std::numeric_limits<long long>::min();
      for (const auto& p : pts) {
        long long v = 0;
        for (std::size_t i = 0; i < d; ++i) v += a[i] * p[i];
        b = std::max(b, v);
      }
      // valid supporting hyperplane only if some d points are tight (true by construction)
      out.emplace_back(a, b);
      for (auto& x : a) x = -x;
    }
  };
  const std::size_t m = pts.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j) {
      Pt u(d);
      for (std::size_t c = 0; c < d; ++c) u[c] = pts[j][c] - pts[i][c];
      if (d == 2) {
        keep({-u[1], u[0]});
        continue;
      }
      for (std::size_t k = j + 1; k < m; ++k) {
        Pt v(d);
        for (std::size_t c = 0; c < d; ++c) v[c] = pts[k][c] - pts[i][c];
        keep({u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]});
      }
    }
  return out;
}

bool brute_inside(const std::vector<std::pair<Pt, long long>>& H, const Pt& x) {
  for (const auto& [a, b] : H) {
    long long v = 0;
    for (std::size_t i = 0; i < a.size(); ++i) v += a[i] * x[i];
    if (v > b) return false;
  }
  return true;
}

std::set<std::vector<unsigned>> as_set(const SupportBasis& B) {
  std::set<std::vector<unsigned>> s;
  for (const auto& p : B.points()) s.insert(p.exp);
  return s;
}

const char* kQuartic = "4*X1^4 + 4*X1^3*X2 - 7*X1^2*X2^2 - 2*X1*X2^3 + 10*X2^4";
const char* kMotzkin = "X3^6 + X1^4*X2^2 + X1^2*X2^4 - 3*X1^2*X2^2*X3^2";

}  // namespace

TEST(Polytope, QuarticSegment) {
  LatticePolytope P = newton_polytope(parse_polynomial(kQuartic, 2));
  EXPECT_EQ(P.dimension, 1u);
  ASSERT_EQ(P.vertices.size(), 2u);
  EXPECT_EQ(P.vertices[0], (Monomial{4, 0}));
  EXPECT_EQ(P.vertices[1], (Monomial{0, 4}));
  SupportBasis Q = half_lattice_points(P);
  ASSERT_EQ(Q.size(), 3u);
  EXPECT_EQ(Q[0], (Monomial{2, 0}));
  EXPECT_EQ(Q[1], (Monomial{1, 1}));
  EXPECT_EQ(Q[2], (Monomial{0, 2}));
}

TEST(Polytope, ConstantIsAPoint) {
  LatticePolytope P = newton_polytope(parse_polynomial("7", 2));
  EXPECT_EQ(P.dimension, 0u);
  ASSERT_EQ(P.vertices.size(), 1u);
  SupportBasis Q = half_lattice_points(P);
  ASSERT_EQ(Q.size(), 1u);
  EXPECT_EQ(Q[0], (Monomial{0, 0}));
}

TEST(Polytope, ZeroPolynomialRejected) {
  EXPECT_THROW(newton_polytope(Polynomial(2)), Error);
}

TEST(Polytope, Motzkin) {
  Polynomial f = parse_polynomial(kMotzkin, 3);
  LatticePolytope P = newton_polytope(f);
  EXPECT_EQ(P.dimension, 2u);
  // (2,2,2) is the barycenter of the other three support points
  std::set<std::vector<unsigned>> verts;
  for (const auto& v : P.vertices) verts.insert(v.exp);
  EXPECT_EQ(verts, (std::set<std::vector<unsigned>>{{0, 0, 6}, {4, 2, 0}, {2, 4, 0}}));
  for (const auto& m : f.support()) EXPECT_TRUE(P.contains(m));
  EXPECT_EQ(as_set(half_lattice_points(P)),
            (std::set<std::vector<unsigned>>{{0, 0, 3}, {2, 1, 0}, {1, 2, 0}, {1, 1, 1}}));
}

TEST(Polytope, DegreeSimplexCounts) {
  SupportBasis a = degree_simplex_points(2, 1);
  ASSERT_EQ(a.size(), 3u);
  EXPECT_EQ(a[0], (Monomial{0, 0}));
  EXPECT_EQ(a[1], (Monomial{1, 0}));
  EXPECT_EQ(a[2], (Monomial{0, 1}));
  EXPECT_EQ(degree_simplex_points(2, 2).size(), 6u);
  EXPECT_EQ(degree_simplex_points(3, 4).size(), 35u);
}

TEST(Polytope, MinkowskiHalfSupport) {
  SupportBasis q1 = minkowski_half_support(parse_polynomial("X1^2", 1), 1);
  EXPECT_EQ(as_set(q1), (std::set<std::vector<unsigned>>{{1}, {2}}));
  Polynomial f = parse_polynomial(kQuartic, 2);
  EXPECT_EQ(minkowski_half_support(f, 0), half_lattice_points(newton_polytope(f)));
}

TEST(Polytope, MinkowskiReznickExampleMatchesBruteForce) {
  Polynomial f = parse_polynomial(
      "1048577/1048576*X3^6 + 1048577/1048576*X1^4*X2^2 + 1048577/1048576*X1^2*X2^4 - 3*X1^2*X2^2*X3^2",
      3);
  std::vector<Pt> pts;
  SupportBasis simplex = degree_simplex_points(3, 2);
  for (const auto& s : f.support())
    for (const auto& a : simplex.points()) pts.push_back(to_pt(s + a));
  auto H = brute_facets(pts);
  std::set<std::vector<unsigned>> expect;
  for (unsigned a = 0; a <= 4; ++a)
    for (unsigned b = 0; b <= 4; ++b)
      for (unsigned c = 0; c <= 4; ++c)
        if (a + b + c <= 4 && brute_inside(H, {2LL * a, 2LL * b, 2LL * c})) expect.insert({a, b, c});
  SupportBasis Q = minkowski_half_support(f, 1);
  EXPECT_EQ(as_set(Q), expect);
  EXPECT_EQ(Q.size(), 13u);
}

TEST(PolytopeProperty, MatchesBruteForceOnRandomSets) {
  std::mt19937 rng(7);
  for (int it = 0; it < 60; ++it) {
    const std::size_t n = 2 + it % 2;
    std::uniform_int_distribution<int> coord(0, 8);
    std::vector<Monomial> pts;
    std::vector<Pt> raw;
    for (int k = 0; k < 5 + it % 6; ++k) {
      Monomial m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<unsigned>(coord(rng));
      pts.push_back(m);
      raw.push_back(to_pt(m));
    }
    LatticePolytope P = convex_hull(pts);
    if (P.dimension != n) continue;
    auto H = brute_facets(raw);
    for (const auto& p : pts) EXPECT_TRUE(P.contains(p));
    // vertices: not inside the hull of the remaining points
    for (std::size_t i = 0; i < pts.size(); ++i) {
      std::vector<Monomial> rest;
      std::vector<Pt> rest_raw;
      for (std::size_t j = 0; j < pts.size(); ++j)
        if (!(pts[j] == pts[i])) {
          rest.push_back(pts[j]);
          rest_raw.push_back(raw[j]);
        }
      bool is_vertex = std::find(P.vertices.begin(), P.vertices.end(), pts[i]) != P.vertices.end();
      LatticePolytope R = convex_hull(rest);
      bool inside_rest = R.contains(pts[i]);
      EXPECT_EQ(is_vertex, !inside_rest);
    }
    SupportBasis Q = half_lattice_points(P);
    std::set<std::vector<unsigned>> expect;
    Monomial q(n);
    for (unsigned a = 0; a <= 4; ++a)
      for (unsigned b = 0; b <= 4; ++b)
        for (unsigned c = 0; c <= (n == 3 ? 4u : 0u); ++c) {
          Pt twice = {2LL * a, 2LL * b};
          std::vector<unsigned> e = {a, b};
          if (n == 3) {
            twice.push_back(2LL * c);
            e.push_back(c);
          }
          if (brute_inside(H, twice)) expect.insert(e);
        }
    EXPECT_EQ(as_set(Q), expect);
    // every facet is tight at some vertex
    for (const auto& F : P.facets) {
      bool tight = false;
      for (const auto& v : P.vertices) {
        long long s = 0;
        for (std::size_t i = 0; i < n; ++i) s += F.normal[i] * static_cast<long long>(v[i]);
        tight |= s == F.offset;
      }
      EXPECT_TRUE(tight);
    }
  }
}

TEST(PolytopeProperty, HalfLatticeMonotone) {
  std::mt19937 rng(99);
  std::uniform_int_distribution<int> coord(0, 6);
  for (int it = 0; it < 40; ++it) {
    std::vector<Monomial> pts;
    for (int k = 0; k < 4; ++k) pts.push_back(Monomial{unsigned(coord(rng)), unsigned(coord(rng))});
    auto small = as_set(half_lattice_points(convex_hull(pts)));
    pts.push_back(Monomial{unsigned(coord(rng)), unsigned(coord(rng))});
    auto big = as_set(half_lattice_points(convex_hull(pts)));
    for (const auto& q : small) EXPECT_TRUE(big.count(q));
  }
}
