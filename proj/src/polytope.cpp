#include "ratsos/polytope.hpp"

#include <algorithm>
#include <boost/dynamic_bitset.hpp>
#include <functional>
#include <limits>
#include <set>

#include "ratsos/errors.hpp"

namespace ratsos {

bool Facet::satisfied_by(const std::vector<long long>& x) const {
  __int128 s = 0;
  for (std::size_t i = 0; i < normal.size(); ++i) s += static_cast<__int128>(normal[i]) * x[i];
  return s <= offset;
}

bool LatticePolytope::contains(const std::vector<long long>& x) const {
  if (x.size() != n) throw Error(Errc::dimension_mismatch, "point dimension differs from polytope");
  return std::all_of(facets.begin(), facets.end(), [&](const Facet& f) { return f.satisfied_by(x); });
}

bool LatticePolytope::contains(const Monomial& m) const {
  return contains(std::vector<long long>(m.exp.begin(), m.exp.end()));
}

SupportBasis::SupportBasis(std::vector<Monomial> points) : points_(std::move(points)) {
  std::sort(points_.begin(), points_.end(), BasisOrder{});
  points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
  for (std::size_t i = 0; i < points_.size(); ++i) index_.emplace(points_[i].exp, i);
}

std::optional<std::size_t> SupportBasis::find(const Monomial& m) const {
  auto it = index_.find(m.exp);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

namespace {

using IVec = std::vector<Integer>;

Integer dot(const IVec& a, const IVec& b) {
  Integer s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

void normalize(IVec& v) {
  Integer g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g > 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
}

long long to_ll(const Integer& z) {
  if (!z.fits_slong_p()) throw Error(Errc::invalid_argument, "facet coefficient overflow");
  return z.get_si();
}

// Reduced row echelon form of `rows` (in place); returns pivot columns.
std::vector<std::size_t> rref(std::vector<std::vector<Rational>>& rows, std::size_t ncols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < ncols && r < rows.size(); ++c) {
    std::size_t p = r;
    while (p < rows.size() && sgn(rows[p][c]) == 0) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[r]);
    Rational inv = 1 / rows[r][c];
    for (auto& x : rows[r]) x *= inv;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == r || sgn(rows[i][c]) == 0) continue;
      Rational factor = rows[i][c];
      for (std::size_t j = 0; j < ncols; ++j) rows[i][j] -= factor * rows[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  rows.resize(r);
  return pivots;
}

// Integer vector proportional to a rational vector.
IVec clear_denominators(const std::vector<Rational>& v) {
  Integer l = 1;
  for (const auto& x : v) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  IVec out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    Rational s = v[i] * l;
    out[i] = s.get_num();
  }
  normalize(out);
  return out;
}

struct Ray {
  IVec v;  // (a_1..a_k, b)
  boost::dynamic_bitset<> zero;
};

// Facets (a, b) with a.y <= b of the full dimensional hull of `pts` in Z^k.
std::vector<IVec> full_dim_facets(const std::vector<IVec>& pts, std::size_t k) {
  const std::size_t dim = k + 1;
  const std::size_t m = pts.size();
  auto constraint = [&](std::size_t i) {
    IVec row(pts[i]);
    row.push_back(Integer(-1));
    return row;
  };
  // pick dim affinely independent points for the starting simplex cone
  std::vector<std::size_t> chosen;
  {
    std::vector<std::vector<Rational>> basis;
    for (std::size_t i = 0; i < m && chosen.size() < dim; ++i) {
      auto row = constraint(i);
      std::vector<Rational> rr(row.begin(), row.end());
      auto trial = basis;
      trial.push_back(rr);
      auto tcopy = trial;
      if (rref(tcopy, dim).size() == trial.size()) {
        basis = trial;
        chosen.push_back(i);
      }
    }
    if (chosen.size() != dim) throw Error(Errc::invalid_argument, "hull is not full dimensional");
  }
  // rays of {x : A0 x <= 0} are the columns of -A0^{-1}
  std::vector<std::vector<Rational>> aug(dim, std::vector<Rational>(2 * dim));
  for (std::size_t r = 0; r < dim; ++r) {
    auto row = constraint(chosen[r]);
    for (std::size_t c = 0; c < dim; ++c) aug[r][c] = row[c];
    aug[r][dim + r] = 1;
  }
  rref(aug, 2 * dim);
  std::vector<Ray> rays;
  for (std::size_t c = 0; c < dim; ++c) {
    std::vector<Rational> col(dim);
    for (std::size_t r = 0; r < dim; ++r) col[r] = -aug[r][dim + c];
    Ray ray{clear_denominators(col), boost::dynamic_bitset<>(m)};
    rays.push_back(std::move(ray));
  }
  std::vector<bool> processed(m, false);
  for (auto i : chosen) processed[i] = true;
  for (auto& ray : rays)
    for (auto i : chosen)
      if (dot(constraint(i), ray.v) == 0) ray.zero.set(i);

  for (std::size_t i = 0; i < m; ++i) {
    if (processed[i]) continue;
    processed[i] = true;
    IVec h = constraint(i);
    std::vector<Integer> val(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Ray> next;
    for (std::size_t r = 0; r < rays.size(); ++r) {
      val[r] = dot(h, rays[r].v);
      if (val[r] > 0) {
        pos.push_back(r);
      } else {
        if (val[r] < 0) neg.push_back(r);
        else rays[r].zero.set(i);
      }
    }
    if (pos.empty()) continue;
    for (std::size_t r = 0; r < rays.size(); ++r)
      if (val[r] <= 0) next.push_back(rays[r]);
    for (auto p : pos) {
      for (auto q : neg) {
        auto common = rays[p].zero & rays[q].zero;
        if (common.count() + 2 < dim) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.is_subset_of(rays[r].zero)) adjacent = false;
        }
        if (!adjacent) continue;
        IVec v(dim);
        for (std::size_t c = 0; c < dim; ++c) v[c] = val[p] * rays[q].v[c] - val[q] * rays[p].v[c];
        normalize(v);
        Ray nr{std::move(v), common};
        nr.zero.set(i);
        next.push_back(std::move(nr));
      }
    }
    rays = std::move(next);
  }
  std::vector<IVec> out;
  for (auto& ray : rays) {
    bool zero_normal = std::all_of(ray.v.begin(), ray.v.begin() + static_cast<long>(k),
                                   [](const Integer& z) { return z == 0; });
    if (!zero_normal) out.push_back(ray.v);
  }
  return out;
}

}  // namespace

LatticePolytope convex_hull(const std::vector<Monomial>& input) {
  if (input.empty()) throw Error(Errc::invalid_argument, "convex hull of an empty set");
  const std::size_t n = input.front().size();
  std::vector<Monomial> pts = input;
  std::sort(pts.begin(), pts.end(), RenderOrder{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  LatticePolytope P;
  P.n = n;
  // affine span
  std::vector<std::vector<Rational>> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    std::vector<Rational> d(n);
    for (std::size_t j = 0; j < n; ++j)
      d[j] = Rational(static_cast<long>(pts[i][j])) - Rational(static_cast<long>(pts[0][j]));
    diffs.push_back(std::move(d));
  }
  std::vector<std::size_t> pivots = rref(diffs, n);
  const std::size_t k = pivots.size();
  P.dimension = k;

  auto as_ivec = [](const Monomial& m) {
    IVec v;
    for (unsigned e : m.exp) v.emplace_back(static_cast<unsigned long>(e));
    return v;
  };
  auto push_facet = [&](const IVec& a, const Integer& b) {
    Facet f;
    for (const auto& x : a) f.normal.push_back(to_ll(x));
    f.offset = to_ll(b);
    P.facets.push_back(std::move(f));
  };

  // equalities: null space of the span
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  IVec p0 = as_ivec(pts[0]);
  for (std::size_t f = 0; f < n; ++f) {
    if (is_pivot[f]) continue;
    std::vector<Rational> a(n, Rational(0));
    a[f] = 1;
    for (std::size_t r = 0; r < k; ++r) a[pivots[r]] = -diffs[r][f];
    IVec ai = clear_denominators(a);
    Integer b = dot(ai, p0);
    push_facet(ai, b);
    IVec neg(ai);
    for (auto& x : neg) x = -x;
    push_facet(neg, Integer(-b));
  }

  std::vector<IVec> proj;
  for (const auto& p : pts) {
    IVec y;
    for (auto c : pivots) y.emplace_back(static_cast<unsigned long>(p[c]));
    proj.push_back(std::move(y));
  }
  std::vector<IVec> ineq;  // (a in pivot coordinates, b)
  if (k > 0) ineq = full_dim_facets(proj, k);
  for (const auto& ab : ineq) {
    IVec a(n, Integer(0));
    for (std::size_t r = 0; r < k; ++r) a[pivots[r]] = ab[r];
    push_facet(a, ab[k]);
  }

  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (k == 0) {
      P.vertices.push_back(pts[i]);
      break;
    }
    std::vector<std::vector<Rational>> tight;
    for (const auto& ab : ineq) {
      IVec a(ab.begin(), ab.begin() + static_cast<long>(k));
      if (dot(a, proj[i]) == ab[k]) tight.emplace_back(a.begin(), a.end());
    }
    if (rref(tight, k).size() == k) P.vertices.push_back(pts[i]);
  }
  std::sort(P.vertices.begin(), P.vertices.end(), RenderOrder{});
  return P;
}

LatticePolytope newton_polytope(const Polynomial& f) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "Newton polytope of the zero polynomial");
  return convex_hull(f.support());
}

SupportBasis half_lattice_points(const LatticePolytope& P) {
  if (P.vertices.empty()) return SupportBasis{};
  const std::size_t n = P.n;
  std::vector<unsigned> lo(n, std::numeric_limits<unsigned>::max()), hi(n, 0);
  for (const auto& v : P.vertices)
    for (std::size_t i = 0; i < n; ++i) {
      lo[i] = std::min(lo[i], (v[i] + 1) / 2);
      hi[i] = std::max(hi[i], v[i] / 2);
    }
  std::vector<Monomial> out;
  for (std::size_t i = 0; i < n; ++i)
    if (lo[i] > hi[i]) return SupportBasis{};
  Monomial q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = lo[i];
  std::vector<long long> twice(n);
  while (true) {
    for (std::size_t i = 0; i < n; ++i) twice[i] = 2LL * q[i];
    if (P.contains(twice)) out.push_back(q);
    std::size_t i = 0;
    while (i < n && q[i] == hi[i]) {
      q[i] = lo[i];
      ++i;
    }
    if (i == n) break;
    ++q[i];
  }
  return SupportBasis(std::move(out));
}

SupportBasis degree_simplex_points(std::size_t n, unsigned k) {
  std::vector<Monomial> out;
  Monomial a(n);
  // enumerate by recursion on the first coordinates
  std::function<void(std::size_t, unsigned)> rec = [&](std::size_t i, unsigned left) {
    if (i == n) {
      out.push_back(a);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      a[i] = e;
      rec(i + 1, left - e);
    }
    a[i] = 0;
  };
  rec(0, k);
  return SupportBasis(std::move(out));
}

SupportBasis minkowski_half_support(const Polynomial& f, unsigned D) {
  LatticePolytope P = newton_polytope(f);
  const std::size_t n = f.nvars();
  std::vector<Monomial> pts;
  for (const auto& v : P.vertices) {
    pts.push_back(v);
    for (std::size_t i = 0; i < n; ++i) {
      Monomial w = v;
      w[i] += 2 * D;
      pts.push_back(w);
    }
  }
  SupportBasis half = half_lattice_points(convex_hull(pts));
  const unsigned cap = (static_cast<unsigned>(f.degree()) + 1) / 2 + D;
  std::vector<Monomial> kept;
  for (const auto& q : half.points())
    if (q.degree() <= cap) kept.push_back(q);
  return SupportBasis(std::move(kept));
}

}  // namespace ratsos
