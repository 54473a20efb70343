#include "ratsos/sdp.hpp"

#include <map>

#include "ratsos/errors.hpp"

namespace ratsos {

Precision Precision::doubled(bool with_round) const {
  Precision p = *this;
  p.delta *= 2;
  p.radius *= 2;
  p.chol *= 2;
  if (with_round) p.round *= 2;
  return p;
}

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::success: return "success";
    case SolveStatus::infeasible: return "infeasible";
    case SolveStatus::radius_exceeded: return "radius_exceeded";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::inaccurate: return "inaccurate";
  }
  return "unknown";
}

Rational GramProblem::lhs(std::size_t i, const std::vector<RationalMatrix>& G,
                          const std::vector<Rational>& c) const {
  const Equality& e = equalities[i];
  Rational s = 0;
  for (const auto& en : e.entries) {
    Rational v = en.value * G[en.block](en.row, en.col);
    s += en.row == en.col ? v : Rational(2 * v);
  }
  for (const auto& sr : e.scalars) s += sr.value * c[sr.index];
  return s;
}

namespace {

using RowMap = std::map<Monomial, std::size_t, BasisOrder>;

Equality& row_for(GramProblem& p, RowMap& rows, const Monomial& gamma) {
  auto it = rows.find(gamma);
  if (it != rows.end()) return p.equalities[it->second];
  rows.emplace(gamma, p.equalities.size());
  Equality e;
  e.gamma = gamma;
  e.rhs = 0;
  p.equalities.push_back(std::move(e));
  return p.equalities.back();
}

void add_entry(Equality& e, std::size_t block, std::size_t r, std::size_t c, const Rational& v) {
  if (sgn(v) == 0) return;
  if (r > c) std::swap(r, c);
  for (auto& en : e.entries)
    if (en.block == block && en.row == r && en.col == c) {
      en.value += v;
      return;
    }
  e.entries.push_back(EntryRef{block, r, c, v});
}

// Block j contributes sum_{a,b} G_j(a,b) g_j(gamma - a - b) to row gamma.
void add_block_rows(GramProblem& p, RowMap& rows, std::size_t j) {
  const SupportBasis& B = p.blocks[j].basis;
  const Polynomial& g = p.blocks[j].multiplier;
  for (std::size_t a = 0; a < B.size(); ++a)
    for (std::size_t b = a; b < B.size(); ++b)
      for (const auto& [delta, coeff] : g.terms()) {
        Monomial gamma = B[a] + B[b] + delta;
        add_entry(row_for(p, rows, gamma), j, a, b, coeff);
      }
}

void sort_rows(GramProblem& p) {
  std::stable_sort(p.equalities.begin(), p.equalities.end(), [](const Equality& x, const Equality& y) {
    if (!x.gamma || !y.gamma) return x.gamma.has_value() && !y.gamma.has_value();
    return BasisOrder{}(*x.gamma, *y.gamma);
  });
}

void set_objective(GramProblem& p, Objective obj) {
  if (obj == Objective::min_trace) {
    for (std::size_t b = 0; b < p.blocks.size(); ++b)
      for (std::size_t i = 0; i < p.block_size(b); ++i) p.objective.push_back(EntryRef{b, i, i, 1});
    for (std::size_t s = 0; s < p.scalars.size(); ++s) p.scalar_objective.push_back(ScalarRef{s, 1});
  } else if (obj == Objective::max_trace_first_block && !p.blocks.empty()) {
    for (std::size_t i = 0; i < p.block_size(0); ++i) p.objective.push_back(EntryRef{0, i, i, -1});
  }
}

}  // namespace

GramProblem assemble_unconstrained(const Polynomial& f, const SupportBasis& Q, Objective obj) {
  if (Q.size() == 0) throw Error(Errc::invalid_argument, "empty Gram basis");
  if (Q.nvars() != f.nvars()) throw Error(Errc::dimension_mismatch, "basis and polynomial variable counts differ");
  GramProblem p;
  p.nvars = f.nvars();
  p.blocks.push_back(GramBlock{Q, Polynomial(f.nvars(), Rational(1))});
  RowMap rows;
  add_block_rows(p, rows, 0);
  for (const auto& [m, c] : f.terms()) {
    auto it = rows.find(m);
    if (it == rows.end())
      throw Error(Errc::not_sos, "monomial " + to_string(m) + " is not a sum of two basis points");
    p.equalities[it->second].rhs = c;
  }
  sort_rows(p);
  set_objective(p, obj);
  return p;
}

GramProblem assemble_putinar(const Polynomial& f, const std::vector<Polynomial>& constraints, unsigned k,
                             const std::vector<Monomial>& scalar_alphas, Objective obj) {
  const std::size_t n = f.nvars();
  if (f.degree() > static_cast<int>(2 * k))
    throw Error(Errc::invalid_argument, "degree of f exceeds 2k");
  if (constraints.empty() && scalar_alphas.empty())
    return assemble_unconstrained(f, degree_simplex_points(n, k), obj);
  GramProblem p;
  p.nvars = n;
  p.blocks.push_back(GramBlock{degree_simplex_points(n, k), Polynomial(n, Rational(1))});
  for (const auto& g : constraints) {
    if (g.nvars() != n) throw Error(Errc::dimension_mismatch, "constraint variable count differs");
    if (g.is_zero()) throw Error(Errc::invalid_argument, "zero constraint polynomial");
    unsigned w = (static_cast<unsigned>(std::max(g.degree(), 0)) + 1) / 2;
    if (w > k) throw Error(Errc::invalid_argument, "constraint degree exceeds 2k");
    p.blocks.push_back(GramBlock{degree_simplex_points(n, k - w), g});
  }
  RowMap rows;
  // every monomial of degree <= 2k gets a row
  const SupportBasis all = degree_simplex_points(n, 2 * k);
  for (const auto& gamma : all.points()) row_for(p, rows, gamma);
  for (std::size_t j = 0; j < p.blocks.size(); ++j) add_block_rows(p, rows, j);
  for (const auto& alpha : scalar_alphas) {
    Polynomial q = Polynomial(n, Rational(1)) - Polynomial::monomial(alpha.twice());
    std::size_t idx = p.scalars.size();
    p.scalars.push_back(ScalarVar{alpha, q});
    for (const auto& [m, c] : q.terms()) row_for(p, rows, m).scalars.push_back(ScalarRef{idx, c});
  }
  for (const auto& [m, c] : f.terms()) row_for(p, rows, m).rhs = c;
  sort_rows(p);
  set_objective(p, obj);
  return p;
}

SupportBasis hilbert_numerator_basis(const Polynomial& f, unsigned D, bool homogeneous) {
  SupportBasis Q = minkowski_half_support(f, D);
  if (!homogeneous) return Q;
  if (!f.is_form() || f.degree() % 2 != 0) throw Error(Errc::not_a_form, "homogeneous Hilbert bases need an even form");
  const unsigned top = static_cast<unsigned>(f.degree()) / 2 + D;
  std::vector<Monomial> keep;
  for (const auto& a : Q.points())
    if (a.degree() == top) keep.push_back(a);
  return SupportBasis(std::move(keep));
}

SupportBasis hilbert_denominator_basis(std::size_t nvars, unsigned D, bool homogeneous) {
  SupportBasis all = degree_simplex_points(nvars, D);
  if (!homogeneous) return all;
  std::vector<Monomial> keep;
  for (const auto& a : all.points())
    if (a.degree() == D) keep.push_back(a);
  return SupportBasis(std::move(keep));
}

GramProblem assemble_hilbert(const Polynomial& f, unsigned D, const Rational& eps, Objective obj, bool homogeneous) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "Hilbert problem for the zero polynomial");
  const std::size_t n = f.nvars();
  GramProblem p;
  p.nvars = n;
  p.blocks.push_back(GramBlock{hilbert_numerator_basis(f, D, homogeneous), Polynomial(n, Rational(1))});
  p.blocks.push_back(GramBlock{hilbert_denominator_basis(n, D, homogeneous), f});
  RowMap rows;
  const SupportBasis& Q = p.blocks[0].basis;
  for (std::size_t a = 0; a < Q.size(); ++a)
    for (std::size_t b = a; b < Q.size(); ++b) add_entry(row_for(p, rows, Q[a] + Q[b]), 0, a, b, Rational(-1));
  add_block_rows(p, rows, 1);
  for (std::size_t a = 0; a < Q.size(); ++a) row_for(p, rows, Q[a].twice()).rhs += eps;
  sort_rows(p);
  Equality norm;
  for (std::size_t i = 0; i < p.block_size(1); ++i) norm.entries.push_back(EntryRef{1, i, i, 1});
  norm.rhs = 1;
  p.equalities.push_back(std::move(norm));
  set_objective(p, obj);
  return p;
}

}  // namespace ratsos
