#include "ratsos/unconstrained.hpp"

#include "ratsos/errors.hpp"
#include "ratsos/polytope.hpp"
#include "ratsos/verify.hpp"

namespace ratsos {

EpsilonMap::EpsilonMap(const SupportBasis& Q, const Rational& eps) {
  for (const auto& a : Q.points()) values.emplace(a, eps);
}

Rational EpsilonMap::min() const {
  if (values.empty()) return 0;
  Rational m = values.begin()->second;
  for (const auto& [a, e] : values)
    if (e < m) m = e;
  return m;
}

Polynomial EpsilonMap::polynomial(std::size_t nvars) const {
  Polynomial p(nvars);
  for (const auto& [a, e] : values) p.add_term(a.twice(), e);
  return p;
}

void absorb(const Polynomial& u, const SupportBasis& Q, EpsilonMap& eps, SosTerms& acc) {
  for (const auto& [g, c] : u.terms()) {
    if (g.is_even() && Q.contains(g.half())) {
      eps.values[g.half()] += c;
      continue;
    }
    bool done = false;
    for (const auto& a : Q.points()) {
      if (!g.divisible_by(a)) continue;
      const Monomial b = g - a;
      if (b == a || !Q.contains(b)) continue;
      const Rational w = abs(c) / 2;
      eps.values[a] -= w;
      eps.values[b] -= w;
      Polynomial s = Polynomial::monomial(a);
      s.add_term(b, Rational(sign(c)));
      acc.append(w, std::move(s));
      done = true;
      break;
    }
    if (!done) throw Error(Errc::unabsorbable_monomial, "monomial " + to_string(g) + " is not a sum of two basis points");
  }
}

Polynomial even_sum(const SupportBasis& Q) {
  Polynomial t(Q.nvars());
  for (const auto& a : Q.points()) t.add_term(a.twice(), 1);
  return t;
}

void check_certifiable(const Polynomial& f) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "cannot certify the zero polynomial");
  if (f.degree() % 2 != 0) throw Error(Errc::odd_degree, "degree " + std::to_string(f.degree()) + " is odd");
  const LatticePolytope P = newton_polytope(f);
  for (const auto& v : P.vertices) {
    if (!v.is_even())
      throw Error(Errc::not_sos, "Newton polytope vertex " + to_string(v) + " is not even");
    if (f.coeff(v) <= 0)
      throw Error(Errc::not_sos, "coefficient at Newton polytope vertex " + to_string(v) + " is not positive");
  }
}

GramSolution interior_solve(const Polynomial& f, const Rational& eps, const SupportBasis& Q, const Precision& prec,
                            const SolverConfig& solver, Objective obj) {
  const Polynomial fe = f - eps * even_sum(Q);
  GramProblem p;
  try {
    p = assemble_unconstrained(fe, Q, obj);
  } catch (const Error&) {
    return GramSolution{};
  }
  return solve(p, prec.delta, prec.radius, solver);
}

bool is_interior(const GramSolution& s) {
  return s.status == SolveStatus::success || s.status == SolveStatus::radius_exceeded;
}

bool interior_heuristic(const Polynomial& f, const Rational& eps, const SupportBasis& Q, const Precision& prec,
                        const SolverConfig& solver) {
  return is_interior(interior_solve(f, eps, Q, prec, solver));
}

void require_verified(const Polynomial& f, const Certificate& c,
                      const std::optional<std::vector<Polynomial>>& constraints) {
  const VerifyReport rep = verify(f, c, constraints);
  if (!rep.verified()) throw Error(Errc::soundness_failure, rep.summary());
}

namespace {

bool within_budget(const Precision& p, const Budget& b, unsigned round) {
  return round < b.max_rounds && p.delta <= b.delta_cap;
}

std::string prec_string(const Precision& p) {
  return "delta=" + std::to_string(p.delta) + " R=" + std::to_string(p.radius) +
         " chol=" + std::to_string(p.chol) + " round=" + std::to_string(p.round);
}

Certificate make_unconstrained(const Polynomial& f, SosTerms terms, const CertifyInfo& info) {
  Certificate c;
  c.kind = CertificateKind::unconstrained;
  c.nvars = f.nvars();
  c.input = f;
  c.degree = static_cast<unsigned>(f.degree());
  SosTerms kept;
  for (std::size_t i = 0; i < terms.size(); ++i)
    if (sign(terms.weights[i]) != 0 && !terms.polys[i].is_zero()) kept.append(terms.weights[i], terms.polys[i]);
  c.blocks.push_back(SosBlock{Polynomial::monomial(Monomial(f.nvars())), std::move(kept)});
  c.info = info;
  return c;
}

}  // namespace

Certificate intsos(const Polynomial& f, const CertifyOptions& opts) {
  check_certifiable(f);
  const std::size_t n = f.nvars();
  const SupportBasis Q = half_lattice_points(newton_polytope(f));
  Precision prec = opts.prec;
  opts.report("basis of " + std::to_string(Q.size()) + " monomials");

  // outer loop: halve eps until f - eps t looks interior
  Rational eps = prec.eps;
  const Rational floor = pow2(-static_cast<long>(opts.budget.eps_floor_bits));
  GramSolution sol = interior_solve(f, eps, Q, prec, opts.solver, opts.objective);
  if (!is_interior(sol)) {
    // Feasibility only improves as eps shrinks, so a failure at the floor
    // ends the search at once.
    if (!is_interior(interior_solve(f, floor, Q, prec, opts.solver, opts.objective)))
      throw Error(Errc::epsilon_underflow, "no interior point down to eps = 2^-" +
                                               std::to_string(opts.budget.eps_floor_bits) +
                                               "; the polynomial is likely not in the interior of the SOS cone");
    while (!is_interior(sol)) {
      opts.report("eps = " + to_string(eps) + ": " + to_string(sol.status) + ", halving");
      eps /= 2;
      if (eps < floor) throw Error(Errc::epsilon_underflow, "eps fell below the floor");
      sol = interior_solve(f, eps, Q, prec, opts.solver, opts.objective);
    }
  }
  opts.report("eps = " + to_string(eps) + " accepted");

  // inner loop: raise precision until the remainder is absorbed
  const Polynomial fe = f - eps * even_sum(Q);
  for (unsigned round = 0;; ++round) {
    if (round > 0) {
      prec = prec.doubled();
      if (!within_budget(prec, opts.budget, round))
        throw Error(Errc::precision_ceiling, "precision budget exhausted at " + prec_string(prec));
      sol = interior_solve(f, eps, Q, prec, opts.solver, opts.objective);
      if (!is_interior(sol)) {
        opts.report(prec_string(prec) + ": solver " + to_string(sol.status));
        continue;
      }
    }
    unsigned bits = prec.chol;
    SosTerms acc;
    try {
      acc = approx_cholesky(sol.matrices[0], sol.lambda[0], prec.chol, Q, &bits);
    } catch (const Error& e) {
      if (e.code() != Errc::non_positive) throw;
      opts.report(prec_string(prec) + ": " + e.what());
      continue;
    }
    const Polynomial u = fe - acc.expand(n);
    EpsilonMap em(Q, eps);
    absorb(u, Q, em, acc);
    const Rational m = em.min();
    opts.report(prec_string(prec) + ": min eps_alpha = " + to_approx(m));
    if (sign(m) < 0) continue;

    for (const auto& [a, e] : em.values) acc.append(e, Polynomial::monomial(a));
    Certificate c = make_unconstrained(f, std::move(acc), CertifyInfo{eps, prec.delta, prec.radius, bits, prec.round, round + 1});
    require_verified(f, c);
    return c;
  }
}

RationalMatrix project_gram(const RationalMatrix& Gp, const SupportBasis& Q, const Polynomial& f) {
  const std::size_t r = Q.size();
  std::map<Monomial, std::pair<Rational, long>, BasisOrder> sums;
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      auto& [s, eta] = sums[Q[i] + Q[j]];
      s += Gp(i, j);
      ++eta;
    }
  for (const auto& [g, c] : f.terms())
    if (!sums.count(g)) throw Error(Errc::not_sos, "monomial " + to_string(g) + " is outside Q + Q");
  RationalMatrix G(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      const auto& [s, eta] = sums.at(Q[i] + Q[j]);
      Rational v = Gp(i, j) - (s - f.coeff(Q[i] + Q[j])) / eta;
      v.canonicalize();
      G(i, j) = v;
    }
  return G;
}

Certificate round_project(const Polynomial& f, const CertifyOptions& opts) {
  check_certifiable(f);
  const SupportBasis Q = half_lattice_points(newton_polytope(f));
  const std::size_t r = Q.size();
  Precision prec = opts.prec;
  opts.report("basis of " + std::to_string(Q.size()) + " monomials");
  for (unsigned round = 0;; ++round) {
    if (round > 0) {
      prec = prec.doubled(true);
      if (!within_budget(prec, opts.budget, round))
        throw Error(Errc::precision_ceiling, "precision budget exhausted at " + prec_string(prec));
    }
    const GramSolution sol = interior_solve(f, 0, Q, prec, opts.solver, opts.objective);
    if (!is_interior(sol)) {
      opts.report(prec_string(prec) + ": solver " + to_string(sol.status));
      continue;
    }
    RationalMatrix Gp(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) Gp(i, j) = Gp(j, i) = round_fixed(sol.matrices[0](i, j), prec.round);
    const RationalMatrix G = project_gram(Gp, Q, f);
    LdlResult ldl;
    try {
      ldl = exact_ldlt(G, Q);
    } catch (const Error& e) {
      if (e.code() != Errc::not_psd) throw;
      opts.report(prec_string(prec) + ": projected matrix is not PSD");
      continue;
    }
    Certificate c = make_unconstrained(f, std::move(ldl.terms), CertifyInfo{0, prec.delta, prec.radius, prec.chol, prec.round, round + 1});
    require_verified(f, c);
    return c;
  }
}

}  // namespace ratsos
