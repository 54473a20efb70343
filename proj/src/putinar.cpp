#include "ratsos/putinar.hpp"

#include <algorithm>

#include "ratsos/errors.hpp"
#include "ratsos/polytope.hpp"

namespace ratsos {

SemialgebraicSet::SemialgebraicSet(std::size_t nvars, std::vector<Polynomial> g) : n(nvars), constraints(std::move(g)) {
  for (const auto& c : constraints) {
    if (c.nvars() != n) throw Error(Errc::dimension_mismatch, "constraint variable count differs");
    if (c.is_zero()) throw Error(Errc::invalid_argument, "zero constraint polynomial");
  }
}

std::vector<unsigned> SemialgebraicSet::half_degrees() const {
  std::vector<unsigned> w;
  for (const auto& g : constraints) w.push_back((static_cast<unsigned>(std::max(g.degree(), 0)) + 1) / 2);
  return w;
}

unsigned SemialgebraicSet::min_level(const Polynomial& f) const {
  unsigned k = (static_cast<unsigned>(std::max(f.degree(), 0)) + 1) / 2;
  for (unsigned w : half_degrees()) k = std::max(k, w);
  return std::max(k, 1u);
}

bool SemialgebraicSet::contains(const std::vector<Rational>& x) const {
  for (const auto& g : constraints)
    if (sign(g.eval(x)) < 0) return false;
  return true;
}

std::vector<Monomial> scalar_alphas(std::size_t nvars, unsigned k, bool box_only) {
  std::vector<Monomial> out;
  const SupportBasis all = degree_simplex_points(nvars, box_only ? std::min(k, 1u) : k);
  for (const auto& a : all.points())
    if (a.degree() > 0) out.push_back(a);
  return out;
}

namespace {

GramSolution putinar_solve(const Polynomial& f, const SemialgebraicSet& S, unsigned k,
                           const std::vector<Monomial>& alphas, const Precision& prec, const SolverConfig& solver,
                           Objective obj) {
  GramProblem p;
  try {
    p = assemble_putinar(f, S.constraints, k, alphas, obj);
  } catch (const Error& e) {
    if (e.code() != Errc::not_sos && e.code() != Errc::invalid_argument) throw;
    return GramSolution{};
  }
  return solve(p, prec.delta, prec.radius, solver);
}

void check_input(const Polynomial& f, const SemialgebraicSet& S) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "cannot certify the zero polynomial");
  if (f.nvars() != S.n)
    throw Error(Errc::dimension_mismatch, "polynomial has " + std::to_string(f.nvars()) + " variables, the set has " +
                                              std::to_string(S.n));
}

unsigned find_level(const Polynomial& f, const SemialgebraicSet& S, const CertifyOptions& opts,
                    const PutinarOptions& popts) {
  for (unsigned k = S.min_level(f); k <= popts.max_level; ++k) {
    const bool ok = membership_heuristic(f, S, k, opts.prec, opts.solver);
    opts.report("k = " + std::to_string(k) + (ok ? ": member" : ": not a member"));
    if (ok) return k;
  }
  throw Error(Errc::degree_cap_exceeded, "no level k <= " + std::to_string(popts.max_level) + " was feasible");
}

Certificate make_putinar(const Polynomial& f, const SemialgebraicSet& S, unsigned k, std::vector<SosTerms> sigma,
                         const std::vector<Monomial>& alphas, const std::vector<Rational>& c, const CertifyInfo& info) {
  const std::size_t n = f.nvars();
  Certificate cert;
  cert.kind = CertificateKind::putinar;
  cert.nvars = n;
  cert.input = f;
  cert.degree = 2 * k;
  for (std::size_t j = 0; j < sigma.size(); ++j) {
    SosTerms kept;
    for (std::size_t i = 0; i < sigma[j].size(); ++i)
      if (sign(sigma[j].weights[i]) != 0 && !sigma[j].polys[i].is_zero()) kept.append(sigma[j].weights[i], sigma[j].polys[i]);
    const Polynomial mult = j == 0 ? Polynomial(n, Rational(1)) : S.constraints[j - 1];
    cert.blocks.push_back(SosBlock{mult, std::move(kept)});
  }
  for (std::size_t a = 0; a < alphas.size(); ++a)
    if (sign(c[a]) != 0)
      cert.scalars.push_back(ScalarTerm{c[a], Polynomial(n, Rational(1)) - Polynomial::monomial(alphas[a].twice())});
  cert.info = info;
  return cert;
}

}  // namespace

bool membership_heuristic(const Polynomial& f, const SemialgebraicSet& S, unsigned k, const Precision& prec,
                          const SolverConfig& solver) {
  return is_interior(putinar_solve(f, S, k, {}, prec, solver, Objective::feasibility));
}

Certificate putinarsos(const Polynomial& f, const SemialgebraicSet& S, const CertifyOptions& opts,
                       const PutinarOptions& popts) {
  check_input(f, S);
  const std::size_t n = f.nvars();
  const unsigned k = find_level(f, S, opts, popts);
  const SupportBasis Q = degree_simplex_points(n, k);
  const std::vector<Monomial> alphas = scalar_alphas(n, k, popts.box_only);
  const Polynomial t = even_sum(Q);
  Precision prec = opts.prec;

  Rational eps = prec.eps;
  const Rational floor = pow2(-static_cast<long>(opts.budget.eps_floor_bits));
  auto attempt = [&](const Rational& e) {
    return putinar_solve(f - e * t, S, k, alphas, prec, opts.solver, opts.objective);
  };
  GramSolution sol = attempt(eps);
  if (!is_interior(sol) && !is_interior(attempt(floor)))
    throw Error(Errc::epsilon_underflow,
                "no interior point down to eps = 2^-" + std::to_string(opts.budget.eps_floor_bits));
  while (!is_interior(sol)) {
    eps /= 2;
    if (eps < floor) throw Error(Errc::epsilon_underflow, "eps fell below the floor");
    sol = attempt(eps);
  }
  opts.report("eps = " + to_string(eps) + " accepted");

  const Polynomial fe = f - eps * t;
  for (unsigned round = 0;; ++round) {
    if (round > 0) {
      prec = prec.doubled();
      if (round >= opts.budget.max_rounds || prec.delta > opts.budget.delta_cap)
        throw Error(Errc::precision_ceiling, "precision budget exhausted at delta = " + std::to_string(prec.delta));
      sol = attempt(eps);
      if (!is_interior(sol)) continue;
    }
    // the solver returns one matrix per block and one value per scalar
    std::vector<SosTerms> sigma;
    unsigned bits = prec.chol;
    bool factored = true;
    Polynomial u = fe;
    for (std::size_t j = 0; j < sol.matrices.size() && factored; ++j) {
      const SupportBasis basis = j == 0 ? Q : degree_simplex_points(n, k - S.half_degrees()[j - 1]);
      unsigned used = prec.chol;
      try {
        sigma.push_back(approx_cholesky(sol.matrices[j], sol.lambda[j], prec.chol, basis, &used));
      } catch (const Error& e) {
        if (e.code() != Errc::non_positive) throw;
        factored = false;
        break;
      }
      bits = std::max(bits, used);
      const Polynomial s = sigma.back().expand(n);
      u -= j == 0 ? s : S.constraints[j - 1] * s;
    }
    if (!factored) continue;
    for (std::size_t a = 0; a < alphas.size(); ++a)
      u -= sol.scalars[a] * (Polynomial(n, Rational(1)) - Polynomial::monomial(alphas[a].twice()));

    EpsilonMap em(Q, eps);
    absorb(u, Q, em, sigma[0]);
    const Rational m = em.min();
    opts.report("delta = " + std::to_string(prec.delta) + ": min eps_alpha = " + to_approx(m));
    if (sign(m) < 0) continue;
    for (const auto& [a, e] : em.values) sigma[0].append(e, Polynomial::monomial(a));

    Certificate c = make_putinar(f, S, k, std::move(sigma), alphas, sol.scalars,
                                 CertifyInfo{eps, prec.delta, prec.radius, bits, prec.round, round + 1});
    require_verified(f, c, S.constraints);
    return c;
  }
}

Certificate round_project_putinar(const Polynomial& f, const SemialgebraicSet& S, const CertifyOptions& opts,
                                  const PutinarOptions& popts) {
  check_input(f, S);
  const std::size_t n = f.nvars();
  if (S.constraints.empty()) {
    // no multipliers: the unconstrained method over the half Newton polytope
    Certificate c = round_project(f, opts);
    c.kind = CertificateKind::putinar;
    c.degree = 2 * S.min_level(f);
    require_verified(f, c, S.constraints);
    return c;
  }
  const unsigned k = find_level(f, S, opts, popts);
  const SupportBasis Q = degree_simplex_points(n, k);
  const std::size_t r = Q.size();
  Precision prec = opts.prec;
  for (unsigned round = 0;; ++round) {
    if (round > 0) {
      prec = prec.doubled(true);
      if (round >= opts.budget.max_rounds || prec.delta > opts.budget.delta_cap)
        throw Error(Errc::precision_ceiling, "precision budget exhausted at delta = " + std::to_string(prec.delta));
    }
    const GramSolution sol = putinar_solve(f, S, k, {}, prec, opts.solver, opts.objective);
    if (!is_interior(sol)) continue;
    std::vector<SosTerms> sigma(1);
    Polynomial u = f;
    unsigned bits = prec.chol;
    bool factored = true;
    for (std::size_t j = 1; j < sol.matrices.size(); ++j) {
      const SupportBasis basis = degree_simplex_points(n, k - S.half_degrees()[j - 1]);
      unsigned used = prec.chol;
      try {
        sigma.push_back(approx_cholesky(sol.matrices[j], sol.lambda[j], prec.chol, basis, &used));
      } catch (const Error& e) {
        if (e.code() != Errc::non_positive) throw;
        factored = false;
        break;
      }
      bits = std::max(bits, used);
      u -= S.constraints[j - 1] * sigma.back().expand(n);
    }
    if (!factored) continue;
    RationalMatrix Gp(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = i; j < r; ++j) Gp(i, j) = Gp(j, i) = round_fixed(sol.matrices[0](i, j), prec.round);
    try {
      sigma[0] = exact_ldlt(project_gram(Gp, Q, u), Q).terms;
    } catch (const Error& e) {
      if (e.code() != Errc::not_psd) throw;
      opts.report("delta = " + std::to_string(prec.delta) + ": projected matrix is not PSD");
      continue;
    }
    Certificate c = make_putinar(f, S, k, std::move(sigma), {}, {},
                                 CertifyInfo{0, prec.delta, prec.radius, bits, prec.round, round + 1});
    require_verified(f, c, S.constraints);
    return c;
  }
}

}  // namespace ratsos
