#include "ratsos/extensions.hpp"

#include "ratsos/errors.hpp"
#include "ratsos/polytope.hpp"

namespace ratsos {

namespace {

Integer factorial(unsigned k) {
  Integer r = 1;
  for (unsigned i = 2; i <= k; ++i) r *= i;
  return r;
}

Polynomial sum_of_variable_squares(std::size_t n) {
  Polynomial g(n);
  for (std::size_t i = 0; i < n; ++i) {
    Monomial m(n);
    m.exp[i] = 2;
    g.add_term(m, 1);
  }
  return g;
}

}  // namespace

SosTerms reznick_multiplier(std::size_t nvars, unsigned D) {
  SosTerms t;
  const SupportBasis all = degree_simplex_points(nvars, D);
  for (const auto& b : all.points()) {
    if (b.degree() != D) continue;
    Integer c = factorial(D);
    for (unsigned e : b.exp) c /= factorial(e);
    t.append(Rational(c), Polynomial::monomial(b));
  }
  return t;
}

Certificate reznicksos(const Polynomial& f, const CertifyOptions& opts, unsigned max_degree) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "cannot certify the zero polynomial");
  if (!f.is_form()) throw Error(Errc::not_a_form, "Reznick certificates need a homogeneous polynomial");
  if (f.degree() % 2 != 0) throw Error(Errc::odd_degree, "degree " + std::to_string(f.degree()) + " is odd");
  const std::size_t n = f.nvars();
  const Polynomial g = sum_of_variable_squares(n);
  Polynomial prod = f;
  for (unsigned D = 0; D <= max_degree; ++D, prod = prod * g) {
    bool interior = false;
    try {
      check_certifiable(prod);
      const SupportBasis Q = half_lattice_points(newton_polytope(prod));
      interior = interior_heuristic(prod, 0, Q, opts.prec, opts.solver);
    } catch (const Error& e) {
      if (e.code() != Errc::not_sos) throw;
    }
    opts.report("D = " + std::to_string(D) + (interior ? ": interior" : ": not interior"));
    if (!interior) continue;

    Certificate inner = intsos(prod, opts);
    Certificate c;
    c.kind = CertificateKind::reznick;
    c.nvars = n;
    c.input = f;
    c.degree = D;
    c.blocks = std::move(inner.blocks);
    c.denominator = reznick_multiplier(n, D);
    c.info = inner.info;
    require_verified(f, c);
    return c;
  }
  throw Error(Errc::degree_cap_exceeded,
              "no Reznick degree D <= " + std::to_string(max_degree) + " gave an interior product");
}

namespace {

GramSolution hilbert_solve(const Polynomial& f, unsigned D, const Rational& eps, const Precision& prec,
                           const CertifyOptions& opts, bool homogeneous) {
  GramProblem p;
  try {
    p = assemble_hilbert(f, D, eps, Objective::max_trace_first_block, homogeneous);
  } catch (const Error& e) {
    if (e.code() != Errc::not_sos) throw;
    return GramSolution{};
  }
  return solve(p, prec.delta, prec.radius, opts.solver);
}

}  // namespace

Certificate hilbertsos(const Polynomial& f, const CertifyOptions& opts, unsigned max_degree, bool homogeneous_forms) {
  if (f.is_zero()) throw Error(Errc::zero_polynomial, "cannot certify the zero polynomial");
  if (f.degree() % 2 != 0) throw Error(Errc::odd_degree, "degree " + std::to_string(f.degree()) + " is odd");
  const std::size_t n = f.nvars();
  const Rational floor = pow2(-static_cast<long>(opts.budget.eps_floor_bits));
  const bool homog = homogeneous_forms && f.is_form();

  for (unsigned D = 1; D <= max_degree; ++D) {
    Precision prec = opts.prec;
    if (!is_interior(hilbert_solve(f, D, 0, prec, opts, homog))) {
      opts.report("D = " + std::to_string(D) + ": not strictly feasible");
      continue;
    }
    opts.report("D = " + std::to_string(D) + ": strictly feasible");
    const SupportBasis QD = hilbert_numerator_basis(f, D, homog);
    const SupportBasis ND = hilbert_denominator_basis(n, D, homog);
    const Polynomial t = even_sum(QD);

    Rational eps = prec.eps;
    GramSolution sol = hilbert_solve(f, D, eps, prec, opts, homog);
    if (!is_interior(sol) && !is_interior(hilbert_solve(f, D, floor, prec, opts, homog)))
      throw Error(Errc::epsilon_underflow, "no strictly feasible perturbation down to eps = 2^-" +
                                               std::to_string(opts.budget.eps_floor_bits));
    while (!is_interior(sol)) {
      eps /= 2;
      if (eps < floor) throw Error(Errc::epsilon_underflow, "eps fell below the floor");
      sol = hilbert_solve(f, D, eps, prec, opts, homog);
    }
    opts.report("eps = " + to_string(eps) + " accepted");

    for (unsigned round = 0;; ++round) {
      if (round > 0) {
        prec = prec.doubled();
        if (round >= opts.budget.max_rounds || prec.delta > opts.budget.delta_cap)
          throw Error(Errc::precision_ceiling, "precision budget exhausted at delta = " + std::to_string(prec.delta));
        sol = hilbert_solve(f, D, eps, prec, opts, homog);
        if (!is_interior(sol)) continue;
      }
      unsigned bits_g = prec.chol, bits_h = prec.chol;
      SosTerms num, den;
      try {
        num = approx_cholesky(sol.matrices[0], sol.lambda[0], prec.chol, QD, &bits_g);
        den = approx_cholesky(sol.matrices[1], sol.lambda[1], prec.chol, ND, &bits_h);
      } catch (const Error& e) {
        if (e.code() != Errc::non_positive) throw;
        continue;
      }
      const Polynomial u = den.expand(n) * f - num.expand(n) - eps * t;
      EpsilonMap em(QD, eps);
      absorb(u, QD, em, num);
      const Rational m = em.min();
      opts.report("delta = " + std::to_string(prec.delta) + ": min eps_alpha = " + to_approx(m));
      if (sign(m) < 0) continue;
      for (const auto& [a, e] : em.values)
        if (sign(e) != 0) num.append(e, Polynomial::monomial(a));

      Certificate c;
      c.kind = CertificateKind::hilbert;
      c.nvars = n;
      c.input = f;
      c.degree = D;
      c.blocks.push_back(SosBlock{Polynomial(n, Rational(1)), std::move(num)});
      c.denominator = std::move(den);
      c.info = CertifyInfo{eps, prec.delta, prec.radius, std::max(bits_g, bits_h), prec.round, round + 1};
      require_verified(f, c);
      return c;
    }
  }
  throw Error(Errc::degree_cap_exceeded, "no denominator degree D <= " + std::to_string(max_degree) + " was feasible");
}

}  // namespace ratsos
