#pragma once

// Unconstrained certifiers: perturb, solve and absorb the remainder
// (intsos), or round, project and factor exactly (round_project).

#include <functional>
#include <map>
#include <string>

#include "ratsos/certificate.hpp"
#include "ratsos/sdp.hpp"

namespace ratsos {

/// eps_alpha for every alpha of the basis.
struct EpsilonMap {
  std::map<Monomial, Rational, BasisOrder> values;

  EpsilonMap() = default;
  EpsilonMap(const SupportBasis& Q, const Rational& eps);
  Rational min() const;
  /// sum_alpha eps_alpha X^{2 alpha}
  Polynomial polynomial(std::size_t nvars) const;
};

struct Budget {
  unsigned eps_floor_bits = 128;
  unsigned delta_cap = 16384;
  unsigned max_rounds = 10;
};

struct CertifyOptions {
  Precision prec;
  Budget budget;
  SolverConfig solver;
  Objective objective = Objective::feasibility;
  std::function<void(const std::string&)> progress;

  void report(const std::string& msg) const {
    if (progress) progress(msg);
  }
};

/// Moves every monomial of u either into eps (X^{2 alpha}) or into a new
/// square |u_g|/2 (X^a + sgn(u_g) X^b)^2 appended to acc.
/// Throws UnabsorbableMonomial when a monomial is not a sum of two points.
void absorb(const Polynomial& u, const SupportBasis& Q, EpsilonMap& eps, SosTerms& acc);

/// t = sum_{alpha in Q} X^{2 alpha}
Polynomial even_sum(const SupportBasis& Q);

/// Rejects the zero polynomial, odd degree and Newton vertices that are odd
/// or carry a non-positive coefficient.
void check_certifiable(const Polynomial& f);

/// Solve for f - eps t over Q with the strict margin.
GramSolution interior_solve(const Polynomial& f, const Rational& eps, const SupportBasis& Q, const Precision& prec,
                            const SolverConfig& solver = {}, Objective obj = Objective::feasibility);

/// Usable strictly feasible solution (a Frobenius norm above the radius is
/// still interior).
bool is_interior(const GramSolution& s);

bool interior_heuristic(const Polynomial& f, const Rational& eps, const SupportBasis& Q, const Precision& prec,
                        const SolverConfig& solver = {});

Certificate intsos(const Polynomial& f, const CertifyOptions& opts = {});

/// G(a,b) = G'(a,b) - (sum_{a'+b'=a+b} G'(a',b') - f_{a+b}) / eta(a+b).
RationalMatrix project_gram(const RationalMatrix& Gp, const SupportBasis& Q, const Polynomial& f);

Certificate round_project(const Polynomial& f, const CertifyOptions& opts = {});

/// Throws SoundnessFailure unless the certificate verifies against f.
void require_verified(const Polynomial& f, const Certificate& c,
                      const std::optional<std::vector<Polynomial>>& constraints = std::nullopt);

}  // namespace ratsos
