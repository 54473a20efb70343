#pragma once

// Positivity certificates on compact basic semialgebraic sets
// S = {x : g_1(x) >= 0, ..., g_m(x) >= 0}, assumed inside [-1, 1]^n.

#include <vector>

#include "ratsos/unconstrained.hpp"

namespace ratsos {

struct SemialgebraicSet {
  std::size_t n = 0;
  std::vector<Polynomial> constraints;

  SemialgebraicSet() = default;
  SemialgebraicSet(std::size_t nvars, std::vector<Polynomial> g);
  /// ceil(deg g_j / 2)
  std::vector<unsigned> half_degrees() const;
  /// Smallest k with 2k >= deg f and k >= every half degree.
  unsigned min_level(const Polynomial& f) const;
  bool contains(const std::vector<Rational>& x) const;
};

struct PutinarOptions {
  unsigned max_level = 6;
  /// Only the box constraints 1 - X_i^2 are added for S' instead of every
  /// 1 - X^{2 alpha} with 0 < |alpha| <= k.
  bool box_only = false;
};

/// The alpha of the extra constraints 1 - X^{2 alpha} used at level k.
std::vector<Monomial> scalar_alphas(std::size_t nvars, unsigned k, bool box_only);

/// Block SDP for f over S at level k is numerically strictly feasible.
bool membership_heuristic(const Polynomial& f, const SemialgebraicSet& S, unsigned k, const Precision& prec,
                          const SolverConfig& solver = {});

/// f = sum_j g_j sigma_j + sum_alpha c_alpha (1 - X^{2 alpha}), exactly.
Certificate putinarsos(const Polynomial& f, const SemialgebraicSet& S, const CertifyOptions& opts = {},
                       const PutinarOptions& popts = {});

/// Rounding and projection variant over S itself; without constraints this
/// is round_project packaged as a Putinar certificate.
Certificate round_project_putinar(const Polynomial& f, const SemialgebraicSet& S, const CertifyOptions& opts = {},
                                  const PutinarOptions& popts = {});

}  // namespace ratsos
