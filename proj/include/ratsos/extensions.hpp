#pragma once

// Certificates with denominators: Reznick multipliers (X1^2 + ... + Xn^2)^D
// for positive definite forms, and Hilbert-Artin style f = sigma / sigma_D.

#include "ratsos/unconstrained.hpp"

namespace ratsos {

/// (X1^2 + ... + Xn^2)^D as weighted squares: multinomial(D; b) (X^b)^2.
SosTerms reznick_multiplier(std::size_t nvars, unsigned D);

/// Smallest D <= max_degree with f * G_n^D looking interior, then intsos on
/// the product. Throws NotAForm, OddDegree, DegreeCapExceeded.
Certificate reznicksos(const Polynomial& f, const CertifyOptions& opts = {}, unsigned max_degree = 10);

/// First D in 1..max_degree where the Hilbert problem is strictly feasible;
/// numerator over the Minkowski half support, denominator over N^n_D. For
/// forms the homogeneous parts of both bases are used unless
/// `homogeneous_forms` is false.
Certificate hilbertsos(const Polynomial& f, const CertifyOptions& opts = {}, unsigned max_degree = 3,
                       bool homogeneous_forms = true);

}  // namespace ratsos
