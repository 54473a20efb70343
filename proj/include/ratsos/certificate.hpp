#pragma once

// Certificate data and the text formats for certificates and problems.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ratsos/factor.hpp"
#include "ratsos/polynomial.hpp"

namespace ratsos {

enum class CertificateKind { unconstrained, reznick, hilbert, putinar };
std::string to_string(CertificateKind k);
CertificateKind parse_kind(const std::string& s);

struct SosBlock {
  Polynomial multiplier;  // g_j, 1 for the plain block
  SosTerms terms;
};

/// c_alpha * (1 - X^{2 alpha}).
struct ScalarTerm {
  Rational weight;
  Polynomial poly;
};

/// Parameters that produced a certificate, kept as comments in the file.
struct CertifyInfo {
  Rational eps;
  unsigned delta = 0, radius = 0, chol = 0, round = 0;
  unsigned rounds = 0;
};

/// Identities by kind, with sigma_j = sum_i c_ij s_ij^2:
///   unconstrained  f = sigma_0
///   reznick        f * den = sigma_0, den = (X1^2 + ... + Xn^2)^degree
///   hilbert        f * den = sigma_0
///   putinar        f = sum_j g_j sigma_j + sum_a c_a (1 - X^{2a})
struct Certificate {
  CertificateKind kind = CertificateKind::unconstrained;
  std::size_t nvars = 0;
  Polynomial input;
  unsigned degree = 0;  // Reznick or Hilbert D, Putinar 2k
  std::vector<SosBlock> blocks;
  std::vector<ScalarTerm> scalars;
  std::optional<SosTerms> denominator;
  std::optional<CertifyInfo> info;

  std::size_t term_count() const;
  /// Largest reduced bit size over all weights and coefficients.
  std::size_t max_bitsize() const;
};

void write_certificate(std::ostream& os, const Certificate& c);
std::string certificate_to_string(const Certificate& c);
/// Throws Error(malformed_certificate) on structural problems.
Certificate read_certificate(std::istream& is);
Certificate certificate_from_string(const std::string& s);

/// Problem file: `variables:`, `polynomial:`, any number of `constraint:`
/// and an optional `k:` hint; `#` starts a comment.
struct Problem {
  std::size_t nvars = 0;
  Polynomial f;
  std::vector<Polynomial> constraints;
  std::optional<unsigned> k;
};

Problem read_problem(std::istream& is);
void write_problem(std::ostream& os, const Problem& p);

}  // namespace ratsos
