#include "ratsos/verify.hpp"

#include <sstream>

#include "ratsos/errors.hpp"
#include "ratsos/polytope.hpp"

namespace ratsos {

namespace {

Polynomial expand_terms(const SosTerms& t, std::size_t n) {
  if (t.weights.size() != t.polys.size()) throw Error(Errc::malformed_certificate, "weight and polynomial counts differ");
  Polynomial sum(n);
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.polys[i].nvars() != n) throw Error(Errc::dimension_mismatch, "term has the wrong variable count");
    sum += t.weights[i] * (t.polys[i] * t.polys[i]);
  }
  return sum;
}

bool weights_nonnegative(const SosTerms& t) {
  for (const auto& w : t.weights)
    if (sign(w) < 0) return false;
  return true;
}

// 1 - X^{2a} with a != 0
bool is_scalar_poly(const Polynomial& p) {
  if (p.size() != 2) return false;
  const Monomial zero(p.nvars());
  if (p.coeff(zero) != 1) return false;
  for (const auto& [m, c] : p.terms())
    if (!(m == zero) && (c != -1 || !m.is_even())) return false;
  return true;
}

bool supports_inside(const SosTerms& t, const SupportBasis& Q) {
  for (const auto& s : t.polys)
    for (const auto& [m, c] : s.terms())
      if (!Q.contains(m)) return false;
  return true;
}

SupportBasis half_support(const Polynomial& p) {
  if (p.is_zero()) return SupportBasis{};
  return half_lattice_points(newton_polytope(p));
}

}  // namespace

std::string VerifyReport::summary() const {
  std::ostringstream os;
  os << (verified() ? "verified" : "falsified") << " (identity " << (identity_ok ? "ok" : "FAILED") << ", weights "
     << (weights_ok ? "ok" : "FAILED") << ", support " << (support_ok ? "ok" : "FAILED") << ", degree "
     << (degree_ok ? "ok" : "FAILED") << ", multipliers " << (multipliers_ok ? "ok" : "FAILED") << ")";
  std::size_t shown = 0;
  for (const auto& m : mismatches) {
    if (shown++ == 10) {
      os << "\n  ... " << mismatches.size() - 10 << " more mismatches";
      break;
    }
    os << "\n  coefficient of " << to_string(m.gamma) << ": expected " << to_string(m.expected) << ", got "
       << to_string(m.actual) << " (difference " << to_string(Rational(m.actual - m.expected)) << ")";
  }
  for (const auto& n : notes) os << "\n  " << n;
  return os.str();
}

Polynomial reconstruct(const Certificate& cert) {
  const std::size_t n = cert.nvars;
  Polynomial sum(n);
  for (const auto& b : cert.blocks) {
    if (b.multiplier.nvars() != n) throw Error(Errc::dimension_mismatch, "multiplier has the wrong variable count");
    sum += b.multiplier * expand_terms(b.terms, n);
  }
  for (const auto& s : cert.scalars) {
    if (s.poly.nvars() != n) throw Error(Errc::dimension_mismatch, "scalar term has the wrong variable count");
    sum += s.weight * s.poly;
  }
  return sum;
}

VerifyReport verify(const Polynomial& f, const Certificate& cert,
                    const std::optional<std::vector<Polynomial>>& constraints) {
  if (f.nvars() != cert.nvars)
    throw Error(Errc::dimension_mismatch, "certificate has " + std::to_string(cert.nvars) + " variables, input has " +
                                              std::to_string(f.nvars()));
  VerifyReport rep;
  const std::size_t n = cert.nvars;
  const Polynomial one = Polynomial::monomial(Monomial(n));
  if (!(cert.input == f)) rep.notes.push_back("certificate input line differs from the checked polynomial");

  // weights
  rep.weights_ok = true;
  for (const auto& b : cert.blocks) rep.weights_ok = rep.weights_ok && weights_nonnegative(b.terms);
  for (const auto& s : cert.scalars) rep.weights_ok = rep.weights_ok && sign(s.weight) >= 0;
  if (cert.denominator) rep.weights_ok = rep.weights_ok && weights_nonnegative(*cert.denominator);
  if (!rep.weights_ok) rep.notes.push_back("negative weight");

  // structure and target of the identity
  Polynomial target = f;
  rep.multipliers_ok = true;
  rep.degree_ok = true;
  rep.support_ok = true;
  switch (cert.kind) {
    case CertificateKind::unconstrained: {
      rep.multipliers_ok = cert.blocks.size() == 1 && cert.blocks[0].multiplier == one && cert.scalars.empty() &&
                           !cert.denominator;
      if (rep.multipliers_ok) rep.support_ok = supports_inside(cert.blocks[0].terms, half_support(f));
      break;
    }
    case CertificateKind::reznick:
    case CertificateKind::hilbert: {
      rep.multipliers_ok = cert.blocks.size() == 1 && cert.blocks[0].multiplier == one && cert.scalars.empty() &&
                           cert.denominator.has_value();
      if (!rep.multipliers_ok) break;
      Polynomial den = expand_terms(*cert.denominator, n);
      if (den.is_zero()) {
        rep.multipliers_ok = false;
        rep.notes.push_back("zero denominator");
        break;
      }
      if (cert.kind == CertificateKind::reznick) {
        Polynomial g(n);
        for (std::size_t i = 0; i < n; ++i) g += pow(Polynomial::variable(n, i), 2);
        if (!(den == pow(g, cert.degree))) {
          rep.multipliers_ok = false;
          rep.notes.push_back("denominator is not (X1^2 + ... + Xn^2)^" + std::to_string(cert.degree));
        }
      } else {
        for (const auto& s : cert.denominator->polys)
          if (s.degree() > static_cast<int>(cert.degree)) rep.degree_ok = false;
        if (!rep.degree_ok) rep.notes.push_back("denominator square exceeds degree " + std::to_string(cert.degree));
      }
      target = f * den;
      rep.support_ok = supports_inside(cert.blocks[0].terms, half_support(target));
      break;
    }
    case CertificateKind::putinar: {
      if (!constraints) {
        rep.multipliers_ok = false;
        rep.notes.push_back("constraints are required to check a Putinar certificate");
        break;
      }
      for (const auto& b : cert.blocks) {
        bool known = b.multiplier == one;
        for (const auto& g : *constraints) known = known || b.multiplier == g;
        if (!known) {
          rep.multipliers_ok = false;
          rep.notes.push_back("block multiplier " + render(b.multiplier) + " is not a constraint");
        }
        const int mdeg = b.multiplier.degree();
        for (const auto& s : b.terms.polys)
          if (!s.is_zero() && 2 * s.degree() + mdeg > static_cast<int>(cert.degree)) rep.degree_ok = false;
      }
      for (const auto& s : cert.scalars) {
        if (!is_scalar_poly(s.poly)) {
          rep.multipliers_ok = false;
          rep.notes.push_back("scalar term " + render(s.poly) + " is not of the form 1 - X^(2a)");
        }
        if (s.poly.degree() > static_cast<int>(cert.degree)) rep.degree_ok = false;
      }
      if (!rep.degree_ok) rep.notes.push_back("a product exceeds degree " + std::to_string(cert.degree));
      break;
    }
  }
  if (!rep.support_ok) rep.notes.push_back("a square has support outside the half Newton polytope");

  Polynomial got = reconstruct(cert);
  Polynomial diff = got - target;
  rep.identity_ok = diff.is_zero();
  for (const auto& [m, c] : diff.terms()) rep.mismatches.push_back(Mismatch{m, target.coeff(m), got.coeff(m)});
  return rep;
}

}  // namespace ratsos
