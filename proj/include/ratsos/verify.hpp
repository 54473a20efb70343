#pragma once

// Exact certificate checking. Only polynomial arithmetic and lattice
// polytopes are used here, nothing numeric.

#include <optional>
#include <string>
#include <vector>

#include "ratsos/certificate.hpp"

namespace ratsos {

struct Mismatch {
  Monomial gamma;
  Rational expected;  // coefficient of the target
  Rational actual;    // coefficient of the reconstruction
};

struct VerifyReport {
  bool identity_ok = false;
  bool weights_ok = false;
  bool support_ok = false;
  bool degree_ok = false;
  bool multipliers_ok = false;
  std::vector<Mismatch> mismatches;
  std::vector<std::string> notes;

  bool verified() const { return identity_ok && weights_ok && support_ok && degree_ok && multipliers_ok; }
  std::string summary() const;
};

/// sum_j g_j sum_i c_ij s_ij^2 + sum_a c_a (1 - X^{2a}); for kinds with a
/// denominator this is the numerator.
Polynomial reconstruct(const Certificate& cert);

/// `constraints` must be given for Putinar certificates.
VerifyReport verify(const Polynomial& f, const Certificate& cert,
                    const std::optional<std::vector<Polynomial>>& constraints = std::nullopt);

}  // namespace ratsos
