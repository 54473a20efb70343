#include "ratsos/errors.hpp"

namespace ratsos {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::parse_error: return "ParseError";
    case Errc::dimension_mismatch: return "DimensionMismatch";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::zero_polynomial: return "ZeroPolynomial";
    case Errc::odd_degree: return "OddDegree";
    case Errc::not_sos: return "NotSos";
    case Errc::not_a_form: return "NotAForm";
    case Errc::epsilon_underflow: return "EpsilonUnderflow";
    case Errc::precision_ceiling: return "PrecisionCeiling";
    case Errc::unabsorbable_monomial: return "UnabsorbableMonomial";
    case Errc::degree_cap_exceeded: return "DegreeCapExceeded";
    case Errc::non_positive: return "NonPositive";
    case Errc::not_psd: return "NotPSD";
    case Errc::malformed_certificate: return "MalformedCertificate";
    case Errc::solver_failure: return "SolverFailure";
    case Errc::soundness_failure: return "SoundnessFailure";
  }
  return "Unknown";
}

}  // namespace ratsos
