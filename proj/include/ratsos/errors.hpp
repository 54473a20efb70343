#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ratsos {

enum class Errc {
  parse_error,
  dimension_mismatch,
  invalid_argument,
  zero_polynomial,
  odd_degree,
  not_sos,
  not_a_form,
  epsilon_underflow,
  precision_ceiling,
  unabsorbable_monomial,
  degree_cap_exceeded,
  non_positive,
  not_psd,
  malformed_certificate,
  solver_failure,
  soundness_failure,
};

std::string_view errc_name(Errc code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(Errc::parse_error, what + " at position " + std::to_string(position)),
        position_(position) {}

  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

}  // namespace ratsos
