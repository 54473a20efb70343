#pragma once

// Sparse multivariate polynomials with exact rational coefficients.

#include <cstddef>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ratsos/rational.hpp"

namespace ratsos {

struct Monomial {
  std::vector<unsigned> exp;

  Monomial() = default;
  explicit Monomial(std::size_t n) : exp(n, 0) {}
  Monomial(std::initializer_list<unsigned> e) : exp(e) {}
  explicit Monomial(std::vector<unsigned> e) : exp(std::move(e)) {}

  std::size_t size() const { return exp.size(); }
  unsigned operator[](std::size_t i) const { return exp[i]; }
  unsigned& operator[](std::size_t i) { return exp[i]; }
  unsigned degree() const;
  bool is_even() const;
  /// exp / 2, requires is_even().
  Monomial half() const;
  Monomial twice() const;
  /// True when every entry of `other` is <= the matching entry here.
  bool divisible_by(const Monomial& other) const;

  friend Monomial operator+(const Monomial& a, const Monomial& b);
  /// Entrywise difference; requires a.divisible_by(b).
  friend Monomial operator-(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.exp == b.exp; }
};

/// Degree descending, then lexicographically descending. Used for rendering.
struct RenderOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

/// Degree ascending, then lexicographically descending. Used for Gram bases,
/// e.g. (0,0) < (1,0) < (0,1) < (2,0) < (1,1) < (0,2).
struct BasisOrder {
  bool operator()(const Monomial& a, const Monomial& b) const;
};

std::string to_string(const Monomial& m);

class Polynomial {
 public:
  using TermMap = std::map<Monomial, Rational, RenderOrder>;

  Polynomial() = default;
  explicit Polynomial(std::size_t nvars) : n_(nvars) {}
  Polynomial(std::size_t nvars, const Rational& constant);

  static Polynomial monomial(const Monomial& m, const Rational& c = 1);
  static Polynomial variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return n_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Coefficient at m (zero when absent).
  Rational coeff(const Monomial& m) const;
  /// Adds c to the coefficient at m, dropping the entry if it cancels.
  void add_term(const Monomial& m, const Rational& c);

  /// -1 for the zero polynomial.
  int degree() const;
  bool is_form() const;
  std::vector<Monomial> support() const;

  Rational eval(const std::vector<Rational>& point) const;

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator-(Polynomial a);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Rational& c) { return a *= c; }
  friend Polynomial operator*(const Rational& c, Polynomial a) { return a *= c; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) {
    return a.n_ == b.n_ && a.terms_ == b.terms_;
  }

 private:
  void check_same(const Polynomial& o) const;

  std::size_t n_ = 0;
  TermMap terms_;
};

Polynomial pow(const Polynomial& p, long k);
Polynomial scale(const Polynomial& p, const Rational& c);

struct BitSize {
  std::size_t value = 1;
  friend bool operator==(BitSize a, BitSize b) { return a.value == b.value; }
};

/// Max reduced-fraction bit size over the coefficients (1 for zero).
BitSize coeff_bitsize(const Polynomial& f);

/// max_α |f_α| α_1!...α_n! / |α|!.
Rational multinomial_norm(const Polynomial& f);

/// Parses the ASCII grammar: terms joined by + / -, each a product of rational
/// coefficients and powers Xi^k. Variable indices must lie in 1..nvars.
Polynomial parse_polynomial(std::string_view text, std::size_t nvars);

std::string render(const Polynomial& f);
std::ostream& operator<<(std::ostream& os, const Polynomial& f);

/// Smallest n such that every Xi occurring in the text has i <= n.
std::size_t infer_nvars(std::string_view text);

}  // namespace ratsos
