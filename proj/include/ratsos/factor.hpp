#pragma once

// Precision-controlled Cholesky and exact LDL^T over the rationals.

#include <cstddef>
#include <vector>

#include "ratsos/polynomial.hpp"
#include "ratsos/polytope.hpp"

namespace ratsos {

class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static RationalMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  bool is_symmetric() const;
  RationalMatrix transpose() const;
  Rational frobenius_squared() const;
  friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b);
  friend RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b);
  friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<Rational> a_;
};

/// sum_i weights[i] * polys[i]^2
struct SosTerms {
  std::vector<Rational> weights;
  std::vector<Polynomial> polys;

  std::size_t size() const { return weights.size(); }
  bool empty() const { return weights.empty(); }
  void append(const Rational& w, Polynomial p);
  void append(const SosTerms& other);
  /// Expanded sum; `nvars` is used when the list is empty.
  Polynomial expand(std::size_t nvars) const;
};

/// v^T G v over the basis monomials.
Polynomial gram_polynomial(const RationalMatrix& G, const SupportBasis& basis);

/// Smallest b >= bits with 2^-b < lambda / (r^2 + r + (r-1) lambda).
unsigned required_cholesky_bits(const Rational& lambda, std::size_t r, unsigned bits);

/// Lower triangular L from the Cholesky recurrence where every product,
/// difference, quotient and square root is rounded to `bits` significant bits.
/// Throws NonPositive when a rounded pivot is <= 0.
RationalMatrix rounded_cholesky(const RationalMatrix& G, unsigned bits);

/// Raises `bits` to satisfy the error condition for `lambda`, factors G and
/// returns unit weights with s_i = sum_a L(a, i) X^a.
SosTerms approx_cholesky(const RationalMatrix& G, const Rational& lambda, unsigned bits,
                         const SupportBasis& basis, unsigned* bits_used = nullptr);

struct LdlResult {
  RationalMatrix lower;         // unit lower triangular
  std::vector<Rational> diag;   // D
  SosTerms terms;               // positive pivots only
};

/// Exact G = L D L^T without pivoting. Zero pivots are allowed only when the
/// remaining pivot column vanishes; otherwise throws NotPSD.
LdlResult exact_ldlt(const RationalMatrix& G, const SupportBasis& basis);

/// Exact test that a symmetric matrix is positive definite.
bool is_positive_definite(const RationalMatrix& M);

}  // namespace ratsos
