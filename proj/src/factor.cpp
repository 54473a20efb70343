#include "ratsos/factor.hpp"

#include "ratsos/errors.hpp"

namespace ratsos {

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix I(n, n);
  for (std::size_t i = 0; i < n; ++i) I(i, i) = 1;
  return I;
}

bool RationalMatrix::is_symmetric() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < i; ++j)
      if ((*this)(i, j) != (*this)(j, i)) return false;
  return true;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

Rational RationalMatrix::frobenius_squared() const {
  Rational s = 0;
  for (const auto& x : a_) s += x * x;
  return s;
}

RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(Errc::dimension_mismatch, "matrix product shapes");
  RationalMatrix c(a.rows_, b.cols_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      if (sgn(a(i, k)) == 0) continue;
      for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

RationalMatrix operator-(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(Errc::dimension_mismatch, "matrix difference shapes");
  RationalMatrix c(a.rows_, a.cols_);
  for (std::size_t i = 0; i < a.a_.size(); ++i) c.a_[i] = a.a_[i] - b.a_[i];
  return c;
}

void SosTerms::append(const Rational& w, Polynomial p) {
  weights.push_back(w);
  polys.push_back(std::move(p));
}

void SosTerms::append(const SosTerms& other) {
  for (std::size_t i = 0; i < other.size(); ++i) append(other.weights[i], other.polys[i]);
}

Polynomial SosTerms::expand(std::size_t nvars) const {
  Polynomial sum(polys.empty() ? nvars : polys.front().nvars());
  for (std::size_t i = 0; i < size(); ++i) sum += weights[i] * (polys[i] * polys[i]);
  return sum;
}

Polynomial gram_polynomial(const RationalMatrix& G, const SupportBasis& basis) {
  if (G.rows() != basis.size() || G.cols() != basis.size())
    throw Error(Errc::dimension_mismatch, "Gram matrix size differs from basis size");
  Polynomial p(basis.nvars());
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = 0; j < basis.size(); ++j) p.add_term(basis[i] + basis[j], G(i, j));
  return p;
}

unsigned required_cholesky_bits(const Rational& lambda, std::size_t r, unsigned bits) {
  if (sgn(lambda) <= 0) throw Error(Errc::non_positive, "eigenvalue bound must be positive");
  Rational rr(static_cast<long>(r));
  Rational bound = lambda / (rr * rr + rr + (rr - 1) * lambda);
  unsigned b = std::max(bits, 1u);
  while (pow2(-static_cast<long>(b)) >= bound) ++b;
  return b;
}

namespace {

Rational rnd(const Rational& x, unsigned bits) { return round_float(x, bits); }

// Square root correctly rounded to `bits` significant bits.
Rational rounded_sqrt(const Rational& x, unsigned bits) {
  Rational c = sqrt_float(x, bits);
  if (sgn(c) == 0) return c;
  for (int guard = 0; guard < 8; ++guard) {
    Rational half_ulp = pow2(floor_log2(c) - static_cast<long>(bits));
    Rational hi = c + half_ulp, lo = c - half_ulp;
    if (hi * hi < x) {
      c = rnd(c + 2 * half_ulp, bits);
    } else if (lo * lo > x) {
      c = rnd(c - 2 * half_ulp, bits);
    } else {
      break;
    }
  }
  return c;
}

}  // namespace

RationalMatrix rounded_cholesky(const RationalMatrix& G, unsigned bits) {
  const std::size_t r = G.rows();
  if (!G.is_symmetric()) throw Error(Errc::invalid_argument, "Cholesky input is not symmetric");
  RationalMatrix L(r, r);
  for (std::size_t j = 0; j < r; ++j) {
    Rational d = G(j, j);
    for (std::size_t k = 0; k < j; ++k) d = rnd(d - rnd(L(j, k) * L(j, k), bits), bits);
    if (sgn(d) <= 0)
      throw Error(Errc::non_positive, "rounded Cholesky pivot " + std::to_string(j) + " is not positive");
    L(j, j) = rounded_sqrt(d, bits);
    for (std::size_t i = j + 1; i < r; ++i) {
      Rational s = G(i, j);
      for (std::size_t k = 0; k < j; ++k) s = rnd(s - rnd(L(i, k) * L(j, k), bits), bits);
      L(i, j) = rnd(s / L(j, j), bits);
    }
  }
  return L;
}

SosTerms approx_cholesky(const RationalMatrix& G, const Rational& lambda, unsigned bits,
                         const SupportBasis& basis, unsigned* bits_used) {
  const std::size_t r = G.rows();
  if (r != basis.size()) throw Error(Errc::dimension_mismatch, "Gram matrix size differs from basis size");
  unsigned b = required_cholesky_bits(lambda, r, bits);
  if (bits_used) *bits_used = b;
  RationalMatrix L = rounded_cholesky(G, b);
  SosTerms out;
  for (std::size_t i = 0; i < r; ++i) {
    Polynomial s(basis.nvars());
    for (std::size_t a = i; a < r; ++a) s.add_term(basis[a], L(a, i));
    out.append(Rational(1), std::move(s));
  }
  return out;
}

LdlResult exact_ldlt(const RationalMatrix& G, const SupportBasis& basis) {
  const std::size_t r = G.rows();
  if (!G.is_symmetric()) throw Error(Errc::invalid_argument, "LDL input is not symmetric");
  if (r != basis.size()) throw Error(Errc::dimension_mismatch, "Gram matrix size differs from basis size");
  RationalMatrix S = G;  // running Schur complement (lower part used)
  LdlResult res{RationalMatrix::identity(r), std::vector<Rational>(r), SosTerms{}};
  for (std::size_t k = 0; k < r; ++k) {
    const Rational d = S(k, k);
    if (sgn(d) < 0) throw Error(Errc::not_psd, "negative pivot at index " + std::to_string(k));
    if (sgn(d) == 0) {
      for (std::size_t i = k + 1; i < r; ++i)
        if (sgn(S(i, k)) != 0)
          throw Error(Errc::not_psd, "zero pivot with nonzero column at index " + std::to_string(k));
      continue;
    }
    res.diag[k] = d;
    for (std::size_t i = k + 1; i < r; ++i) res.lower(i, k) = S(i, k) / d;
    for (std::size_t i = k + 1; i < r; ++i) {
      if (sgn(S(i, k)) == 0) continue;
      for (std::size_t j = k + 1; j <= i; ++j) {
        S(i, j) -= res.lower(i, k) * S(j, k);
        S(j, i) = S(i, j);
      }
    }
  }
  for (std::size_t k = 0; k < r; ++k) {
    if (sgn(res.diag[k]) == 0) continue;
    Polynomial s(basis.nvars());
    for (std::size_t i = k; i < r; ++i) s.add_term(basis[i], res.lower(i, k));
    res.terms.append(res.diag[k], std::move(s));
  }
  return res;
}

bool is_positive_definite(const RationalMatrix& M) {
  const std::size_t r = M.rows();
  if (!M.is_symmetric()) return false;
  RationalMatrix S = M;
  for (std::size_t k = 0; k < r; ++k) {
    if (sgn(S(k, k)) <= 0) return false;
    for (std::size_t i = k + 1; i < r; ++i) {
      if (sgn(S(i, k)) == 0) continue;
      Rational f = S(i, k) / S(k, k);
      for (std::size_t j = k + 1; j <= i; ++j) S(i, j) -= f * S(j, k);
    }
  }
  return true;
}

}  // namespace ratsos
