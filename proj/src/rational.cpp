#include "ratsos/rational.hpp"

#include <cctype>
#include <cstdio>

#include "ratsos/errors.hpp"

namespace ratsos {

std::size_t bit_size(const Integer& b) { return mpz_sizeinbase(b.get_mpz_t(), 2); }

std::size_t bit_size(const Rational& q) {
  return std::max(bit_size(Integer(q.get_num())), bit_size(Integer(q.get_den())));
}

Rational pow2(long e) {
  Integer one = 1;
  Integer p;
  mpz_mul_2exp(p.get_mpz_t(), one.get_mpz_t(), static_cast<mp_bitcnt_t>(e < 0 ? -e : e));
  if (e >= 0) return Rational(p);
  return Rational(Integer(1), p);
}

long floor_log2(const Rational& x) {
  if (sgn(x) == 0) throw Error(Errc::invalid_argument, "floor_log2 of zero");
  Rational a = ratsos::abs(x);
  long e = static_cast<long>(bit_size(Integer(a.get_num()))) -
           static_cast<long>(bit_size(Integer(a.get_den())));
  // 2^(e-1) < a < 2^(e+1)
  if (a < pow2(e)) --e;
  return e;
}

Rational abs(const Rational& x) { return sgn(x) < 0 ? Rational(-x) : x; }

int sign(const Rational& x) { return sgn(x); }

namespace {

// Nearest integer to x, ties away from zero.
Integer round_nearest(const Rational& x) {
  Rational a = ratsos::abs(x) + Rational(1, 2);
  Integer m;
  mpz_fdiv_q(m.get_mpz_t(), a.get_num_mpz_t(), a.get_den_mpz_t());
  return sgn(x) < 0 ? Integer(-m) : m;
}

Integer trunc_integer(const Rational& x) {
  Integer m;
  mpz_tdiv_q(m.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return m;
}

}  // namespace

Rational round_fixed(const Rational& x, unsigned frac_bits) {
  Rational scaled = x * pow2(static_cast<long>(frac_bits));
  Rational out(round_nearest(scaled));
  out *= pow2(-static_cast<long>(frac_bits));
  out.canonicalize();
  return out;
}

Rational truncate_fixed(const Rational& x, unsigned frac_bits) {
  Rational scaled = x * pow2(static_cast<long>(frac_bits));
  Rational out(trunc_integer(scaled));
  out *= pow2(-static_cast<long>(frac_bits));
  out.canonicalize();
  return out;
}

Rational round_float(const Rational& x, unsigned mant_bits) {
  if (sgn(x) == 0) return Rational(0);
  long e = floor_log2(x);
  long shift = static_cast<long>(mant_bits) - 1 - e;
  Rational out(round_nearest(x * pow2(shift)));
  out *= pow2(-shift);
  out.canonicalize();
  return out;
}

Rational sqrt_float(const Rational& x, unsigned mant_bits) {
  if (sgn(x) < 0) throw Error(Errc::invalid_argument, "sqrt of negative rational");
  if (sgn(x) == 0) return Rational(0);
  long e = floor_log2(x);
  // scale so that the integer square root carries mant_bits + 8 bits
  long k = static_cast<long>(mant_bits) + 8 - e / 2 + 1;
  Rational scaled = x * pow2(2 * k);
  Integer n = trunc_integer(scaled);
  Integer s;
  mpz_sqrt(s.get_mpz_t(), n.get_mpz_t());
  Rational approx(s);
  approx *= pow2(-k);
  approx.canonicalize();
  return round_float(approx, mant_bits);
}

Rational parse_rational(std::string_view text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
  if (s.empty()) throw ParseError("empty rational", 0);
  bool negative = false;
  std::size_t pos = 0;
  if (s[0] == '-' || s[0] == '+') {
    negative = s[0] == '-';
    pos = 1;
  }
  std::string body = s.substr(pos);
  Rational value;
  auto digits_only = [](std::string_view v) {
    if (v.empty()) return false;
    for (char c : v)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  if (auto caret = body.find('^'); caret != std::string::npos) {
    std::string base = body.substr(0, caret);
    std::string exponent = body.substr(caret + 1);
    bool neg_exp = !exponent.empty() && exponent[0] == '-';
    if (neg_exp || (!exponent.empty() && exponent[0] == '+')) exponent.erase(0, 1);
    if (!digits_only(base) || !digits_only(exponent))
      throw ParseError("malformed power '" + s + "'", pos);
    Integer b(base, 10);
    unsigned long k = std::stoul(exponent);
    Integer p;
    mpz_pow_ui(p.get_mpz_t(), b.get_mpz_t(), k);
    if (neg_exp) {
      if (p == 0) throw ParseError("zero to a negative power", pos);
      value = Rational(Integer(1), p);
    } else {
      value = Rational(p);
    }
  } else if (auto slash = body.find('/'); slash != std::string::npos) {
    std::string num = body.substr(0, slash);
    std::string den = body.substr(slash + 1);
    if (!digits_only(num) || !digits_only(den)) throw ParseError("malformed fraction '" + s + "'", pos);
    Integer d(den, 10);
    if (d == 0) throw ParseError("zero denominator", pos + slash + 1);
    value = Rational(Integer(num, 10), d);
  } else if (auto dot = body.find('.'); dot != std::string::npos) {
    std::string ip = body.substr(0, dot);
    std::string fp = body.substr(dot + 1);
    if (ip.empty()) ip = "0";
    if (!digits_only(ip) || (!fp.empty() && !digits_only(fp)))
      throw ParseError("malformed decimal '" + s + "'", pos);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, fp.size());
    value = Rational(Integer(ip + fp, 10), scale);
  } else {
    if (!digits_only(body)) throw ParseError("malformed rational '" + s + "'", pos);
    value = Rational(Integer(body, 10));
  }
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_decimal(const Rational& q, int digits) {
  Integer den = q.get_den();
  Integer rest = den;
  unsigned long twos = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), Integer(2).get_mpz_t());
  unsigned long fives = mpz_remove(rest.get_mpz_t(), rest.get_mpz_t(), Integer(5).get_mpz_t());
  std::string sign_str = sgn(q) < 0 ? "-" : "";
  Rational a = ratsos::abs(q);
  if (rest == 1) {
    unsigned long places = std::max(twos, fives);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, places);
    Rational scaled = a * scale;
    Integer m = scaled.get_num();  // exact integer
    std::string s = m.get_str();
    if (places == 0) return sign_str + s;
    if (s.size() <= places) s = std::string(places - s.size() + 1, '0') + s;
    s.insert(s.size() - places, ".");
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
    return sign_str + s;
  }
  // scientific with `digits` significant digits
  long e10 = 0;
  Rational v = a;
  Rational ten(10);
  while (v >= ten) { v /= ten; ++e10; }
  while (v < 1) { v *= ten; --e10; }
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits - 1));
  Rational scaled = v * scale + Rational(1, 2);
  Integer m;
  mpz_fdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  std::string s = m.get_str();
  if (static_cast<int>(s.size()) > digits) {  // rounding carried into a new digit
    s.pop_back();
    ++e10;
  }
  std::string mant = s.substr(0, 1) + "." + s.substr(1);
  return sign_str + mant + "e" + std::to_string(e10);
}

std::string to_approx(const Rational& q) {
  if (sgn(q) == 0) return "0";
  const long e = floor_log2(abs(q));
  if (e < -1000 || e > 1000) return std::string(sgn(q) < 0 ? "-" : "") + "2^" + std::to_string(e);
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", q.get_d());
  return buf;
}

}  // namespace ratsos
