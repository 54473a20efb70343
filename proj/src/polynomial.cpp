#include "ratsos/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <ostream>

#include "ratsos/errors.hpp"

namespace ratsos {

unsigned Monomial::degree() const { return std::accumulate(exp.begin(), exp.end(), 0u); }

bool Monomial::is_even() const {
  return std::all_of(exp.begin(), exp.end(), [](unsigned e) { return e % 2 == 0; });
}

Monomial Monomial::half() const {
  Monomial h(exp.size());
  for (std::size_t i = 0; i < exp.size(); ++i) h.exp[i] = exp[i] / 2;
  return h;
}

Monomial Monomial::twice() const {
  Monomial h(exp.size());
  for (std::size_t i = 0; i < exp.size(); ++i) h.exp[i] = 2 * exp[i];
  return h;
}

bool Monomial::divisible_by(const Monomial& other) const {
  for (std::size_t i = 0; i < exp.size(); ++i)
    if (other.exp[i] > exp[i]) return false;
  return true;
}

Monomial operator+(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw Error(Errc::dimension_mismatch, "monomial sizes differ");
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) c.exp[i] = a.exp[i] + b.exp[i];
  return c;
}

Monomial operator-(const Monomial& a, const Monomial& b) {
  if (a.size() != b.size()) throw Error(Errc::dimension_mismatch, "monomial sizes differ");
  Monomial c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (b.exp[i] > a.exp[i]) throw Error(Errc::invalid_argument, "negative exponent in difference");
    c.exp[i] = a.exp[i] - b.exp[i];
  }
  return c;
}

bool RenderOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da > db;
  return a.exp > b.exp;
}

bool BasisOrder::operator()(const Monomial& a, const Monomial& b) const {
  unsigned da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exp > b.exp;
}

std::string to_string(const Monomial& m) {
  std::string s = "(";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(m.exp[i]);
  }
  return s + ")";
}

Polynomial::Polynomial(std::size_t nvars, const Rational& constant) : n_(nvars) {
  if (sgn(constant) != 0) terms_.emplace(Monomial(nvars), constant);
}

Polynomial Polynomial::monomial(const Monomial& m, const Rational& c) {
  Polynomial p(m.size());
  p.add_term(m, c);
  return p;
}

Polynomial Polynomial::variable(std::size_t nvars, std::size_t index) {
  if (index >= nvars) throw Error(Errc::invalid_argument, "variable index out of range");
  Monomial m(nvars);
  m.exp[index] = 1;
  return monomial(m);
}

Rational Polynomial::coeff(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rational(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
  if (m.size() != n_) throw Error(Errc::dimension_mismatch, "monomial has wrong number of variables");
  if (sgn(c) == 0) return;
  Rational v = c;
  v.canonicalize();
  auto [it, inserted] = terms_.emplace(m, v);
  if (!inserted) {
    it->second += v;
    if (sgn(it->second) == 0) terms_.erase(it);
  }
}

int Polynomial::degree() const {
  if (terms_.empty()) return -1;
  return static_cast<int>(terms_.begin()->first.degree());
}

bool Polynomial::is_form() const {
  if (terms_.empty()) return true;
  unsigned d = terms_.begin()->first.degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const auto& t) { return t.first.degree() == d; });
}

std::vector<Monomial> Polynomial::support() const {
  std::vector<Monomial> s;
  s.reserve(terms_.size());
  for (const auto& [m, c] : terms_) s.push_back(m);
  return s;
}

Rational Polynomial::eval(const std::vector<Rational>& point) const {
  if (point.size() != n_) throw Error(Errc::dimension_mismatch, "evaluation point has wrong length");
  // cache powers per variable
  std::vector<std::vector<Rational>> powers(n_);
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational term = c;
    for (std::size_t i = 0; i < n_; ++i) {
      auto& pw = powers[i];
      if (pw.empty()) {
        Rational x = point[i];
        x.canonicalize();
        pw.push_back(Rational(1));
        pw.push_back(x);
      }
      while (pw.size() <= m.exp[i]) pw.push_back(pw.back() * pw[1]);
      term *= pw[m.exp[i]];
    }
    sum += term;
  }
  return sum;
}

void Polynomial::check_same(const Polynomial& o) const {
  if (n_ != o.n_)
    throw Error(Errc::dimension_mismatch, "polynomials in " + std::to_string(n_) + " and " +
                                               std::to_string(o.n_) + " variables");
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  check_same(o);
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (sgn(c) == 0) {
    terms_.clear();
    return *this;
  }
  Rational k = c;
  k.canonicalize();
  for (auto& [m, v] : terms_) v *= k;
  return *this;
}

Polynomial operator-(Polynomial a) { return a *= Rational(-1); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.check_same(b);
  Polynomial r(a.n_);
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term(ma + mb, ca * cb);
  return r;
}

Polynomial pow(const Polynomial& p, long k) {
  if (k < 0) throw Error(Errc::invalid_argument, "negative polynomial exponent");
  Polynomial result(p.nvars(), Rational(1));
  Polynomial base = p;
  while (k > 0) {
    if (k & 1) result = result * base;
    k >>= 1;
    if (k) base = base * base;
  }
  return result;
}

Polynomial scale(const Polynomial& p, const Rational& c) { return p * c; }

BitSize coeff_bitsize(const Polynomial& f) {
  BitSize b{1};
  for (const auto& [m, c] : f.terms()) b.value = std::max(b.value, bit_size(c));
  return b;
}

Rational multinomial_norm(const Polynomial& f) {
  auto factorial = [](unsigned k) {
    Integer r;
    mpz_fac_ui(r.get_mpz_t(), k);
    return r;
  };
  Rational best = 0;
  for (const auto& [m, c] : f.terms()) {
    Integer num = 1;
    for (unsigned e : m.exp) num *= factorial(e);
    Rational v = ratsos::abs(c) * Rational(num, factorial(m.degree()));
    v.canonicalize();
    best = std::max(best, v);
  }
  return best;
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::size_t nvars) : s_(text), n_(nvars) {}

  Polynomial parse() {
    Polynomial result(n_);
    skip();
    if (at_end()) throw ParseError("empty polynomial", pos_);
    bool first = true;
    while (!at_end()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = peek() == '-' ? -1 : 1;
        ++pos_;
        skip();
      } else if (!first) {
        throw ParseError(std::string("expected '+' or '-' but found '") + peek() + "'", pos_);
      }
      first = false;
      auto [m, c] = term();
      result.add_term(m, sign < 0 ? Rational(-c) : c);
      skip();
    }
    return result;
  }

 private:
  bool at_end() const { return pos_ >= s_.size(); }
  char peek() const { return s_[pos_]; }
  void skip() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(peek()))) ++pos_;
  }
  bool digit() const { return !at_end() && std::isdigit(static_cast<unsigned char>(peek())); }

  std::string digits() {
    std::size_t start = pos_;
    while (digit()) ++pos_;
    if (start == pos_) throw ParseError("expected digits", pos_);
    return std::string(s_.substr(start, pos_ - start));
  }

  long signed_int() {
    skip();
    bool neg = false;
    if (!at_end() && (peek() == '-' || peek() == '+')) {
      neg = peek() == '-';
      ++pos_;
      skip();
    }
    std::size_t at = pos_;
    std::string d = digits();
    if (d.size() > 9) throw ParseError("exponent too large", at);
    long v = std::stol(d);
    return neg ? -v : v;
  }

  std::pair<Monomial, Rational> term() {
    Monomial m(n_);
    Rational c = 1;
    bool any = false;
    while (true) {
      skip();
      if (at_end()) throw ParseError("unexpected end of input", pos_);
      if (peek() == 'X' || peek() == 'x') {
        ++pos_;
        std::size_t at = pos_;
        std::string d = digits();
        unsigned long idx = d.size() > 6 ? 0 : std::stoul(d);
        if (idx < 1 || idx > n_)
          throw ParseError("variable X" + d + " out of range 1.." + std::to_string(n_), at);
        long k = 1;
        skip();
        if (!at_end() && peek() == '^') {
          ++pos_;
          std::size_t at2 = pos_;
          k = signed_int();
          if (k < 0) throw ParseError("negative exponent", at2);
        }
        m.exp[idx - 1] += static_cast<unsigned>(k);
      } else if (digit()) {
        Rational num{Integer(digits(), 10)};
        skip();
        if (!at_end() && peek() == '/') {
          ++pos_;
          skip();
          std::size_t at = pos_;
          Integer den(digits(), 10);
          if (den == 0) throw ParseError("zero denominator", at);
          num /= Rational(den);
        } else if (!at_end() && peek() == '^') {
          ++pos_;
          long k = signed_int();
          Rational base = num;
          num = 1;
          for (long i = 0; i < (k < 0 ? -k : k); ++i) num *= base;
          if (k < 0) {
            if (sgn(num) == 0) throw ParseError("zero to a negative power", pos_);
            num = 1 / num;
          }
        }
        c *= num;
      } else {
        throw ParseError(std::string("unexpected character '") + peek() + "'", pos_);
      }
      any = true;
      skip();
      if (!at_end() && peek() == '*') {
        ++pos_;
        continue;
      }
      break;
    }
    if (!any) throw ParseError("empty term", pos_);
    c.canonicalize();
    return {m, c};
  }

  std::string_view s_;
  std::size_t n_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, std::size_t nvars) {
  return Parser(text, nvars).parse();
}

std::string render(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : f.terms()) {
    bool neg = sgn(c) < 0;
    Rational a = neg ? Rational(-c) : c;
    if (first) {
      if (neg) out += "-";
    } else {
      out += neg ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m.exp[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += "X" + std::to_string(i + 1);
      if (m.exp[i] > 1) mono += "^" + std::to_string(m.exp[i]);
    }
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

std::ostream& operator<<(std::ostream& os, const Polynomial& f) { return os << render(f); }

std::size_t infer_nvars(std::string_view text) {
  std::size_t n = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != 'X' && text[i] != 'x') continue;
    std::size_t j = i + 1, v = 0;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j])) && j - i < 8)
      v = v * 10 + static_cast<std::size_t>(text[j++] - '0');
    n = std::max(n, v);
  }
  return std::max<std::size_t>(n, 1);
}

}  // namespace ratsos
