// Prints one PASS/FAIL line per acceptance criterion; exit status 0 iff all pass.
#include <chrono>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "ratsos/bench.hpp"
#include "ratsos/errors.hpp"
#include "ratsos/extensions.hpp"
#include "ratsos/factor.hpp"
#include "ratsos/polytope.hpp"
#include "ratsos/putinar.hpp"
#include "ratsos/unconstrained.hpp"
#include "ratsos/verify.hpp"

using namespace ratsos;

namespace {

const char* kQuartic = "4*X1^4 + 4*X1^3*X2 - 7*X1^2*X2^2 - 2*X1*X2^3 + 10*X2^4";
const char* kMotzkin = "X3^6 + X1^4*X2^2 + X1^2*X2^4 - 3*X1^2*X2^2*X3^2";

Polynomial P(const std::string& s, std::size_t n = 2) { return parse_polynomial(s, n); }

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool cond, const std::string& what) {
    if (!cond) {
      if (pass) detail << what;
      pass = false;
    }
  }
};

Certificate plain(const Polynomial& f, const SosTerms& t) {
  Certificate c;
  c.nvars = f.nvars();
  c.input = f;
  c.degree = static_cast<unsigned>(f.degree());
  c.blocks.push_back(SosBlock{Polynomial(f.nvars(), Rational(1)), t});
  return c;
}

CertifyOptions worked_options() {
  CertifyOptions o;
  o.prec.eps = 1;
  o.prec.delta = 60;
  o.prec.radius = 60;
  o.prec.chol = 10;
  return o;
}

// f = p1^2 + p2^2 + p3^2 + 2^-5 t with random p_i of degree <= 2 in n <= 3 variables
Polynomial random_interior(std::mt19937& rng, int i) {
  std::uniform_int_distribution<long> coef(-6, 6);
  const std::size_t n = 1 + static_cast<std::size_t>(i % 3);
  const unsigned d = 1 + static_cast<unsigned>((i / 3) % 2);
  const SupportBasis basis = degree_simplex_points(n, d);
  Polynomial f(n);
  for (int k = 0; k < 3; ++k) {
    Polynomial p(n);
    for (const auto& a : basis.points()) p.add_term(a, Rational(coef(rng)));
    f += p * p;
  }
  return f + pow2(-5) * even_sum(basis);
}

std::vector<Polynomial> random_suite() {
  std::mt19937 rng(2024);
  std::vector<Polynomial> fs;
  for (int i = 0; i < 100; ++i) fs.push_back(random_interior(rng, i));
  return fs;
}

std::vector<Certificate> ac9_outputs;

Outcome ac1() {
  Outcome o;
  const Polynomial f = P(kQuartic);
  SosTerms t;
  t.append(1, P("2*X1*X2 + X2^2"));
  t.append(1, P("2*X1^2 + X1*X2 - 3*X2^2"));
  const Certificate c = plain(f, t);
  const auto t0 = Clock::now();
  const bool ok = verify(f, c).verified();
  const double s = since(t0);
  o.require(ok, "two-square certificate rejected");
  o.require(s < 1e-3, "took " + std::to_string(s) + " s");
  o.detail << (o.pass ? "" : "; ") << s * 1e3 << " ms";
  return o;
}

Outcome ac2() {
  Outcome o;
  const Polynomial f = P(kQuartic);
  const SupportBasis Q = half_lattice_points(newton_polytope(f));
  o.require(Q == SupportBasis({Monomial{2, 0}, Monomial{1, 1}, Monomial{0, 2}}), "Q differs from {(2,0),(1,1),(0,2)}");
  const auto t0 = Clock::now();
  const Certificate c = intsos(f, worked_options());
  const double s = since(t0);
  o.require(verify(f, c).verified(), "intsos certificate not verified");
  o.require(s < 10, "took " + std::to_string(s) + " s");
  // absorb fed the printed squares and remainder
  EpsilonMap eps(Q, 1);
  SosTerms acc;
  absorb(P("-X1^4 - 1/9*X1^2*X2^2 - 2/3*X1*X2^3 - 781/1764*X2^4"), Q, eps, acc);
  o.require(eps.values.at(Monomial{2, 0}) == 0 && eps.values.at(Monomial{1, 1}) == Rational(5, 9) &&
                eps.values.at(Monomial{0, 2}) == Rational(395, 1764),
            "printed absorb weights not reproduced");
  o.detail << (o.pass ? "" : "; ") << s << " s, final eps " << to_string(c.info->eps);
  return o;
}

Outcome ac3() {
  Outcome o;
  const Polynomial f = (1 + pow2(-20)) * P("X3^6 + X1^4*X2^2 + X1^2*X2^4", 3) - P("3*X1^2*X2^2*X3^2", 3);
  CertifyOptions opts;
  opts.prec.eps = pow2(-20);
  const auto t0 = Clock::now();
  try {
    const Certificate c = reznicksos(f, opts);
    const double s = since(t0);
    o.require(c.degree == 1, "D = " + std::to_string(c.degree));
    o.require(verify(f, c).verified(), "certificate not verified");
    o.require(s < 60, "took " + std::to_string(s) + " s");
    o.detail << (o.pass ? "" : "; ") << "D = " << c.degree << ", " << s << " s";
  } catch (const Error& e) {
    o.require(false, e.what());
  }
  return o;
}

Outcome ac4() {
  Outcome o;
  const Polynomial f = P("-X1^2 - 2*X1*X2 - 2*X2^2 + 6");
  const std::vector<Polynomial> S = {P("1 - X1^2"), P("1 - X2^2")};
  o.require(Rational(23853407, 292204836) + Rational(1, 2442 * 2442) + Rational(121, 49) + Rational(169, 49) == 6,
            "printed constant does not sum to 6");
  Certificate c;
  c.kind = CertificateKind::putinar;
  c.nvars = 2;
  c.input = f;
  c.degree = 2;
  SosTerms s0, s1, s2;
  s0.append(Rational(23853407, 292204836), P("1"));
  s0.append(Rational(23, 49), P("X1"));
  s0.append(Rational(130657269, 291009481), P("X2"));
  s0.append(1, P("1/2442"));
  s0.append(1, P("X1 - X2"));
  s0.append(1, P("1/2437*X2"));
  s1.append(1, P("11/7"));
  s2.append(1, P("13/7"));
  c.blocks = {SosBlock{P("1"), s0}, SosBlock{S[0], s1}, SosBlock{S[1], s2}};
  o.require(verify(f, c, S).verified(), "printed representation rejected");
  const auto t0 = Clock::now();
  try {
    const Certificate own = putinarsos(f, SemialgebraicSet(2, S), worked_options());
    const double s = since(t0);
    o.require(own.degree == 2, "D = " + std::to_string(own.degree));
    o.require(verify(f, own, S).verified(), "computed certificate not verified");
    o.require(s < 60, "took " + std::to_string(s) + " s");
    o.detail << (o.pass ? "" : "; ") << "D = " << own.degree << ", " << s << " s";
  } catch (const Error& e) {
    o.require(false, e.what());
  }
  return o;
}

Outcome ac5() {
  Outcome o;
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-50, 50), den(1, 40), pos(1, 40);
  int done = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t n = 1 + static_cast<std::size_t>(trial % 3);
    // |Q| <= 6: pick up to 6 points of the degree <= 2 simplex
    std::vector<Monomial> pts = degree_simplex_points(n, 2).points();
    std::shuffle(pts.begin(), pts.end(), rng);
    pts.resize(std::min<std::size_t>(pts.size(), 1 + trial % 6));
    const SupportBasis Q(pts);
    Rational e0(pos(rng), den(rng));
    e0.canonicalize();
    EpsilonMap eps(Q, e0);
    const Polynomial before = eps.polynomial(n);
    Polynomial u(n);
    for (int k = 0; k < 5; ++k) {
      Rational c(num(rng), den(rng));
      c.canonicalize();
      u.add_term(Q[rng() % Q.size()] + Q[rng() % Q.size()], c);
    }
    SosTerms acc;
    absorb(u, Q, eps, acc);
    Polynomial added(n);
    bool weights_ok = true;
    for (std::size_t i = 0; i < acc.size(); ++i) {
      weights_ok = weights_ok && acc.weights[i] > 0;
      added += acc.weights[i] * acc.polys[i] * acc.polys[i];
    }
    o.require(weights_ok, "instance " + std::to_string(trial) + ": non-positive weight");
    o.require(added + eps.polynomial(n) == u + before, "instance " + std::to_string(trial) + ": identity fails");
    ++done;
  }
  o.detail << (o.pass ? "" : "; ") << done << " instances";
  return o;
}

Outcome ac6() {
  Outcome o;
  std::mt19937 rng(6);
  std::uniform_int_distribution<int> e(-6, 6), c(1, 4), den(1, 3);
  for (int it = 0; it < 100; ++it) {
    const std::size_t r = 1 + static_cast<std::size_t>(it % 6);
    RationalMatrix B(r, r);
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) B(i, j) = e(rng);
    RationalMatrix G = B * B.transpose();
    const int shift = c(rng);
    const Rational scale(1, den(rng));
    for (std::size_t i = 0; i < r; ++i) G(i, i) += shift;
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < r; ++j) G(i, j) *= scale;
    const Rational lambda = Rational(shift) * scale;
    const unsigned bits = required_cholesky_bits(lambda, r, 10);
    const RationalMatrix L = rounded_cholesky(G, bits);
    const RationalMatrix F = L * L.transpose() - G;
    const Rational u = Rational(static_cast<long>(r + 1)) * pow2(-static_cast<long>(bits));
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b) {
        const Rational lhs = abs(F(a, b)) * (1 - u);
        o.require(1 - u > 0 && lhs * lhs <= u * u * G(a, a) * G(b, b), "instance " + std::to_string(it) + " violates the bound");
      }
  }
  o.detail << (o.pass ? "" : "; ") << "100 matrices";
  return o;
}

Outcome ac7() {
  Outcome o;
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(-200, 200);
  const auto fs = random_suite();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    const Polynomial& f = fs[i];
    const SupportBasis Q = half_lattice_points(newton_polytope(f));
    RationalMatrix Gp(Q.size(), Q.size());
    for (std::size_t a = 0; a < Q.size(); ++a)
      for (std::size_t b = a; b < Q.size(); ++b) {
        Rational v(num(rng), 1024);
        v.canonicalize();
        Gp(a, b) = Gp(b, a) = v;
      }
    const RationalMatrix G = project_gram(Gp, Q, f);
    o.require(G.is_symmetric() && gram_polynomial(G, Q) == f, "instance " + std::to_string(i));
  }
  o.detail << (o.pass ? "" : "; ") << fs.size() << " instances";
  return o;
}

Outcome ac8() {
  Outcome o;
  int certs = 0;
  const auto results = run_suite(builtin_suite("all"), [](const BenchResult&) {});
  const auto instances = builtin_suite("all");
  for (std::size_t i = 0; i < results.size(); ++i) {
    const auto& r = results[i];
    if (!r.certificate) continue;
    ++certs;
    const auto& req = instances[i].request;
    std::optional<std::vector<Polynomial>> S;
    if (r.certificate->kind == CertificateKind::putinar) S = req.constraints;
    o.require(verify(req.f, *r.certificate, S).verified(), r.id + " not verified");
  }
  o.detail << (o.pass ? "" : "; ") << certs << " bench certificates";
  return o;
}

Outcome ac9() {
  Outcome o;
  const auto fs = random_suite();
  for (std::size_t i = 0; i < fs.size(); ++i) {
    for (int m = 0; m < 2; ++m) {
      try {
        Certificate c = m == 0 ? intsos(fs[i]) : round_project(fs[i]);
        o.require(verify(fs[i], c).verified(), "instance " + std::to_string(i) + " not verified");
        ac9_outputs.push_back(std::move(c));
      } catch (const Error& e) {
        o.require(false, "instance " + std::to_string(i) + (m ? " round_project: " : " intsos: ") + e.what());
      }
    }
  }
  o.detail << (o.pass ? "" : "; ") << ac9_outputs.size() << " certificates";
  return o;
}

Outcome ac10() {
  Outcome o;
  for (int run = 0; run < 10; ++run) {
    try {
      intsos(P(kMotzkin, 3));
      o.require(false, "Motzkin certified");
    } catch (const Error& e) {
      o.require(e.code() == Errc::epsilon_underflow, std::string("Motzkin: ") + e.what());
    }
    try {
      intsos(P("X1*X2"));
      o.require(false, "X1*X2 certified");
    } catch (const Error& e) {
      o.require(e.code() == Errc::not_sos, std::string("X1*X2: ") + e.what());
    }
  }
  o.detail << (o.pass ? "" : "; ") << "10 runs each";
  return o;
}

Outcome ac11() {
  Outcome o;
  std::size_t squares = 0;
  o.require(!ac9_outputs.empty(), "no outputs");
  for (const auto& c : ac9_outputs) {
    const SupportBasis Q = half_lattice_points(newton_polytope(c.input));
    for (const auto& b : c.blocks)
      for (const auto& s : b.terms.polys) {
        ++squares;
        for (const auto& [m, coef] : s.terms()) o.require(Q.contains(m), "square with support outside Q");
      }
  }
  o.detail << (o.pass ? "" : "; ") << squares << " squares";
  return o;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"AC1", ac1}, {"AC2", ac2}, {"AC3", ac3}, {"AC4", ac4},   {"AC5", ac5},   {"AC6", ac6},
      {"AC7", ac7}, {"AC8", ac8}, {"AC9", ac9}, {"AC10", ac10}, {"AC11", ac11},
  };
  bool all = true;
  for (const auto& [name, fn] : criteria) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    all = all && o.pass;
    std::cout << name << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail.str() << ")" << std::endl;
  }
  return all ? 0 : 1;
}
