#include <gtest/gtest.h>

#include <random>

#include "ratsos/errors.hpp"
#include "ratsos/polytope.hpp"
#include "ratsos/unconstrained.hpp"
#include "ratsos/verify.hpp"

using namespace ratsos;

namespace {

const char* kQuartic = "4*X1^4 + 4*X1^3*X2 - 7*X1^2*X2^2 - 2*X1*X2^3 + 10*X2^4";
const char* kMotzkin = "X3^6 + X1^4*X2^2 + X1^2*X2^4 - 3*X1^2*X2^2*X3^2";

Polynomial P(const std::string& s, std::size_t n = 2) { return parse_polynomial(s, n); }

Errc code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::invalid_argument;
}

CertifyOptions worked_example_options() {
  CertifyOptions o;
  o.prec.eps = 1;
  o.prec.delta = 60;
  o.prec.radius = 60;
  o.prec.chol = 10;
  return o;
}

}  // namespace

TEST(Absorb, ZeroRemainder) {
  SupportBasis Q({Monomial{1, 0}, Monomial{0, 1}});
  EpsilonMap eps(Q, 1);
  SosTerms acc;
  absorb(Polynomial(2), Q, eps, acc);
  EXPECT_TRUE(acc.empty());
  EXPECT_EQ(eps.min(), 1);
}

TEST(Absorb, PrintedRemainder) {
  SupportBasis Q({Monomial{2, 0}, Monomial{1, 1}, Monomial{0, 2}});
  EpsilonMap eps(Q, 1);
  SosTerms acc;
  absorb(P("-X1^4 - 1/9*X1^2*X2^2 - 2/3*X1*X2^3 - 781/1764*X2^4"), Q, eps, acc);
  EXPECT_EQ(eps.values.at(Monomial{2, 0}), 0);
  EXPECT_EQ(eps.values.at(Monomial{1, 1}), Rational(5, 9));
  EXPECT_EQ(eps.values.at(Monomial{0, 2}), Rational(395, 1764));
  ASSERT_EQ(acc.size(), 1u);
  EXPECT_EQ(acc.weights[0], Rational(1, 3));
  EXPECT_EQ(acc.polys[0], P("X1*X2 - X2^2"));
}

TEST(Absorb, OddBranch) {
  SupportBasis Q({Monomial{1, 0}, Monomial{0, 1}});
  EpsilonMap eps(Q, 1);
  SosTerms acc;
  absorb(P("-1/2*X1*X2"), Q, eps, acc);
  ASSERT_EQ(acc.size(), 1u);
  EXPECT_EQ(acc.weights[0], Rational(1, 4));
  EXPECT_EQ(acc.polys[0], P("X1 - X2"));
  EXPECT_EQ(eps.values.at(Monomial{1, 0}), Rational(3, 4));
  EXPECT_EQ(eps.values.at(Monomial{0, 1}), Rational(3, 4));
}

TEST(Absorb, Unabsorbable) {
  SupportBasis Q({Monomial{1, 0}});
  EpsilonMap eps(Q, 1);
  SosTerms acc;
  EXPECT_EQ(code_of([&] { absorb(P("X1*X2"), Q, eps, acc); }), Errc::unabsorbable_monomial);
}

TEST(Absorb, IdentityProperty) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<long> num(-40, 40), den(1, 30);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + trial % 2;
    const SupportBasis Q = degree_simplex_points(n, 1 + trial % 3);
    EpsilonMap eps(Q, Rational(num(rng), den(rng)));
    for (auto& [a, e] : eps.values) e.canonicalize();
    const Polynomial before = eps.polynomial(n);
    Polynomial u(n);
    for (int k = 0; k < 6; ++k) {
      const Monomial g = Q[rng() % Q.size()] + Q[rng() % Q.size()];
      Rational c(num(rng), den(rng));
      c.canonicalize();
      u.add_term(g, c);
    }
    SosTerms acc;
    acc.append(1, P("1", n));
    absorb(u, Q, eps, acc);
    SosTerms added;
    for (std::size_t i = 1; i < acc.size(); ++i) {
      EXPECT_GT(acc.weights[i], 0);
      added.append(acc.weights[i], acc.polys[i]);
    }
    EXPECT_EQ(added.expand(n) + eps.polynomial(n), u + before);
  }
}

TEST(Interior, Heuristic) {
  const Polynomial f = P(kQuartic);
  const SupportBasis Q = half_lattice_points(newton_polytope(f));
  // the best Gram matrix of f - t has minimum eigenvalue about -0.52
  EXPECT_FALSE(interior_heuristic(f, 1, Q, Precision{}));
  EXPECT_FALSE(interior_heuristic(f, Rational(1, 2), Q, Precision{}));
  EXPECT_TRUE(interior_heuristic(f, Rational(1, 4), Q, Precision{}));
  const Polynomial x2 = P("X1^2", 1);
  const SupportBasis Q1 = half_lattice_points(newton_polytope(x2));
  EXPECT_FALSE(interior_heuristic(x2, 2, Q1, Precision{}));
  EXPECT_TRUE(interior_heuristic(x2, Rational(1, 2), Q1, Precision{}));
}

TEST(Intsos, WorkedExample) {
  const Polynomial f = P(kQuartic);
  const Certificate c = intsos(f, worked_example_options());
  EXPECT_EQ(c.kind, CertificateKind::unconstrained);
  EXPECT_EQ(reconstruct(c), f);
  EXPECT_TRUE(verify(f, c).verified());
  ASSERT_TRUE(c.info.has_value());
  EXPECT_EQ(c.info->eps, Rational(1, 4));
}

TEST(Intsos, SumOfTwoSquares) {
  const Polynomial f = P("X1^2 + X2^2");
  const Certificate c = intsos(f);
  EXPECT_TRUE(verify(f, c).verified());
  for (const auto& s : c.blocks[0].terms.polys) EXPECT_LE(s.degree(), 1);
}

TEST(Intsos, MotzkinUnderflows) {
  EXPECT_EQ(code_of([] { intsos(P(kMotzkin, 3)); }), Errc::epsilon_underflow);
}

TEST(Intsos, UpfrontRejections) {
  EXPECT_EQ(code_of([] { intsos(Polynomial(2)); }), Errc::zero_polynomial);
  EXPECT_EQ(code_of([] { intsos(P("X1^3 + X2^2")); }), Errc::odd_degree);
  EXPECT_EQ(code_of([] { intsos(P("X1*X2")); }), Errc::not_sos);
  EXPECT_EQ(code_of([] { intsos(P("-X1^2 + X2^2")); }), Errc::not_sos);
}

TEST(Intsos, PrecisionCeiling) {
  CertifyOptions o;
  o.budget.max_rounds = 1;
  o.prec.chol = 1;
  o.prec.eps = pow2(-40);
  o.prec.delta = 20;
  o.prec.radius = 20;
  // tiny eps with coarse settings cannot absorb the remainder in one round
  try {
    Certificate c = intsos(P(kQuartic), o);
    EXPECT_TRUE(verify(P(kQuartic), c).verified());
  } catch (const Error& e) {
    EXPECT_TRUE(e.code() == Errc::precision_ceiling || e.code() == Errc::epsilon_underflow) << e.what();
  }
}

TEST(Intsos, CompletenessProperty) {
  std::mt19937 rng(3);
  std::uniform_int_distribution<long> coef(-5, 5);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const unsigned d = 1 + trial % 2;
    const SupportBasis basis = degree_simplex_points(n, d);
    Polynomial f(n);
    for (int i = 0; i < 3; ++i) {
      Polynomial p(n);
      for (const auto& a : basis.points()) p.add_term(a, Rational(coef(rng)));
      f += p * p;
    }
    f += pow2(-5) * even_sum(basis);
    const Certificate c = intsos(f);
    const VerifyReport r = verify(f, c);
    EXPECT_TRUE(r.verified()) << render(f) << "\n" << r.summary();
  }
}

TEST(Project, Invariant) {
  std::mt19937 rng(5);
  std::uniform_int_distribution<long> num(-100, 100);
  const Polynomial f = P(kQuartic);
  const SupportBasis Q = half_lattice_points(newton_polytope(f));
  for (int trial = 0; trial < 20; ++trial) {
    RationalMatrix Gp(Q.size(), Q.size());
    for (std::size_t i = 0; i < Q.size(); ++i)
      for (std::size_t j = i; j < Q.size(); ++j) {
        Rational v(num(rng), 64);
        v.canonicalize();
        Gp(i, j) = Gp(j, i) = v;
      }
    const RationalMatrix G = project_gram(Gp, Q, f);
    EXPECT_TRUE(G.is_symmetric());
    EXPECT_EQ(gram_polynomial(G, Q), f);
  }
}

TEST(Project, ForcedScalar) {
  const Polynomial f = P("X1^2", 1);
  const SupportBasis Q({Monomial{1}});
  RationalMatrix Gp(1, 1);
  Gp(0, 0) = Rational(37, 16);
  EXPECT_EQ(project_gram(Gp, Q, f)(0, 0), 1);
  const Certificate c = round_project(f);
  ASSERT_EQ(c.blocks[0].terms.size(), 1u);
  EXPECT_EQ(c.blocks[0].terms.weights[0], 1);
  EXPECT_EQ(c.blocks[0].terms.polys[0], f.nvars() == 1 ? P("X1", 1) : f);
}

TEST(RoundProject, WorkedExample) {
  const Polynomial f = P(kQuartic);
  const Certificate c = round_project(f, worked_example_options());
  EXPECT_TRUE(verify(f, c).verified());
}

TEST(RoundProject, NotSos) {
  EXPECT_EQ(code_of([] { round_project(P("X1*X2")); }), Errc::not_sos);
  EXPECT_EQ(code_of([] { round_project(P(kMotzkin, 3)); }), Errc::precision_ceiling);
}
