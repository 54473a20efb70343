#include <gtest/gtest.h>

#include <random>

#include "ratsos/errors.hpp"
#include "ratsos/verify.hpp"

using namespace ratsos;

namespace {

const char* kQuartic = "4*X1^4 + 4*X1^3*X2 - 7*X1^2*X2^2 - 2*X1*X2^3 + 10*X2^4";

Polynomial P(const std::string& s, std::size_t n = 2) { return parse_polynomial(s, n); }

Certificate plain(const Polynomial& f, const SosTerms& t) {
  Certificate c;
  c.nvars = f.nvars();
  c.input = f;
  c.degree = static_cast<unsigned>(f.degree());
  c.blocks.push_back(SosBlock{P("1", f.nvars()), t});
  return c;
}

SosTerms two_squares() {
  SosTerms t;
  t.append(1, P("2*X1*X2 + X2^2"));
  t.append(1, P("2*X1^2 + X1*X2 - 3*X2^2"));
  return t;
}

}  // namespace

TEST(Verify, QuarticTwoSquares) {
  const Polynomial f = P(kQuartic);
  const VerifyReport r = verify(f, plain(f, two_squares()));
  EXPECT_TRUE(r.verified()) << r.summary();
}

TEST(Verify, PerturbedWeightFails) {
  const Polynomial f = P(kQuartic);
  SosTerms t = two_squares();
  t.weights[0] += Rational(1, 1000000);
  const VerifyReport r = verify(f, plain(f, t));
  EXPECT_FALSE(r.identity_ok);
  EXPECT_FALSE(r.verified());
  EXPECT_FALSE(r.mismatches.empty());
  EXPECT_TRUE(r.weights_ok);
}

TEST(Verify, PrintedIntsosOutput) {
  const Polynomial f = P(kQuartic);
  SosTerms t;
  t.append(Rational(1, 3), P("X1*X2 - X2^2"));
  t.append(Rational(5, 9), P("X1*X2"));
  t.append(Rational(395, 1764), P("X2^2"));
  t.append(1, P("2*X1^2 + X1*X2 - 8/3*X2^2"));
  t.append(1, P("4/3*X1*X2 + 3/2*X2^2"));
  t.append(1, P("2/7*X2^2"));
  Certificate c = plain(f, t);
  EXPECT_EQ(reconstruct(c), f);
  EXPECT_TRUE(verify(f, c).verified());
}

TEST(Verify, PrintedPutinarOutput) {
  const Polynomial f = P("-X1^2 - 2*X1*X2 - 2*X2^2 + 6");
  const std::vector<Polynomial> S = {P("1 - X1^2"), P("1 - X2^2")};
  Certificate c;
  c.kind = CertificateKind::putinar;
  c.nvars = 2;
  c.input = f;
  c.degree = 2;
  SosTerms s0;
  s0.append(Rational(23853407, 292204836), P("1"));
  s0.append(Rational(23, 49), P("X1"));
  s0.append(Rational(130657269, 291009481), P("X2"));
  s0.append(1, P("1/2442"));
  s0.append(1, P("X1 - X2"));
  s0.append(1, P("1/2437*X2"));
  c.blocks.push_back(SosBlock{P("1"), s0});
  SosTerms s1, s2;
  s1.append(1, P("11/7"));
  s2.append(1, P("13/7"));
  c.blocks.push_back(SosBlock{S[0], s1});
  c.blocks.push_back(SosBlock{S[1], s2});
  const VerifyReport r = verify(f, c, S);
  EXPECT_TRUE(r.verified()) << r.summary();
  // without the set the multipliers cannot be checked
  EXPECT_FALSE(verify(f, c).verified());
}

TEST(Verify, Reconstruct) {
  Certificate empty;
  empty.nvars = 2;
  empty.input = Polynomial(2);
  EXPECT_TRUE(reconstruct(empty).is_zero());
  SosTerms t;
  t.append(1, P("X1 + X2"));
  EXPECT_EQ(reconstruct(plain(P("X1^2 + 2*X1*X2 + X2^2"), t)), P("X1^2 + 2*X1*X2 + X2^2"));
}

TEST(Verify, NegativeWeight) {
  const Polynomial f = P("X1^2 - X2^2");
  SosTerms t;
  t.append(1, P("X1"));
  t.append(-1, P("X2"));
  const VerifyReport r = verify(f, plain(f, t));
  EXPECT_TRUE(r.identity_ok);
  EXPECT_FALSE(r.weights_ok);
  EXPECT_FALSE(r.verified());
}

TEST(Verify, SupportOutsideHalfNewton) {
  const Polynomial f = P("X2^2");
  SosTerms t;
  t.append(1, P("X1^2 + X2"));
  // X1^2 is outside Q = {X2}
  const VerifyReport r = verify(f, plain(f, t));
  EXPECT_FALSE(r.support_ok);
}

TEST(Verify, ReznickDenominator) {
  const Polynomial f = P("X1^2 + X2^2");
  Certificate c;
  c.kind = CertificateKind::reznick;
  c.nvars = 2;
  c.input = f;
  c.degree = 1;
  SosTerms num;
  num.append(1, P("X1^2"));
  num.append(2, P("X1*X2"));
  num.append(1, P("X2^2"));
  c.blocks.push_back(SosBlock{P("1"), num});
  SosTerms den;
  den.append(1, P("X1"));
  den.append(1, P("X2"));
  c.denominator = den;
  EXPECT_TRUE(verify(f, c).verified());
  c.degree = 2;
  EXPECT_FALSE(verify(f, c).multipliers_ok);
}

TEST(Verify, DimensionMismatch) {
  const Polynomial f = P("X1^2", 1);
  EXPECT_THROW(verify(f, plain(P(kQuartic), two_squares())), Error);
}

TEST(Verify, ScalingPreservesVerified) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> num(1, 50);
  const Polynomial f = P(kQuartic);
  for (int trial = 0; trial < 20; ++trial) {
    Rational s(num(rng), num(rng));
    s.canonicalize();
    SosTerms t = two_squares();
    for (auto& w : t.weights) w *= s;
    EXPECT_TRUE(verify(f * s, plain(f * s, t)).verified());
  }
}
