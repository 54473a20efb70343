#include <gtest/gtest.h>

#include <sstream>

#include "ratsos/certificate.hpp"
#include "ratsos/errors.hpp"

using namespace ratsos;

namespace {

Certificate sample() {
  Certificate c;
  c.kind = CertificateKind::reznick;
  c.nvars = 2;
  c.input = parse_polynomial("X1^2 + X2^2", 2);
  c.degree = 1;
  SosTerms t;
  t.append(Rational(1, 3), parse_polynomial("X1^2 + X1*X2", 2));
  t.append(Rational(2), parse_polynomial("X2^2", 2));
  c.blocks.push_back(SosBlock{parse_polynomial("1", 2), t});
  c.scalars.push_back(ScalarTerm{Rational(5, 7), parse_polynomial("1 - X1^2", 2)});
  SosTerms d;
  d.append(Rational(1), parse_polynomial("X1", 2));
  d.append(Rational(1), parse_polynomial("X2", 2));
  c.denominator = d;
  c.info = CertifyInfo{pow2(-10), 60, 60, 10, 10, 1};
  return c;
}

void expect_same(const Certificate& a, const Certificate& b) {
  EXPECT_EQ(a.kind, b.kind);
  EXPECT_EQ(a.nvars, b.nvars);
  EXPECT_EQ(a.input, b.input);
  EXPECT_EQ(a.degree, b.degree);
  ASSERT_EQ(a.blocks.size(), b.blocks.size());
  for (std::size_t i = 0; i < a.blocks.size(); ++i) {
    EXPECT_EQ(a.blocks[i].multiplier, b.blocks[i].multiplier);
    EXPECT_EQ(a.blocks[i].terms.weights, b.blocks[i].terms.weights);
    EXPECT_EQ(a.blocks[i].terms.polys, b.blocks[i].terms.polys);
  }
  ASSERT_EQ(a.scalars.size(), b.scalars.size());
  for (std::size_t i = 0; i < a.scalars.size(); ++i) {
    EXPECT_EQ(a.scalars[i].weight, b.scalars[i].weight);
    EXPECT_EQ(a.scalars[i].poly, b.scalars[i].poly);
  }
  ASSERT_EQ(a.denominator.has_value(), b.denominator.has_value());
  if (a.denominator) EXPECT_EQ(a.denominator->polys, b.denominator->polys);
}

}  // namespace

TEST(Certificate, RoundTrip) {
  const Certificate c = sample();
  const std::string text = certificate_to_string(c);
  expect_same(c, certificate_from_string(text));
  // deterministic output
  Certificate again = certificate_from_string(text);
  again.info = c.info;
  EXPECT_EQ(text, certificate_to_string(again));
  EXPECT_NE(text.find("term: 1/3 ; X1^2 + X1*X2"), std::string::npos);
  EXPECT_NE(text.find("scalar: 5/7 ; "), std::string::npos);
}

TEST(Certificate, Counts) {
  const Certificate c = sample();
  EXPECT_EQ(c.term_count(), 5u);
  EXPECT_EQ(c.max_bitsize(), 3u);  // 5/7
}

TEST(Certificate, Malformed) {
  const std::vector<std::string> bad = {
      "kind: unconstrained\ninput: X1\n",                       // input before variables
      "kind: nonsense\nvariables: 1\ninput: X1\n",               // kind
      "kind: unconstrained\nvariables: 1\ninput: X1\nterm: 1 ; X1\n",  // term outside block
      "kind: unconstrained\nvariables: 1\ninput: X1\nblock: 1\nterm: 1 X1\n",
      "kind: unconstrained\nvariables: 1\ninput: X1\nblock: 1\nterm: 1 ; X3\n",
      "kind: unconstrained\nvariables: x\ninput: X1\n",
      "kind: unconstrained\nvariables: 1\n",
      "kind: unconstrained\nvariables: 1\ninput: X1\nwhat: 3\n",
  };
  for (const auto& s : bad) {
    try {
      certificate_from_string(s);
      ADD_FAILURE() << "accepted: " << s;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), Errc::malformed_certificate) << s;
    }
  }
}

TEST(Certificate, LineNumberInMessage) {
  try {
    certificate_from_string("kind: unconstrained\nvariables: 1\ninput: X1\nblock: 1\nterm: 1 ; X9\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("line 5"), std::string::npos);
  }
}

TEST(Problem, ReadWrite) {
  std::istringstream is(
      "# box problem\n"
      "polynomial: -X1^2 - 2*X1*X2 - 2*X2^2 + 6\n"
      "constraint: 1 - X1^2\n"
      "constraint: 1 - X2^2   # second\n"
      "k: 1\n");
  Problem p = read_problem(is);
  EXPECT_EQ(p.nvars, 2u);
  EXPECT_EQ(p.constraints.size(), 2u);
  ASSERT_TRUE(p.k.has_value());
  EXPECT_EQ(*p.k, 1u);
  std::ostringstream os;
  write_problem(os, p);
  std::istringstream is2(os.str());
  Problem q = read_problem(is2);
  EXPECT_EQ(q.f, p.f);
  EXPECT_EQ(q.constraints, p.constraints);
}

TEST(Problem, Errors) {
  std::istringstream none("variables: 2\n");
  EXPECT_THROW(read_problem(none), Error);
  std::istringstream unknown("polynomial: X1\nfoo: 1\n");
  EXPECT_THROW(read_problem(unknown), Error);
}
