#include <gtest/gtest.h>

#include <cmath>

#include "algebroid/error.hpp"
#include "algebroid/field.hpp"
#include "algebroid/field_matrix.hpp"
#include "algebroid/random.hpp"
#include "test_support.hpp"

using namespace algebroid;
using algebroid::testing::kind_of;

TEST(Chart, DefaultLabels) {
  Chart c(3);
  EXPECT_EQ(c.dimension(), 3u);
  EXPECT_EQ(c.labels()[2], "x3");
  EXPECT_EQ(c.index_of("x2"), 1);
  EXPECT_EQ(c.index_of("y"), -1);
  EXPECT_EQ(Chart(0).dimension(), 0u);
}

TEST(Chart, RejectsDuplicateLabels) {
  EXPECT_EQ(kind_of([] { Chart(std::vector<std::string>{"t", "t"}); }), ErrorKind::InvalidInput);
}

TEST(Parse, ReadsTerms) {
  Chart c(2);
  ScalarField f = parse_field(c, "x1^2*x2 - 3");
  EXPECT_EQ(f.terms().size(), 2u);
  EXPECT_EQ(f.coefficient({2, 1}), 1.0);
  EXPECT_EQ(f.coefficient({0, 0}), -3.0);
}

TEST(Parse, ZeroIsEmpty) {
  EXPECT_TRUE(parse_field(Chart(2), "0").is_zero());
  EXPECT_TRUE(parse_field(Chart(2), "x1 - x1").is_zero());
}

TEST(Parse, Errors) {
  EXPECT_EQ(kind_of([] { parse_field(Chart(2), "x3"); }), ErrorKind::UnknownVariable);
  EXPECT_EQ(kind_of([] { parse_field(Chart(2), "x1 +"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_field(Chart(2), "x1^-2"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_field(Chart(2), "(x1"); }), ErrorKind::SyntaxError);
  EXPECT_EQ(kind_of([] { parse_field(Chart(2), ""); }), ErrorKind::SyntaxError);
}

TEST(Parse, WhitespaceAndParentheses) {
  Chart c(2);
  EXPECT_EQ(parse_field(c, " 2 * x1 *x2 "), ScalarField::monomial(2, {1, 1}, 2.0));
  EXPECT_EQ(parse_field(c, "(x1 + x2)^2"), parse_field(c, "x1^2 + 2*x1*x2 + x2^2"));
  EXPECT_EQ(parse_field(c, "-x1"), ScalarField::coordinate(2, 0) * -1.0);
  EXPECT_EQ(parse_field(c, "1.5e-3*x2"), ScalarField::monomial(2, {0, 1}, 1.5e-3));
}

TEST(Parse, PrintParseIdempotent) {
  Chart c(3);
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    ScalarField f = random_polynomial(rng, 3, 3);
    const std::string once = f.to_string(c);
    ScalarField g = parse_field(c, once);
    EXPECT_EQ(f, g) << once;
    EXPECT_EQ(g.to_string(c), once);
  }
}

TEST(Print, CanonicalOrder) {
  Chart c(2);
  EXPECT_EQ(parse_field(c, "3 - x2 + x1^2*x2").to_string(c), "x1^2*x2 - x2 + 3");
  EXPECT_EQ(ScalarField(2).to_string(c), "0");
  EXPECT_EQ(parse_field(c, "-2*x1").to_string(c), "-2*x1");
}

TEST(EvalPartial, Examples) {
  Chart c(2);
  ScalarField f = parse_field(c, "x1^2*x2");
  const double p[] = {2.0, 3.0};
  const std::size_t d1[] = {0}, d2[] = {1};
  EXPECT_DOUBLE_EQ(eval_partial(f, d1, p), 12.0);
  EXPECT_DOUBLE_EQ(eval_partial(f, d2, p), 4.0);
  EXPECT_DOUBLE_EQ(eval_partial(f, {}, p), 12.0);
  EXPECT_EQ(eval_partial(ScalarField::constant(2, 5.0), d1, p), 0.0);
}

TEST(EvalPartial, DimensionMismatch) {
  ScalarField f = parse_field(Chart(2), "x1");
  const double p[] = {1.0};
  EXPECT_EQ(kind_of([&] { f.evaluate(p); }), ErrorKind::DimensionMismatch);
}

TEST(EvalPartial, PointChart) {
  ScalarField f = ScalarField::constant(0, 4.0);
  EXPECT_EQ(f.evaluate(std::span<const double>{}), 4.0);
  EXPECT_TRUE(f.is_constant());
}

TEST(FieldProperties, Linearity) {
  CounterRng rng(21);
  for (const auto& p : sample_points(3, 50, 3)) {
    ScalarField f = random_polynomial(rng, 3, 3), g = random_polynomial(rng, 3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      const std::size_t d[] = {i};
      const double lhs = eval_partial(f + g, d, p);
      const double rhs = eval_partial(f, d, p) + eval_partial(g, d, p);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(FieldProperties, LeibnizOnProducts) {
  CounterRng rng(22);
  ScalarField f = random_polynomial(rng, 2, 3), g = random_polynomial(rng, 2, 3);
  for (const auto& p : sample_points(4, 100, 2)) {
    for (std::size_t i = 0; i < 2; ++i) {
      const double lhs = (f * g).partial(i).evaluate(p);
      const double rhs = f.evaluate(p) * g.partial(i).evaluate(p) + g.evaluate(p) * f.partial(i).evaluate(p);
      EXPECT_LE(std::abs(lhs - rhs), 1e-12 * std::max(1.0, std::abs(lhs)));
    }
  }
}

TEST(FieldProperties, MixedPartialsCommute) {
  CounterRng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    ScalarField f = random_polynomial(rng, 3, 4);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(f.partial(i).partial(j), f.partial(j).partial(i));
  }
}

TEST(FieldProperties, NoStoredZeros) {
  Chart c(2);
  ScalarField f = parse_field(c, "x1 + x2") - parse_field(c, "x2");
  for (const auto& [e, v] : f.terms()) EXPECT_NE(v, 0.0);
  EXPECT_EQ(f.terms().size(), 1u);
}

TEST(FieldProperties, EmbeddedShiftsVariables) {
  ScalarField t = parse_field(Chart(1), "x1^2 + 1");
  ScalarField e = t.embedded(3, 2);
  EXPECT_EQ(e, parse_field(Chart(3), "x3^2 + 1"));
}

TEST(FieldMatrix, ProductTraceTranspose) {
  Chart c(1);
  FieldMatrix a(2, 2, 1);
  a(0, 0) = parse_field(c, "x1");
  a(0, 1) = parse_field(c, "1");
  a(1, 1) = parse_field(c, "2");
  FieldMatrix b = a * a;
  EXPECT_EQ(b(0, 0), parse_field(c, "x1^2"));
  EXPECT_EQ(b(0, 1), parse_field(c, "x1 + 2"));
  EXPECT_EQ(a.trace(), parse_field(c, "x1 + 2"));
  EXPECT_EQ(a.transpose()(1, 0), a(0, 1));
}

TEST(FieldMatrix, PolynomialInverse) {
  Chart c(2);
  FieldMatrix a = FieldMatrix::identity(3, 2);
  a(0, 1) = parse_field(c, "x1*x2");
  a(0, 2) = parse_field(c, "x2^2");
  a(1, 2) = parse_field(c, "3*x1");
  FieldMatrix inv = polynomial_inverse(a);
  EXPECT_EQ((a * inv).pruned(1e-12), FieldMatrix::identity(3, 2));

  FieldMatrix singular = FieldMatrix::identity(2, 2);
  singular(0, 0) = parse_field(c, "x1");
  EXPECT_EQ(kind_of([&] { polynomial_inverse(singular); }), ErrorKind::NotInvertible);
}
