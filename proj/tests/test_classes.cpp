#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "algebroid/catalog.hpp"
#include "algebroid/classes.hpp"
#include "test_support.hpp"

using namespace algebroid;
using algebroid::testing::kind_of;
using algebroid::testing::random_section;

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

AConnection random_connection(const LieAlgebroid& A, CounterRng& rng, std::uint32_t deg = 1, double scale = 1.0) {
  const std::size_t q = bundle_rank(A, Bundle::E), m = A.dimension();
  std::vector<FieldMatrix> g;
  for (std::size_t s = 0; s < A.rank(); ++s) {
    FieldMatrix h(q, q, m);
    for (std::size_t u = 0; u < q; ++u)
      for (std::size_t t = 0; t < q; ++t) h(u, t) = random_polynomial(rng, m, deg, -scale, scale);
    g.push_back(std::move(h));
  }
  return build_connection(A, Bundle::E, std::move(g));
}

/// Adds a random traceless perturbation to every symbol matrix.
AConnection perturbed(const AConnection& conn, CounterRng& rng) {
  const LieAlgebroid& A = conn.algebroid();
  const std::size_t q = conn.fiber(), m = A.dimension();
  std::vector<FieldMatrix> g;
  for (std::size_t s = 0; s < A.rank(); ++s) {
    FieldMatrix h = conn.symbols(s);
    ScalarField diag(m);
    for (std::size_t u = 0; u < q; ++u)
      for (std::size_t t = 0; t < q; ++t) {
        const ScalarField d = random_polynomial(rng, m, 1, -0.5, 0.5);
        h(u, t) += d;
        if (u == t) diag += d;
      }
    h(q - 1, q - 1) -= diag;
    g.push_back(std::move(h));
  }
  return build_connection(A, conn.bundle(), std::move(g));
}

Eigen::MatrixXd random_matrix(CounterRng& rng, std::size_t q) {
  Eigen::MatrixXd X(q, q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) X(i, j) = rng.uniform(-3.0, 3.0);
  return X;
}

/// Elementary symmetric function of the eigenvalues of X / 2pi.
double sigma_from_eigenvalues(const Eigen::MatrixXd& X, std::size_t k) {
  Eigen::VectorXcd ev = (X / kTwoPi).eigenvalues();
  std::vector<std::complex<double>> e(k + 1, 0.0);
  e[0] = 1.0;
  for (Eigen::Index i = 0; i < ev.size(); ++i)
    for (std::size_t j = k; j >= 1; --j) e[j] += e[j - 1] * ev(i);
  return e[k].real();
}

StructureConstants direct_sum(const StructureConstants& a, const StructureConstants& b) {
  const std::size_t n = a.dimension(), p = b.dimension();
  StructureConstants g(n + p);
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t)
      for (std::size_t u = 0; u < n; ++u) g(s, t, u) = a(s, t, u);
  for (std::size_t s = 0; s < p; ++s)
    for (std::size_t t = 0; t < p; ++t)
      for (std::size_t u = 0; u < p; ++u) g(n + s, n + t, n + u) = b(s, t, u);
  return g;
}

double scalar_at(const AForm& f, const std::vector<std::size_t>& I, const Point& p) { return f.value_at(I, p)(0, 0); }

}  // namespace

TEST(InvariantPolynomial, FirstOrderIsTrace) {
  CounterRng rng(300);
  InvariantPolynomial P = invariant_polynomial(1, 4);
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::MatrixXd X = random_matrix(rng, 4);
    std::vector<Eigen::MatrixXd> args = {X};
    EXPECT_NEAR(P(args), X.trace() / kTwoPi, 1e-14);
  }
}

TEST(InvariantPolynomial, SecondOrderDiagonal) {
  InvariantPolynomial P = invariant_polynomial(2, 2);
  Eigen::MatrixXd X = Eigen::Vector2d(kTwoPi, 2 * kTwoPi).asDiagonal();
  EXPECT_NEAR(P.sigma(X), 2.0, 1e-13);
  std::vector<Eigen::MatrixXd> args = {X, X};
  EXPECT_NEAR(P(args), 2.0, 1e-13);
}

TEST(InvariantPolynomial, ZeroArguments) {
  for (std::size_t k = 1; k <= 3; ++k) {
    InvariantPolynomial P = invariant_polynomial(k, 3);
    std::vector<Eigen::MatrixXd> zeros(k, Eigen::MatrixXd::Zero(3, 3));
    EXPECT_EQ(P(zeros), 0.0);
  }
}

TEST(InvariantPolynomial, SigmaMatchesEigenvalues) {
  CounterRng rng(301);
  for (std::size_t k = 1; k <= 4; ++k) {
    InvariantPolynomial P = invariant_polynomial(k, 4);
    Eigen::MatrixXd X = random_matrix(rng, 4);
    std::vector<Eigen::MatrixXd> diag(k, X);
    const double expected = sigma_from_eigenvalues(X, k);
    EXPECT_NEAR(P.sigma(X), expected, 1e-12 * std::max(1.0, std::abs(expected)));
    EXPECT_NEAR(P(diag), expected, 1e-11 * std::max(1.0, std::abs(expected)));
  }
}

TEST(InvariantPolynomial, SecondOrderPolarization) {
  // P(X, Y) = (tr X tr Y - tr XY) / (2 (2 pi)^2).
  CounterRng rng(302);
  InvariantPolynomial P = invariant_polynomial(2, 3);
  Eigen::MatrixXd X = random_matrix(rng, 3), Y = random_matrix(rng, 3);
  std::vector<Eigen::MatrixXd> args = {X, Y};
  const double expected = (X.trace() * Y.trace() - (X * Y).trace()) / (2 * kTwoPi * kTwoPi);
  EXPECT_NEAR(P(args), expected, 1e-13);
}

TEST(InvariantPolynomial, SymmetricAndAdInvariant) {
  CounterRng rng(303);
  InvariantPolynomial P = invariant_polynomial(3, 4);
  std::vector<Eigen::MatrixXd> X = {random_matrix(rng, 4), random_matrix(rng, 4), random_matrix(rng, 4)};
  const double base = P(X);
  std::vector<std::size_t> perm = {0, 1, 2};
  do {
    std::vector<Eigen::MatrixXd> Y = {X[perm[0]], X[perm[1]], X[perm[2]]};
    EXPECT_NEAR(P(Y), base, 1e-12 * std::max(1.0, std::abs(base)));
  } while (std::next_permutation(perm.begin(), perm.end()));

  Eigen::MatrixXd g = random_matrix(rng, 4) + 6.0 * Eigen::MatrixXd::Identity(4, 4);
  const Eigen::MatrixXd gi = g.inverse();
  std::vector<Eigen::MatrixXd> conj;
  for (const auto& x : X) conj.push_back(g * x * gi);
  EXPECT_LT(std::abs(P(conj) - base), 1e-9 * std::max(1.0, std::abs(base)));
}

TEST(InvariantPolynomial, FieldVersionAgrees) {
  CounterRng rng(304);
  InvariantPolynomial P = invariant_polynomial(2, 3);
  std::vector<FieldMatrix> F;
  for (int i = 0; i < 2; ++i) {
    FieldMatrix h(3, 3, 2);
    for (std::size_t u = 0; u < 3; ++u)
      for (std::size_t t = 0; t < 3; ++t) h(u, t) = random_polynomial(rng, 2, 2);
    F.push_back(h);
  }
  ScalarField value = P(F);
  for (const auto& p : sample_points(305, 10, 2)) {
    std::vector<Eigen::MatrixXd> X = {F[0].evaluate(p), F[1].evaluate(p)};
    EXPECT_NEAR(value.evaluate(p), P(X), 1e-12);
  }
}

TEST(InvariantPolynomial, BadOrder) {
  EXPECT_EQ(kind_of([] { invariant_polynomial(0, 3); }), ErrorKind::BadOrder);
  EXPECT_EQ(kind_of([] { invariant_polynomial(4, 3); }), ErrorKind::BadOrder);
}

TEST(ChernWeil, FlatAndAdjointGiveZero) {
  for (const auto& e : catalog::examples()) {
    if (e.algebroid.rank() < 2) continue;
    ChernWeilResult r = chern_weil(e.algebroid, flat_metric_connection(e.algebroid),
                                   invariant_polynomial(1, bundle_rank(e.algebroid, Bundle::E)));
    EXPECT_TRUE(r.form.is_zero()) << e.name;
  }
  for (StructureConstants g : {catalog::so3(), catalog::sl2(), catalog::aff1()}) {
    LieAlgebroid A = catalog::lie_algebra(g, "g");
    ChernWeilResult r = chern_weil(A, basic_connection(A), invariant_polynomial(1, A.rank()));
    EXPECT_LT(r.form.max_abs_coefficient(), 1e-14);
  }
}

TEST(ChernWeil, FirstOrderIsTwiceTrace) {
  LieAlgebroid P = catalog::lie_poisson(catalog::aff1());
  CounterRng rng(306);
  AConnection conn = random_connection(P, rng, 2);
  ChernWeilResult r = chern_weil(P, conn, invariant_polynomial(1, conn.fiber()));
  EXPECT_FALSE(r.degree_overflow);
  AForm R = curvature(conn);
  for (const auto& p : sample_points(307, 20, 2)) {
    const double expected = 2.0 * R.value_at({0, 1}, p).trace() / kTwoPi;
    EXPECT_NEAR(scalar_at(r.form, {0, 1}, p), expected, 1e-10);
  }
}

TEST(ChernWeil, Closed) {
  CounterRng rng(308);
  for (const auto& e : catalog::examples()) {
    const LieAlgebroid& A = e.algebroid;
    if (A.rank() < 3) continue;
    ChernWeilResult r = chern_weil(A, random_connection(A, rng), invariant_polynomial(1, bundle_rank(A, Bundle::E)));
    EXPECT_LT(r.closedness_residual, 1e-8) << e.name;
    EXPECT_LT(d_A(A, r.form).max_abs_at(sample_points(309, 20, A.dimension())), 1e-8) << e.name;
  }
}

TEST(ChernWeil, DegreeOverflowFlag) {
  LieAlgebroid A = catalog::lie_algebra(catalog::so3(), "so3");
  ChernWeilResult r = chern_weil(A, basic_connection(A), invariant_polynomial(2, 3));
  EXPECT_TRUE(r.degree_overflow);
  EXPECT_TRUE(r.form.is_zero());
  EXPECT_EQ(r.form.degree(), 4u);
}

TEST(Primaries, VanishForBasicAndFlat) {
  for (const auto& e : catalog::examples()) {
    const LieAlgebroid& A = e.algebroid;
    if (A.rank() < 2) continue;
    auto pts = sample_points(310, 20, A.dimension());
    InvariantPolynomial P = invariant_polynomial(1, bundle_rank(A, Bundle::E));
    EXPECT_LT(chern_weil(A, basic_connection(A), P).form.max_abs_at(pts), 1e-8) << e.name;
    EXPECT_LT(chern_weil(A, flat_metric_connection(A), P).form.max_abs_at(pts), 1e-8) << e.name;
  }
  LieAlgebroid A = catalog::lie_algebra(direct_sum(catalog::so3(), catalog::sl2()), "so3+sl2");
  InvariantPolynomial P3 = invariant_polynomial(3, 6);
  EXPECT_LT(chern_weil(A, basic_connection(A), P3).form.max_abs_coefficient(), 1e-8);
  EXPECT_LT(chern_weil(A, flat_metric_connection(A), P3).form.max_abs_coefficient(), 1e-8);
}

TEST(Transgression, CartanIdentityFirstOrder) {
  // With the Cartan d_A, d_A lambda^{1,0} = (lambda^1 - lambda^0) / 2.
  CounterRng rng(311);
  for (const auto& e : catalog::examples()) {
    const LieAlgebroid& A = e.algebroid;
    if (A.rank() < 2) continue;
    auto pts = sample_points(312, 20, A.dimension());
    AConnection n1 = random_connection(A, rng), n0 = random_connection(A, rng);
    InvariantPolynomial P = invariant_polynomial(1, n1.fiber());
    AForm l10 = transgression(A, n1, n0, P);
    AForm rhs = 0.5 * (chern_weil(A, n1, P).form - chern_weil(A, n0, P).form);
    EXPECT_LT((d_A(A, l10) - rhs).max_abs_at(pts), 1e-7) << e.name;
  }
}

TEST(Transgression, CartanIdentityThirdOrder) {
  // Not unimodular, so d_A does not vanish on 5-forms.
  CounterRng rng(313);
  StructureConstants g = direct_sum(catalog::so3(), direct_sum(catalog::aff1(), catalog::abelian(1)));
  LieAlgebroid A = catalog::lie_algebra(g, "so3+aff1+R");
  AConnection n1 = random_connection(A, rng, 0, 0.5), n0 = random_connection(A, rng, 0, 0.5);
  InvariantPolynomial P = invariant_polynomial(3, 6);
  AForm l10 = transgression(A, n1, n0, P);
  AForm l1 = chern_weil(A, n1, P).form, l0 = chern_weil(A, n0, P).form;
  ASSERT_GT(d_A(A, l10).max_abs_coefficient(), 1e-4);
  EXPECT_LT((d_A(A, l10) - 0.5 * (l1 - l0)).max_abs_coefficient(), 1e-7);
}

TEST(Triple, CocycleIdentityOnAff1Family) {
  CounterRng rng(314);
  for (LieAlgebroid A : {catalog::lie_algebra(catalog::aff1(), "aff1"), catalog::lie_poisson(catalog::aff1())}) {
    auto pts = sample_points(315, 20, A.dimension());
    AConnection b = basic_connection(A);
    AConnection n2 = perturbed(b, rng), n1 = perturbed(b, rng), n0 = perturbed(b, rng);
    InvariantPolynomial P = invariant_polynomial(1, b.fiber());
    AForm triple = secondary_triple(A, n2, n1, n0, P);
    EXPECT_EQ(triple.degree(), 0u);
    EXPECT_TRUE(triple.is_zero());
    AForm cycle = transgression(A, n1, n0, P) - transgression(A, n2, n0, P) + transgression(A, n2, n1, P);
    EXPECT_LT((d_A(A, triple) - 0.5 * cycle).max_abs_at(pts), 1e-7);
  }
}

TEST(Triple, CocycleIdentityThirdOrder) {
  CounterRng rng(316);
  StructureConstants g = direct_sum(catalog::so3(), catalog::aff1());
  LieAlgebroid A = catalog::lie_algebra(g, "so3+aff1");
  AConnection n2 = random_connection(A, rng, 0, 0.5), n1 = random_connection(A, rng, 0, 0.5),
              n0 = random_connection(A, rng, 0, 0.5);
  InvariantPolynomial P = invariant_polynomial(3, 5);
  AForm triple = secondary_triple(A, n2, n1, n0, P);
  ASSERT_EQ(triple.degree(), 4u);
  EXPECT_GT(triple.max_abs_coefficient(), 1e-6);
  AForm cycle = transgression(A, n1, n0, P) - transgression(A, n2, n0, P) + transgression(A, n2, n1, P);
  EXPECT_LT((d_A(A, triple) - 0.5 * cycle).max_abs_coefficient(), 1e-7);
}

TEST(Triple, CoincidentConnections) {
  CounterRng rng(317);
  StructureConstants g = direct_sum(catalog::so3(), catalog::aff1());
  LieAlgebroid A = catalog::lie_algebra(g, "so3+aff1");
  AConnection n1 = random_connection(A, rng, 0, 0.5), n0 = random_connection(A, rng, 0, 0.5);
  InvariantPolynomial P = invariant_polynomial(3, 5);
  EXPECT_LT(transgression(A, n0, n0, P).max_abs_coefficient(), 1e-15);
  AForm l10 = transgression(A, n1, n0, P), l01 = transgression(A, n0, n1, P);
  EXPECT_LT((l10 + l01).max_abs_coefficient(), 1e-12);
  EXPECT_LT(secondary_triple(A, n0, n1, n0, P).max_abs_coefficient(), 1e-12);
  EXPECT_LT(secondary_triple(A, n1, n1, n1, P).max_abs_coefficient(), 1e-15);
}

TEST(Triple, DegreeOverflow) {
  LieAlgebroid A = catalog::lie_algebra(catalog::so3(), "so3");
  AConnection b = basic_connection(A);
  EXPECT_EQ(kind_of([&] { secondary_triple(A, b, b, b, invariant_polynomial(3, 3)); }), ErrorKind::DegreeOverflow);
}

TEST(SecondaryClass, FirstOrderExamples) {
  AForm aff = secondary_class(catalog::lie_algebra(catalog::aff1(), "aff1"), 1).form;
  EXPECT_NEAR(scalar_at(aff, {0}, Point{}), 1.0 / kTwoPi, 1e-12);
  EXPECT_NEAR(scalar_at(aff, {1}, Point{}), 0.0, 1e-12);
  for (StructureConstants g : {catalog::so3(), catalog::sl2()})
    EXPECT_LT(secondary_class(catalog::lie_algebra(g, "g"), 1).form.max_abs_coefficient(), 1e-12);
}

TEST(SecondaryClass, ClosedOnCatalog) {
  for (const auto& e : catalog::examples()) {
    CocycleSection m1 = secondary_class(e.algebroid, 1);
    EXPECT_EQ(m1.form.degree(), 1u);
    EXPECT_LT(m1.closedness_residual, 1e-8) << e.name;
  }
  LieAlgebroid A = catalog::lie_algebra(direct_sum(catalog::so3(), catalog::aff1()), "so3+aff1");
  CocycleSection m3 = secondary_class(A, 3);
  EXPECT_EQ(m3.form.degree(), 5u);
  EXPECT_LT(m3.closedness_residual, 1e-8);
}

TEST(SecondaryClass, Errors) {
  LieAlgebroid sl2 = catalog::lie_algebra(catalog::sl2(), "sl2");
  EXPECT_EQ(kind_of([&] { secondary_class(sl2, 2); }), ErrorKind::BadOrder);
  // m_3 is a 5-form and sl(2) has rank 3.
  EXPECT_EQ(kind_of([&] { secondary_class(sl2, 3); }), ErrorKind::DegreeOverflow);
  EXPECT_EQ(kind_of([&] { lie_algebra_secondary(catalog::sl2(), 3); }), ErrorKind::BadOrder);
  EXPECT_EQ(kind_of([&] { lie_algebra_secondary(catalog::so3(), 2); }), ErrorKind::BadOrder);
}

TEST(SecondaryClass, QuadratureConverged) {
  for (const auto& e : catalog::examples()) {
    const LieAlgebroid& A = e.algebroid;
    AConnection b = basic_connection(A), f = flat_metric_connection(A);
    InvariantPolynomial P = invariant_polynomial(1, b.fiber());
    EXPECT_LT((transgression(A, b, f, P, 8) - transgression(A, b, f, P, 64)).max_abs_coefficient(), 1e-12) << e.name;
  }
  CounterRng rng(318);
  LieAlgebroid A = catalog::lie_algebra(direct_sum(catalog::so3(), catalog::aff1()), "so3+aff1");
  AConnection n1 = random_connection(A, rng, 0, 0.5), n0 = random_connection(A, rng, 0, 0.5);
  InvariantPolynomial P = invariant_polynomial(3, 5);
  EXPECT_LT((transgression(A, n1, n0, P, 8) - transgression(A, n1, n0, P, 64)).max_abs_coefficient(), 1e-12);
}

TEST(SecondaryClass, ConnectionIndependence) {
  // lambda^{1',0} - lambda^{1,0} = lambda^{1',1} - 2 d_A lambda^{1',1,0}.
  CounterRng rng(319);
  for (LieAlgebroid A : {catalog::heisenberg_bundle(),
                         catalog::lie_algebra(direct_sum(catalog::so3(), catalog::aff1()), "so3+aff1")}) {
    const std::size_t k = A.rank() >= 5 ? 3 : 1;
    auto pts = sample_points(320, 20, A.dimension());
    AConnection basic = basic_connection(A), flat = flat_metric_connection(A);
    AConnection other = perturbed(basic, rng);
    InvariantPolynomial P = invariant_polynomial(k, basic.fiber());
    AForm diff = transgression(A, other, flat, P) - transgression(A, basic, flat, P);
    AForm l11 = transgression(A, other, basic, P);
    AForm primitive = secondary_triple(A, other, basic, flat, P);
    EXPECT_LT((diff - l11 + 2.0 * d_A(A, primitive)).max_abs_at(pts), 1e-7) << A.name();
    if (k == 1) {
      EXPECT_LT(l11.max_abs_at(pts), 1e-12) << A.name();
    }
  }
}

TEST(Modular, Examples) {
  AForm aff = modular_cocycle(catalog::lie_algebra(catalog::aff1(), "aff1")).form;
  EXPECT_EQ(aff.scalar({0}), ScalarField::constant(0, 1.0));
  EXPECT_TRUE(aff.scalar({1}).is_zero());
  EXPECT_TRUE(modular_cocycle(catalog::tangent(3)).form.is_zero());
  AForm scaling = modular_cocycle(catalog::transformation(catalog::scaling_action())).form;
  EXPECT_EQ(scaling.scalar({0}), ScalarField::constant(1, 1.0));
  for (StructureConstants g : {catalog::so3(), catalog::sl2(), catalog::heisenberg()})
    EXPECT_LT(modular_cocycle(catalog::lie_algebra(g, "g")).form.max_abs_coefficient(), 1e-12);
}

TEST(Modular, LeibnizExpansionIsLinear) {
  CounterRng rng(321);
  for (const auto& e : catalog::examples()) {
    const LieAlgebroid& A = e.algebroid;
    AForm theta = modular_cocycle(A).form;
    Section a = random_section(A, rng);
    ScalarField expected(A.dimension());
    for (std::size_t s = 0; s < A.rank(); ++s) expected += a[s] * theta.scalar({s});
    EXPECT_LT((modular_leibniz_expansion(A, a) - expected).max_abs_coefficient(), 1e-12) << e.name;
  }
}

TEST(Modular, ClosedOnCatalog) {
  for (const auto& e : catalog::examples())
    EXPECT_LT(modular_cocycle(e.algebroid).closedness_residual, 1e-8) << e.name;
}

TEST(Modular, TheoremOnCatalog) {
  for (const auto& e : catalog::examples()) {
    ModularTheoremReport rep = modular_theorem_check(e.algebroid, sample_points(322, 20, e.algebroid.dimension()));
    EXPECT_LT(rep.max_deviation, 1e-8) << e.name;
  }
}

TEST(Modular, LiePoissonIsTwiceTraceAd) {
  StructureConstants g = catalog::aff1();
  LieAlgebroid P = catalog::lie_poisson(g);
  AForm theta = modular_cocycle(P).form;
  for (std::size_t i = 0; i < 2; ++i)
    EXPECT_EQ(theta.scalar({i}), ScalarField::constant(2, 2.0 * g.ad(i).trace()));
  ModularTheoremReport rep = modular_theorem_check(P, sample_points(323, 20, 2));
  EXPECT_LT(rep.max_deviation, 1e-8);
}

TEST(Modular, RescaleCovariance) {
  for (const auto& e : catalog::examples()) {
    const LieAlgebroid& A = e.algebroid;
    const std::size_t m = A.dimension();
    if (m == 0) continue;
    ScalarField a = ScalarField::constant(m, 2.0);
    for (std::size_t i = 0; i < m; ++i) a += ScalarField::coordinate(m, i) * ScalarField::coordinate(m, i);
    AForm theta = modular_cocycle(A).form;
    for (const auto& p : sample_points(324, 20, m)) {
      Eigen::VectorXd shifted = rescaled_modular_cocycle(A, a, p);
      for (std::size_t s = 0; s < A.rank(); ++s) {
        const double dlog = A.anchor_derivative(s, a).evaluate(p) / a.evaluate(p);
        EXPECT_NEAR(shifted(static_cast<Eigen::Index>(s)) - theta.scalar({s}).evaluate(p), dlog, 1e-9) << e.name;
      }
    }
  }
}

TEST(LieAlgebraSecondary, FirstOrder) {
  AForm aff = lie_algebra_secondary(catalog::aff1(), 1);
  EXPECT_NEAR(scalar_at(aff, {0}, Point{}), 1.0 / kTwoPi, 1e-15);
  EXPECT_NEAR(scalar_at(aff, {1}, Point{}), 0.0, 1e-15);
  for (StructureConstants g : {catalog::so3(), catalog::sl2(), catalog::aff1(), catalog::heisenberg()}) {
    AForm pipeline = secondary_class(catalog::lie_algebra(g, "g"), 1).form;
    AForm oracle = lie_algebra_secondary(g, 1);
    for (std::size_t s = 0; s < g.dimension(); ++s)
      EXPECT_NEAR(scalar_at(pipeline, {s}, Point{}), scalar_at(oracle, {s}, Point{}), 1e-12);
  }
}

TEST(LieAlgebraSecondary, AbelianVanishes) {
  EXPECT_TRUE(lie_algebra_secondary(catalog::abelian(3), 1).is_zero());
  EXPECT_TRUE(lie_algebra_secondary(catalog::abelian(5), 3).is_zero());
}

TEST(TransformationM1, Examples) {
  std::vector<ScalarField> scaling = transformation_m1(catalog::scaling_action());
  ASSERT_EQ(scaling.size(), 1u);
  EXPECT_LT((scaling[0] - ScalarField::constant(1, 1.0 / kTwoPi)).max_abs_coefficient(), 1e-15);
  for (const auto& f : transformation_m1(catalog::so3_rotations())) EXPECT_TRUE(f.is_zero());
}

TEST(TransformationM1, MatchesModularCocycle) {
  for (TransformationData T : {catalog::so3_rotations(), catalog::scaling_action(),
                               catalog::coadjoint_action(catalog::aff1()), catalog::coadjoint_action(catalog::sl2())}) {
    AForm theta = modular_cocycle(catalog::transformation(T)).form;
    std::vector<ScalarField> m1 = transformation_m1(T);
    for (std::size_t s = 0; s < m1.size(); ++s)
      EXPECT_LT((m1[s] - (1.0 / kTwoPi) * theta.scalar({s})).max_abs_coefficient(), 1e-15);
  }
}

TEST(TransformationM1, CoadjointIsTwiceLieAlgebraClass) {
  StructureConstants g = catalog::aff1();
  std::vector<ScalarField> m1 = transformation_m1(catalog::coadjoint_action(g));
  AForm oracle = lie_algebra_secondary(g, 1);
  for (std::size_t s = 0; s < 2; ++s) {
    ASSERT_TRUE(m1[s].is_constant());
    EXPECT_NEAR(m1[s].coefficient(Exponents(2, 0)), 2.0 * scalar_at(oracle, {s}, Point{}), 1e-15);
  }
}
