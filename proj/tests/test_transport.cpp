#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <unsupported/Eigen/MatrixFunctions>

#include "algebroid/catalog.hpp"
#include "algebroid/transport.hpp"
#include "test_support.hpp"

using namespace algebroid;
using algebroid::testing::kind_of;

namespace {

constexpr double kPi = std::numbers::pi;

Eigen::MatrixXd oracle_exp(const Eigen::MatrixXd& M) { return M.exp(); }

AConnection ad_connection(const LieAlgebroid& A) { return compatible_connection(A).on_A; }

AConnection random_connection(const LieAlgebroid& A, Bundle bundle, CounterRng& rng) {
  const std::size_t q = bundle_rank(A, bundle), m = A.dimension();
  std::vector<FieldMatrix> g;
  for (std::size_t s = 0; s < A.rank(); ++s) {
    FieldMatrix h(q, q, m);
    for (std::size_t u = 0; u < q; ++u)
      for (std::size_t t = 0; t < q; ++t) h(u, t) = random_polynomial(rng, m, 1, -0.5, 0.5);
    g.push_back(std::move(h));
  }
  return build_connection(A, bundle, std::move(g));
}

/// Skew symbols preserve the chart metric, so transport stays orthogonal.
AConnection random_metric_connection(const LieAlgebroid& A, Bundle bundle, CounterRng& rng) {
  const std::size_t q = bundle_rank(A, bundle), m = A.dimension();
  std::vector<FieldMatrix> g;
  for (std::size_t s = 0; s < A.rank(); ++s) {
    FieldMatrix h(q, q, m);
    for (std::size_t u = 0; u < q; ++u)
      for (std::size_t t = u + 1; t < q; ++t) {
        h(u, t) = random_polynomial(rng, m, 1, -0.5, 0.5);
        h(t, u) = -h(u, t);
      }
    g.push_back(std::move(h));
  }
  return build_connection(A, bundle, std::move(g));
}

Eigen::VectorXd vec(std::initializer_list<double> xs) {
  Eigen::VectorXd v(xs.size());
  Eigen::Index i = 0;
  for (double x : xs) v(i++) = x;
  return v;
}

double max_diff(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) { return (a - b).cwiseAbs().maxCoeff(); }

Eigen::MatrixXd rotation_z(double angle) {
  Eigen::MatrixXd R = Eigen::MatrixXd::Identity(3, 3);
  R(0, 0) = R(1, 1) = std::cos(angle);
  R(1, 0) = std::sin(angle);
  R(0, 1) = -std::sin(angle);
  return R;
}

BasePath latitude_circle() {
  return {[](double t) { return vec({std::cos(2 * kPi * t), std::sin(2 * kPi * t), 0.0}); },
          [](double t) { return vec({-2 * kPi * std::sin(2 * kPi * t), 2 * kPi * std::cos(2 * kPi * t), 0.0}); }};
}

}  // namespace

TEST(Lift, TangentAlgebroidUsesVelocity) {
  LieAlgebroid T = catalog::tangent(2);
  Chart c({"t"});
  BasePath g = polynomial_base_path({parse_field(c, "t^2 - 1"), parse_field(c, "3*t")});
  APath p = lift_base_path(T, g);
  EXPECT_LT(p.residual, 1e-12);
  for (double t : {0.0, 0.3, 0.77, 1.0}) {
    EXPECT_LT((p.coefficients(t) - vec({2 * t, 3.0})).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT((p.position(t) - vec({t * t - 1, 3 * t})).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Lift, LatitudeCircleAccepted) {
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  APath p = lift_base_path(R, latitude_circle());
  EXPECT_LT(p.residual, 1e-8);
  EXPECT_LT(tangency_residual(R, p), 1e-8);
  // rho(e3)(x) = (x2, -x1, 0), so the circle needs a constant -2 pi along e3.
  for (double t : {0.0, 0.125, 0.5, 0.9}) EXPECT_LT((p.coefficients(t) - vec({0, 0, -2 * kPi})).norm(), 1e-8);
}

TEST(Lift, RadialSegmentRejected) {
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  Chart c({"t"});
  BasePath radial = polynomial_base_path({parse_field(c, "1 + t"), parse_field(c, "0"), parse_field(c, "0")});
  EXPECT_EQ(kind_of([&] { lift_base_path(R, radial); }), ErrorKind::NotTangent);
}

TEST(Transport, ZeroSymbolsKeepVector) {
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  AConnection flat = flat_metric_connection(R);
  APath p = lift_base_path(R, latitude_circle());
  Eigen::MatrixXd v0 = Eigen::MatrixXd::Random(6, 2);
  TransportResult res = parallel_transport(flat, p, v0);
  EXPECT_EQ(max_diff(res.value, v0), 0.0);
}

TEST(Transport, ConstantLoopIsExpMinusAd) {
  for (StructureConstants g : {catalog::so3(), catalog::sl2(), catalog::aff1()}) {
    LieAlgebroid A = catalog::lie_algebra(g, "g");
    const Eigen::VectorXd v = vec({0.8, -0.6, 0.45}).head(g.dimension());
    APath loop = constant_path(A, v, Eigen::VectorXd(0));
    const Eigen::MatrixXd expected = oracle_exp(-g.ad(v));
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(g.dimension(), g.dimension());
    EXPECT_LT(max_diff(rk4_transport(ad_connection(A), loop, I, 1000), expected), 1e-8);
    TransportResult h = holonomy_matrix(ad_connection(A), loop);
    EXPECT_LT(max_diff(h.value, expected), 1e-8);
    EXPECT_LE(h.error_estimate, 1e-8);
  }
}

TEST(Transport, Rk4OrderUnderHalving) {
  StructureConstants g = catalog::sl2();
  LieAlgebroid A = catalog::lie_algebra(g, "sl2");
  const Eigen::VectorXd v = vec({1.1, -0.7, 0.9});
  APath loop = constant_path(A, v, Eigen::VectorXd(0));
  const Eigen::MatrixXd expected = oracle_exp(-g.ad(v));
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(3, 3);
  for (std::size_t n : {10u, 20u, 40u}) {
    const double e1 = max_diff(rk4_transport(ad_connection(A), loop, I, n), expected);
    const double e2 = max_diff(rk4_transport(ad_connection(A), loop, I, 2 * n), expected);
    const double ratio = e1 / e2;
    EXPECT_GE(ratio, 8.0) << n;
    EXPECT_LE(ratio, 32.0) << n;
  }
}

TEST(Transport, Linearity) {
  CounterRng rng(200);
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  AConnection conn = random_connection(R, Bundle::E, rng);
  APath p = path_from_coefficients(
      R, [](double t) { return vec({std::cos(t), t, 1.0}); }, vec({0.5, -0.2, 0.3}));
  Eigen::VectorXd v0 = Eigen::VectorXd::LinSpaced(6, -1.0, 1.5), w0 = Eigen::VectorXd::LinSpaced(6, 2.0, 0.1);
  Eigen::MatrixXd sum = rk4_transport(conn, p, v0 + w0, 500);
  Eigen::MatrixXd parts = rk4_transport(conn, p, v0, 500) + rk4_transport(conn, p, w0, 500);
  EXPECT_LT(max_diff(sum, parts), 1e-10);
}

TEST(Transport, Reparametrization) {
  CounterRng rng(201);
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  AConnection conn = random_connection(R, Bundle::E, rng);
  APath p = path_from_coefficients(
      R, [](double t) { return vec({std::cos(t), t, 1.0 - t}); }, vec({0.5, -0.2, 0.3}));
  APath q = reparametrize(p, [](double t) { return t * t; }, [](double t) { return 2 * t; });
  EXPECT_LT(max_diff(q.position(1.0), p.position(1.0)), 1e-12);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(6, 6);
  TransportResult a = parallel_transport(conn, p, I);
  TransportResult b = parallel_transport(conn, q, I);
  EXPECT_LT(max_diff(a.value, b.value), 1e-7);
}

TEST(Holonomy, ZeroPathIsIdentity) {
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  CounterRng rng(202);
  AConnection conn = random_connection(R, Bundle::A, rng);
  APath p = constant_path(R, Eigen::VectorXd::Zero(3), vec({0.2, 0.4, -0.1}));
  EXPECT_LT(max_diff(holonomy_matrix(conn, p).value, Eigen::MatrixXd::Identity(3, 3)), 1e-15);
}

TEST(Holonomy, LoopThenReverseIsIdentity) {
  CounterRng rng(203);
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  AConnection conn = random_connection(R, Bundle::E, rng);
  APath p = path_from_coefficients(
      R, [](double t) { return vec({t, std::sin(3 * t), 0.5}); }, vec({0.3, 0.6, -0.4}));
  APath loop = concatenate(p, reverse(p));
  EXPECT_LT(max_diff(holonomy_matrix(conn, loop).value, Eigen::MatrixXd::Identity(6, 6)), 1e-7);
}

TEST(Holonomy, ConcatenationComposes) {
  StructureConstants g = catalog::so3();
  LieAlgebroid A = catalog::lie_algebra(g, "so3");
  const Eigen::VectorXd v = vec({0.4, 0.1, -0.3}), w = vec({-0.2, 0.5, 0.7});
  APath l1 = constant_path(A, v, Eigen::VectorXd(0));
  APath l2 = constant_path(A, w, Eigen::VectorXd(0));
  AConnection ad = ad_connection(A);
  Eigen::MatrixXd h12 = holonomy_matrix(ad, concatenate(l1, l2)).value;
  Eigen::MatrixXd composed = holonomy_matrix(ad, l2).value * holonomy_matrix(ad, l1).value;
  EXPECT_LT(max_diff(h12, composed), 1e-8);
  EXPECT_LT(max_diff(h12, oracle_exp(-g.ad(w)) * oracle_exp(-g.ad(v))), 1e-8);

  // The same on a latitude loop with a non-constant connection.
  CounterRng rng(204);
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  AConnection conn = random_metric_connection(R, Bundle::E, rng);
  APath c1 = lift_base_path(R, latitude_circle());
  APath c2 = reverse(constant_path(R, vec({0, 0, 2 * kPi}), vec({1, 0, 0})));
  Eigen::MatrixXd lhs = holonomy_matrix(conn, concatenate(c1, c2)).value;
  Eigen::MatrixXd rhs = holonomy_matrix(conn, c2).value * holonomy_matrix(conn, c1).value;
  EXPECT_LT(max_diff(lhs, rhs), 1e-8);
}

TEST(Holonomy, NotALoop) {
  LieAlgebroid R = catalog::transformation(catalog::so3_rotations());
  APath p = constant_path(R, vec({0, 0, 1}), vec({1, 0, 0}));
  EXPECT_EQ(kind_of([&] { holonomy_matrix(ad_connection(R), p); }), ErrorKind::NotALoop);
}

TEST(Transport, ToleranceNotMet) {
  LieAlgebroid A = catalog::lie_algebra(catalog::sl2(), "sl2");
  APath loop = constant_path(A, vec({3.0, -2.0, 2.5}), Eigen::VectorXd(0));
  EXPECT_EQ(kind_of([&] {
              parallel_transport(ad_connection(A), loop, Eigen::MatrixXd::Identity(3, 3), 10, 1e-30, 40);
            }),
            ErrorKind::ToleranceNotMet);
}

TEST(Transport, KernelDirectionsDoNotMatter) {
  // T R plus a zero-anchor abelian direction, with a connection that ignores it.
  Chart chart(1);
  FieldMatrix b(2, 1, 1);
  b(0, 0) = ScalarField::constant(1, 1.0);
  LieAlgebroid A = build_algebroid(chart, 2, b, BracketTensor(2, 1), "tangent_plus_kernel");
  FieldMatrix g0(2, 2, 1);
  g0(0, 0) = parse_field(chart, "x1^2 - 1");
  g0(0, 1) = parse_field(chart, "2*x1");
  g0(1, 0) = parse_field(chart, "0.5");
  g0(1, 1) = parse_field(chart, "x1");
  AConnection conn = build_connection(A, Bundle::A, {g0, FieldMatrix(2, 2, 1)});
  APath p1 = path_from_coefficients(A, [](double t) { return vec({1.0 + t, 0.0}); }, vec({-0.3}));
  APath p2 = path_from_coefficients(A, [](double t) { return vec({1.0 + t, std::sin(kPi * t)}); }, vec({-0.3}));
  EXPECT_LT(max_diff(p1.position(1.0), p2.position(1.0)), 1e-12);
  const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
  EXPECT_LT(max_diff(parallel_transport(conn, p1, I).value, parallel_transport(conn, p2, I).value), 1e-9);
}

TEST(FixedPoint, So3AboutThirdAxis) {
  FixedPointHolonomy h = fixed_point_holonomy(catalog::so3_rotations(), vec({0, 0, 1}));
  EXPECT_LT(max_diff(h.algebra, rotation_z(1.0)), 1e-12);
  // D rho(e3) at 0 maps x to (x2, -x1, 0): rotation by one radian clockwise.
  EXPECT_LT(max_diff(h.base, rotation_z(-1.0)), 1e-12);
}

TEST(FixedPoint, MatchesOracleExponential) {
  TransformationData T = catalog::coadjoint_action(catalog::sl2());
  const Eigen::VectorXd v = vec({0.3, -0.5, 0.8});
  FixedPointHolonomy h = fixed_point_holonomy(T, v);
  EXPECT_LT(max_diff(h.algebra, oracle_exp(T.algebra.ad(v))), 1e-12);
  EXPECT_LT(max_diff(matrix_exponential(T.algebra.ad(v)), oracle_exp(T.algebra.ad(v))), 1e-13);
}

TEST(FixedPoint, AbelianIsIdentity) {
  TransformationData T{catalog::abelian(2), {}};
  Chart c(2);
  T.action = {VectorField({parse_field(c, "x1"), parse_field(c, "0")}), VectorField({parse_field(c, "x2"), parse_field(c, "x1")})};
  FixedPointHolonomy h = fixed_point_holonomy(T, vec({1.5, -0.5}));
  EXPECT_LT(max_diff(h.algebra, Eigen::MatrixXd::Identity(2, 2)), 1e-15);
}

TEST(FixedPoint, NotAFixedPoint) {
  TransformationData T{catalog::abelian(1), {VectorField({ScalarField::constant(1, 1.0)})}};
  EXPECT_EQ(kind_of([&] { fixed_point_holonomy(T, vec({1.0})); }), ErrorKind::NotAFixedPoint);
}

TEST(FixedPoint, InvertsBasicHolonomy) {
  TransformationData T = catalog::so3_rotations();
  LieAlgebroid R = catalog::transformation(T);
  for (const Eigen::VectorXd& v : {vec({0, 0, 1}), vec({0.3, -0.7, 0.2})}) {
    FixedPointHolonomy h = fixed_point_holonomy(T, v);
    APath loop = constant_path(R, v, Eigen::VectorXd::Zero(3));
    Eigen::MatrixXd H = holonomy_matrix(basic_connection(R), loop).value;
    EXPECT_LT(max_diff(h.algebra * H.topLeftCorner(3, 3), Eigen::MatrixXd::Identity(3, 3)), 1e-6);
  }
}
