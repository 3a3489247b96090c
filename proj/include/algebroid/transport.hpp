#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "algebroid/algebroid.hpp"
#include "algebroid/connections.hpp"

namespace algebroid {

using CurveFn = std::function<Eigen::VectorXd(double)>;

/// One smooth piece of an A-path on [t0, t1]; functions take the global time.
struct PathSegment {
  double t0 = 0.0, t1 = 1.0;
  CurveFn coefficients;  ///< a(t) in R^r
  CurveFn position;      ///< gamma(t) in R^m
  CurveFn velocity;      ///< gamma'(t)
};

/// Piecewise smooth A-path on [0, 1].
struct APath {
  std::size_t rank = 0, dimension = 0;
  std::vector<PathSegment> segments;
  /// max_t |sum_s a_s b^{si}(gamma) - gamma'^i| on 256 grid points.
  double residual = 0.0;

  const PathSegment& segment_at(double t) const;
  Eigen::VectorXd coefficients(double t) const { return segment_at(t).coefficients(t); }
  Eigen::VectorXd position(double t) const { return segment_at(t).position(t); }
  Eigen::VectorXd velocity(double t) const { return segment_at(t).velocity(t); }
};

/// Tangency residual on the grid t_j = j/(n-1).
double tangency_residual(const LieAlgebroid& A, const APath& path, std::size_t grid = 256);

constexpr double kPathTolerance = 1e-6;

/// Base path with its derivative.
struct BasePath {
  CurveFn position;
  CurveFn velocity;
};

/// Base path whose coordinates are polynomials in the single variable t.
BasePath polynomial_base_path(const std::vector<ScalarField>& coordinates);

/// Lifts a base path: minimum-norm least squares for the coefficients at
/// grid nodes, local cubic interpolation in between.
/// Throws Error{NotTangent} when the residual exceeds 1e-6.
APath lift_base_path(const LieAlgebroid& A, const BasePath& gamma, std::size_t grid_size = 64);

/// A-path with prescribed coefficients starting at `start`; the base path
/// solves gamma' = b(gamma)^T a(t).
APath path_from_coefficients(const LieAlgebroid& A, CurveFn coefficients, const Eigen::VectorXd& start,
                             std::size_t resolution = 2048);
/// Constant coefficient vector v.
APath constant_path(const LieAlgebroid& A, const Eigen::VectorXd& v, const Eigen::VectorXd& start);

/// First p1, then p2 (each at double speed). Throws Error{InvalidInput} when
/// the end of p1 is not the start of p2.
APath concatenate(const APath& p1, const APath& p2);
/// Runs the path backwards: a(t) -> -a(1-t).
APath reverse(const APath& p);
/// t -> phi(t) with phi(0)=0, phi(1)=1 increasing; a is rescaled by phi'.
APath reparametrize(const APath& p, std::function<double(double)> phi, std::function<double(double)> dphi);

struct TransportResult {
  Eigen::MatrixXd value;
  std::size_t steps = 0;
  /// Richardson estimate of the error of `value` from the N and 2N runs.
  double error_estimate = 0.0;
};

/// Fixed-step RK4 for dV/dt = -omega(a(t))(gamma(t)) V with N steps overall.
Eigen::MatrixXd rk4_transport(const AConnection& conn, const APath& path, const Eigen::MatrixXd& v0, std::size_t steps);

/// Parallel transport of the columns of v0 along the path. Doubles the step
/// count until the estimate meets `tol`; Error{ToleranceNotMet} past max_steps.
TransportResult parallel_transport(const AConnection& conn, const APath& path, const Eigen::MatrixXd& v0,
                                   std::size_t steps = 1000, double tol = 1e-8, std::size_t max_steps = 1u << 18);

/// Transport of the frame around a loop. Throws Error{NotALoop}.
TransportResult holonomy_matrix(const AConnection& conn, const APath& loop, std::size_t steps = 1000,
                                double tol = 1e-8);

struct FixedPointHolonomy {
  Eigen::MatrixXd algebra;  ///< exp(ad_v)
  Eigen::MatrixXd base;     ///< exp(D rho(v) at 0)
};

/// Automorphism induced by exp(v) at the fixed point 0 of a transformation
/// algebroid. Throws Error{NotAFixedPoint}.
FixedPointHolonomy fixed_point_holonomy(const TransformationData& T, const Eigen::VectorXd& v);

/// Scaling-and-squaring Taylor matrix exponential.
Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M);

}  // namespace algebroid
