#pragma once

#include <Eigen/Dense>
#include <span>
#include <string>
#include <vector>

#include "algebroid/algebroid.hpp"
#include "algebroid/calculus.hpp"
#include "algebroid/connections.hpp"

namespace algebroid {

/// Full polarization of sigma_k, where det(mu I + X/(2 pi)) = sum_k sigma_k(X) mu^{q-k}.
class InvariantPolynomial {
 public:
  InvariantPolynomial(std::size_t k, std::size_t q) : k_(k), q_(q) {}

  std::size_t order() const { return k_; }
  std::size_t fiber() const { return q_; }

  /// sigma_k(X) via Newton's identities on tr((X/2pi)^j).
  double sigma(const Eigen::MatrixXd& X) const;
  ScalarField sigma(const FieldMatrix& X) const;

  /// P(X_1..X_k) = (1/k!) sum_{S subset {1..k}} (-1)^{k-|S|} sigma_k(sum_{i in S} X_i).
  double operator()(std::span<const Eigen::MatrixXd> X) const;
  ScalarField operator()(std::span<const FieldMatrix> X) const;

 private:
  std::size_t k_, q_;
};

/// Throws Error{BadOrder} unless 1 <= k <= q.
InvariantPolynomial invariant_polynomial(std::size_t k, std::size_t q);

struct ChernWeilResult {
  AForm form;
  bool degree_overflow = false;
  double closedness_residual = 0.0;
};

/// lambda(P)(a_1..a_2k) = sum_{S_2k} sign P(Omega(a_s1,a_s2), ..) with Omega the
/// local curvature of `conn`. When 2k exceeds the rank the zero form is
/// returned with degree_overflow set.
ChernWeilResult chern_weil(const LieAlgebroid& A, const AConnection& conn, const InvariantPolynomial& P);

/// Transgression lambda^{1,0}(P) between two connections on the same bundle:
///   int_0^1 sum_{S_{2k-1}} k sign P(omega^{10}(a_s1), Omega^t(a_s2,a_s3), ..) dt
/// with omega^t = t omega^1 + (1-t) omega^0, by Gauss-Legendre quadrature.
AForm transgression(const LieAlgebroid& A, const AConnection& nabla1, const AConnection& nabla0,
                    const InvariantPolynomial& P, std::size_t nodes = 8);

/// Triple transgression lambda^{2,1,0}(P) over the 2-simplex:
///   int_simplex sum_{S_{2k-2}} k(k-1) sign P(omega^{10}, omega^{20}, Omega^t, ..).
/// With the Cartan d_A, d_A lambda^{2,1,0} = (lambda^{1,0} - lambda^{2,0} + lambda^{2,1}) / 2,
/// matching d_A lambda^{1,0} = (lambda^1 - lambda^0) / 2.
/// Degree 2k-2; for k = 1 it is the zero function. Error{DegreeOverflow}.
AForm secondary_triple(const LieAlgebroid& A, const AConnection& nabla2, const AConnection& nabla1,
                       const AConnection& nabla0, const InvariantPolynomial& P, std::size_t nodes = 8);

struct CocycleSection {
  AForm form;
  std::size_t k = 1;
  std::string connections;
  double closedness_residual = 0.0;
};

/// m_k representative: transgression of P_k from the flat metric connection
/// to the basic connection on E = A + T*M. Requires k odd (Error{BadOrder})
/// and 2k-1 <= r (Error{DegreeOverflow}); checks closedness at 20 points
/// (Error{ClosednessFailure} above 1e-7).
CocycleSection secondary_class(const LieAlgebroid& A, std::size_t k);

/// theta(alpha^s) = sum_u c^{su}_u + sum_i db^{si}/dx^i.
CocycleSection modular_cocycle(const LieAlgebroid& A);

/// theta(alpha) for an arbitrary section, by expanding
///   nabla_alpha(alpha^1 ^ .. ^ alpha^r (x) dx^1 ^ .. ^ dx^m)
/// term by term (brackets with every frame element plus the Lie derivative
/// of the volume form).
ScalarField modular_leibniz_expansion(const LieAlgebroid& A, const Section& alpha);

/// theta_{s'}(alpha^s) at p for the rescaled frame section s' = a s, from
/// nabla(a s) = #alpha(a) s + a nabla s.
Eigen::VectorXd rescaled_modular_cocycle(const LieAlgebroid& A, const ScalarField& a, std::span<const double> p);

struct ModularTheoremReport {
  double max_deviation = 0.0;
  AForm m1;
  AForm theta;
};

/// Compares secondary_class(A, 1) with theta / 2pi at the points.
ModularTheoremReport modular_theorem_check(const LieAlgebroid& A, const std::vector<Point>& points);

/// sum_{S_{2k-1}} sign tr(ad v_1 ad[v_2,v_3] .. ad[v_{2k-2},v_{2k-1}]) / (2pi)^k on
/// every increasing basis tuple, as a form over the Lie algebra.
/// Throws Error{BadOrder} unless k is odd and 2k-1 <= dim g.
AForm lie_algebra_secondary(const StructureConstants& g, std::size_t k);

/// v -> (tr ad v + div rho(v)) / 2pi, one polynomial per basis element.
std::vector<ScalarField> transformation_m1(const TransformationData& T);

}  // namespace algebroid
