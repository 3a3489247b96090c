#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "algebroid/algebroid.hpp"

namespace algebroid {

/// Degree-k section of Lambda^k A*, optionally with values in q x q matrices.
/// Components are stored on strictly increasing index tuples; all other
/// tuples follow from antisymmetry. Degree above the rank gives the zero form.
class AForm {
 public:
  AForm(LieAlgebroid A, std::size_t degree, std::size_t q = 1);

  const LieAlgebroid& algebroid() const { return A_; }
  std::size_t degree() const { return k_; }
  std::size_t fiber() const { return q_; }
  const std::vector<std::vector<std::size_t>>& tuples() const { return *tuples_; }

  /// Component on an increasing tuple.
  FieldMatrix& component(const std::vector<std::size_t>& increasing);
  const FieldMatrix& component(const std::vector<std::size_t>& increasing) const;
  FieldMatrix& component_at(std::size_t position) { return comps_[position]; }
  const FieldMatrix& component_at(std::size_t position) const { return comps_[position]; }

  /// Value on an arbitrary index tuple (sign from sorting, zero on repeats).
  FieldMatrix value(std::vector<std::size_t> idx) const;
  /// Scalar forms only.
  ScalarField scalar(std::vector<std::size_t> idx) const;
  void set_scalar(const std::vector<std::size_t>& increasing, const ScalarField& f);

  Eigen::MatrixXd value_at(std::vector<std::size_t> idx, std::span<const double> p) const;
  bool is_zero() const;
  double max_abs_coefficient() const;
  /// Largest absolute entry of any component at any of the points.
  double max_abs_at(const std::vector<Point>& points) const;
  AForm pruned(double tol) const;

  AForm& operator+=(const AForm& o);
  AForm& operator-=(const AForm& o);
  AForm& operator*=(double s);
  friend AForm operator+(AForm a, const AForm& b) { return a += b; }
  friend AForm operator-(AForm a, const AForm& b) { return a -= b; }
  friend AForm operator*(double s, AForm a) { return a *= s; }
  friend AForm operator*(const ScalarField& f, AForm a);

 private:
  std::size_t position(const std::vector<std::size_t>& increasing) const;
  void check_compatible(const AForm& o) const;

  LieAlgebroid A_;
  std::size_t k_;
  std::size_t q_;
  std::shared_ptr<const std::vector<std::vector<std::size_t>>> tuples_;
  std::vector<FieldMatrix> comps_;
};

/// Degree-0 form from a function.
AForm function_form(const LieAlgebroid& A, const ScalarField& f);

/// Exterior differential in the Cartan convention
///   dQ(a_0..a_k) = sum_i (-1)^i #a_i Q(..^a_i..) + sum_{i<j} (-1)^{i+j} Q([a_i,a_j], ..).
/// Matrix-valued forms are differentiated entrywise.
AForm d_A(const LieAlgebroid& A, const AForm& Q);

/// Determinant-convention wedge (sum over shuffles, no factorials).
/// Matrix-valued factors multiply as matrices; a scalar factor scales.
AForm wedge(const AForm& P, const AForm& Q);

/// Differential k-form on R^m, i.e. a form of the tangent algebroid.
AForm differential_form(const LieAlgebroid& tangent, std::size_t k);

/// Pullback by the anchor: (#^* w)(a_1..a_k) = w(#a_1, .., #a_k).
/// `omega` is a form over any rank-m algebroid with the identity as frame
/// (the tangent algebroid of the chart). Throws Error{DimensionMismatch}.
AForm anchor_pullback(const LieAlgebroid& A, const AForm& omega);

/// Coordinates (x^1..x^m, xi^1..xi^r) on the dual bundle.
Chart dual_chart(const LieAlgebroid& A);

/// f_alpha = sum_s a_s xi^s on the dual chart.
ScalarField fiber_linear_function(const LieAlgebroid& A, const Section& alpha);

/// Hamiltonian vector field of f_alpha on the dual chart.
VectorField hamiltonian_vector_field(const LieAlgebroid& A, const Section& alpha);

/// Linear Poisson bracket on A*: {x^i,x^j} = 0, {x^i,xi^s} = -b^{si},
/// {xi^s,xi^t} = sum_u c^{st}_u xi^u. Throws Error{DimensionMismatch}.
ScalarField dual_poisson_bracket(const LieAlgebroid& A, const ScalarField& F, const ScalarField& G);

}  // namespace algebroid
