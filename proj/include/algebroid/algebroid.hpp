#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <memory>
#include <string>
#include <vector>

#include "algebroid/field.hpp"
#include "algebroid/field_matrix.hpp"

namespace algebroid {

/// Real structure constants c^{st}_u of a finite-dimensional Lie algebra,
/// [e_s, e_t] = sum_u c^{st}_u e_u (0-based indices).
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t n) : n_(n), c_(n * n * n, 0.0) {}

  std::size_t dimension() const { return n_; }
  double& operator()(std::size_t s, std::size_t t, std::size_t u) { return c_[(s * n_ + t) * n_ + u]; }
  double operator()(std::size_t s, std::size_t t, std::size_t u) const { return c_[(s * n_ + t) * n_ + u]; }

  /// Sets c^{st}_u = v and c^{ts}_u = -v.
  void set_antisymmetric(std::size_t s, std::size_t t, std::size_t u, double v);

  Eigen::VectorXd bracket(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const;
  /// Matrix of ad_v with (ad_v)(u,t) = sum_s v_s c^{st}_u.
  Eigen::MatrixXd ad(const Eigen::VectorXd& v) const;
  Eigen::MatrixXd ad(std::size_t s) const;

  double antisymmetry_residual() const;
  /// Largest |cyclic sum| over basis triples.
  double jacobi_residual() const;

 private:
  std::size_t n_ = 0;
  std::vector<double> c_;
};

/// Bracket tensor of polynomial structure functions c^{st}_u.
class BracketTensor {
 public:
  BracketTensor() = default;
  BracketTensor(std::size_t r, std::size_t nvars) : r_(r), nvars_(nvars), c_(r * r * r, ScalarField(nvars)) {}

  std::size_t rank() const { return r_; }
  std::size_t nvars() const { return nvars_; }
  ScalarField& operator()(std::size_t s, std::size_t t, std::size_t u) { return c_[(s * r_ + t) * r_ + u]; }
  const ScalarField& operator()(std::size_t s, std::size_t t, std::size_t u) const {
    return c_[(s * r_ + t) * r_ + u];
  }

  static BracketTensor from_constants(const StructureConstants& g, std::size_t nvars);

 private:
  std::size_t r_ = 0, nvars_ = 0;
  std::vector<ScalarField> c_;
};

/// Lie algebroid on a single chart with a trivializing frame alpha^1..alpha^r.
/// A cheap shared handle to immutable data; copies compare equal under same_as.
class LieAlgebroid {
 public:
  const Chart& chart() const { return d_->chart; }
  std::size_t dimension() const { return d_->chart.dimension(); }
  std::size_t rank() const { return d_->rank; }
  const std::string& name() const { return d_->name; }

  /// r x m matrix with entries b^{si}.
  const FieldMatrix& anchor() const { return d_->anchor; }
  const BracketTensor& bracket() const { return d_->bracket; }
  const ScalarField& b(std::size_t s, std::size_t i) const { return d_->anchor(s, i); }
  const ScalarField& c(std::size_t s, std::size_t t, std::size_t u) const { return d_->bracket(s, t, u); }

  /// #alpha^s applied to f, i.e. sum_i b^{si} df/dx^i.
  ScalarField anchor_derivative(std::size_t s, const ScalarField& f) const;
  Eigen::MatrixXd anchor_at(std::span<const double> p) const;

  bool same_as(const LieAlgebroid& other) const { return d_ == other.d_; }

 private:
  struct Data {
    Chart chart{0};
    std::size_t rank = 0;
    FieldMatrix anchor;
    BracketTensor bracket;
    std::string name;
  };
  explicit LieAlgebroid(std::shared_ptr<const Data> d) : d_(std::move(d)) {}
  friend LieAlgebroid build_algebroid(const Chart&, std::size_t, FieldMatrix, BracketTensor, std::string);

  std::shared_ptr<const Data> d_;
};

/// Builds an algebroid from its structure functions. Checks shapes and that
/// c is antisymmetric as polynomials; does not check Jacobi (see validate).
/// Throws Error{ShapeMismatch} or Error{AntisymmetryViolation}.
LieAlgebroid build_algebroid(const Chart& chart, std::size_t rank, FieldMatrix anchor, BracketTensor bracket,
                             std::string name = {});

/// A section sum_s a_s alpha^s.
class Section {
 public:
  Section(LieAlgebroid algebroid, std::vector<ScalarField> coefficients);
  static Section zero(const LieAlgebroid& A);
  static Section basis(const LieAlgebroid& A, std::size_t s);
  static Section constant(const LieAlgebroid& A, const Eigen::VectorXd& v);

  const LieAlgebroid& algebroid() const { return A_; }
  const std::vector<ScalarField>& coefficients() const { return a_; }
  const ScalarField& operator[](std::size_t s) const { return a_[s]; }
  std::size_t size() const { return a_.size(); }

  Eigen::VectorXd evaluate(std::span<const double> p) const;
  bool is_zero() const;
  double max_abs_coefficient() const;

  Section operator-() const;
  Section& operator+=(const Section& o);
  Section& operator-=(const Section& o);
  friend Section operator+(Section a, const Section& b) { return a += b; }
  friend Section operator-(Section a, const Section& b) { return a -= b; }
  friend Section operator*(const ScalarField& f, Section s);
  friend Section operator*(double f, Section s);

 private:
  LieAlgebroid A_;
  std::vector<ScalarField> a_;
};

/// Vector field X = sum X^i d/dx^i with polynomial components.
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(std::vector<ScalarField> components);
  static VectorField zero(std::size_t dimension, std::size_t nvars);

  std::size_t size() const { return X_.size(); }
  std::size_t nvars() const { return nvars_; }
  const ScalarField& operator[](std::size_t i) const { return X_[i]; }
  const std::vector<ScalarField>& components() const { return X_; }

  /// X(f) = sum_i X^i df/dx^i.
  ScalarField apply(const ScalarField& f) const;
  Eigen::VectorXd evaluate(std::span<const double> p) const;
  bool is_zero() const;
  double max_abs_coefficient() const;

  friend VectorField operator-(const VectorField& a, const VectorField& b);
  friend bool operator==(const VectorField& a, const VectorField& b) { return a.X_ == b.X_; }

 private:
  std::size_t nvars_ = 0;
  std::vector<ScalarField> X_;
};

/// Classical bracket of vector fields [X,Y]^i = X(Y^i) - Y(X^i).
VectorField lie_bracket(const VectorField& X, const VectorField& Y);

/// [alpha, beta] with coefficients
///   sum a_s b_t c^{st}_u + #alpha(b_u) - #beta(a_u).
/// Throws Error{AlgebroidMismatch}.
Section bracket_sections(const LieAlgebroid& A, const Section& alpha, const Section& beta);

/// #alpha with components sum_s a_s b^{si}. Throws Error{AlgebroidMismatch}.
VectorField anchor_apply(const LieAlgebroid& A, const Section& alpha);

struct ValidationReport {
  double anchor_residual = 0.0;
  double jacobi_residual = 0.0;
  double antisymmetry_residual = 0.0;
  bool anchor_pass = true;
  bool jacobi_pass = true;
  bool antisymmetry_pass = true;
  bool pass = true;
  double tolerance = 0.0;
  std::vector<Point> points;
};

/// Anchor-morphism, Jacobi and antisymmetry residuals at the sample points.
/// Throws Error{InvalidInput} when no point is given.
ValidationReport validate(const LieAlgebroid& A, const std::vector<Point>& sample_points, double tol);

/// Numerical rank of b(p) with singular-value cutoff 1e-9 * sigma_max.
std::size_t anchor_rank_at(const LieAlgebroid& A, std::span<const double> p);

struct IsotropyResult {
  /// r x d matrix, columns form an orthonormal basis of the kernel.
  Eigen::MatrixXd basis;
  /// Structure constants of the induced bracket in that basis.
  StructureConstants constants;
  double closure_residual = 0.0;
};

/// Isotropy Lie algebra ker #(p) with its induced bracket.
/// Throws Error{DimensionMismatch} or Error{NotClosed}.
IsotropyResult isotropy_at(const LieAlgebroid& A, std::span<const double> p);

/// A Lie algebra together with an action by vector fields on a chart.
struct TransformationData {
  StructureConstants algebra;
  std::vector<VectorField> action;
};

struct Linearization {
  /// The isotropy algebra and its linear action on the normal space, as
  /// vector fields in normal coordinates.
  TransformationData data;
  Eigen::MatrixXd isotropy_basis;
  /// m x n matrix whose columns are the chosen coordinate directions spanning
  /// a complement of Im #(p).
  Eigen::MatrixXd normal_basis;
  std::vector<std::size_t> normal_coordinates;
  /// n x n matrix per isotropy generator.
  std::vector<Eigen::MatrixXd> action_matrices;
};

/// Linearization at p: isotropy algebra plus the linearized action on
/// R^m / Im #(p).
Linearization linearize_at(const LieAlgebroid& A, std::span<const double> p);

/// Algebroid obtained by the change of frame alpha'^{s'} = sum_s a(s',s) alpha^s.
/// `a` must have a polynomial inverse (Error{NotInvertible} otherwise).
LieAlgebroid change_frame(const LieAlgebroid& A, const FieldMatrix& a);

}  // namespace algebroid
