#include "algebroid/algebroid.hpp"

#include <algorithm>
#include <cmath>

#include "algebroid/error.hpp"

namespace algebroid {

namespace {

constexpr double kRankCutoff = 1e-9;
constexpr double kClosureTol = 1e-9;

Eigen::Index ei(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::size_t numerical_rank(const Eigen::JacobiSVD<Eigen::MatrixXd>& svd) {
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv(0) <= 0.0) return 0;
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) > kRankCutoff * sv(0)) ++k;
  return k;
}

void check_point(const LieAlgebroid& A, std::span<const double> p) {
  if (p.size() != A.dimension())
    throw Error(ErrorKind::DimensionMismatch, "point has " + std::to_string(p.size()) +
                                                  " coordinates, chart has " + std::to_string(A.dimension()));
}

/// Pivoted Gram-Schmidt on the columns of a projector: picks the column with
/// the largest remaining norm (lowest index on ties) and normalizes it so its
/// pivot entry is positive. Yields a canonical orthonormal basis of the range.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& projector, std::size_t dim) {
  const Eigen::Index n = projector.rows();
  Eigen::MatrixXd basis(n, ei(dim));
  Eigen::MatrixXd residual = projector;
  for (std::size_t k = 0; k < dim; ++k) {
    Eigen::Index best = 0;
    double best_norm = -1.0;
    for (Eigen::Index j = 0; j < n; ++j) {
      const double nj = residual.col(j).norm();
      if (nj > best_norm * (1.0 + 1e-12) + 1e-15) {
        best_norm = nj;
        best = j;
      }
    }
    Eigen::VectorXd v = residual.col(best) / best_norm;
    if (v(best) < 0) v = -v;
    basis.col(ei(k)) = v;
    residual -= v * (v.transpose() * residual);
  }
  return basis;
}

}  // namespace

//------------------------------------------------------------------------------
// StructureConstants / BracketTensor
//------------------------------------------------------------------------------

void StructureConstants::set_antisymmetric(std::size_t s, std::size_t t, std::size_t u, double v) {
  (*this)(s, t, u) = v;
  (*this)(t, s, u) = -v;
}

Eigen::VectorXd StructureConstants::bracket(const Eigen::VectorXd& v, const Eigen::VectorXd& w) const {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(ei(n_));
  for (std::size_t s = 0; s < n_; ++s)
    for (std::size_t t = 0; t < n_; ++t) {
      const double vw = v(ei(s)) * w(ei(t));
      if (vw == 0.0) continue;
      for (std::size_t u = 0; u < n_; ++u) out(ei(u)) += vw * (*this)(s, t, u);
    }
  return out;
}

Eigen::MatrixXd StructureConstants::ad(const Eigen::VectorXd& v) const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(ei(n_), ei(n_));
  for (std::size_t s = 0; s < n_; ++s)
    for (std::size_t t = 0; t < n_; ++t)
      for (std::size_t u = 0; u < n_; ++u) m(ei(u), ei(t)) += v(ei(s)) * (*this)(s, t, u);
  return m;
}

Eigen::MatrixXd StructureConstants::ad(std::size_t s) const {
  return ad(Eigen::VectorXd::Unit(ei(n_), ei(s)));
}

double StructureConstants::antisymmetry_residual() const {
  double m = 0.0;
  for (std::size_t s = 0; s < n_; ++s)
    for (std::size_t t = 0; t < n_; ++t)
      for (std::size_t u = 0; u < n_; ++u) m = std::max(m, std::abs((*this)(s, t, u) + (*this)(t, s, u)));
  return m;
}

double StructureConstants::jacobi_residual() const {
  double m = 0.0;
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(ei(n_), ei(n_));
  for (std::size_t a = 0; a < n_; ++a)
    for (std::size_t b = a + 1; b < n_; ++b)
      for (std::size_t c = b + 1; c < n_; ++c) {
        const Eigen::VectorXd x = id.col(ei(a)), y = id.col(ei(b)), z = id.col(ei(c));
        const Eigen::VectorXd cyc =
            bracket(bracket(x, y), z) + bracket(bracket(y, z), x) + bracket(bracket(z, x), y);
        m = std::max(m, cyc.cwiseAbs().maxCoeff());
      }
  return m;
}

BracketTensor BracketTensor::from_constants(const StructureConstants& g, std::size_t nvars) {
  const std::size_t r = g.dimension();
  BracketTensor c(r, nvars);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t)
      for (std::size_t u = 0; u < r; ++u) c(s, t, u) = ScalarField::constant(nvars, g(s, t, u));
  return c;
}

//------------------------------------------------------------------------------
// LieAlgebroid
//------------------------------------------------------------------------------

ScalarField LieAlgebroid::anchor_derivative(std::size_t s, const ScalarField& f) const {
  ScalarField out(dimension());
  for (std::size_t i = 0; i < dimension(); ++i) {
    const ScalarField& bsi = b(s, i);
    if (bsi.is_zero()) continue;
    out += bsi * f.partial(i);
  }
  return out;
}

Eigen::MatrixXd LieAlgebroid::anchor_at(std::span<const double> p) const {
  check_point(*this, p);
  return d_->anchor.evaluate(p);
}

LieAlgebroid build_algebroid(const Chart& chart, std::size_t rank, FieldMatrix anchor, BracketTensor bracket,
                             std::string name) {
  const std::size_t m = chart.dimension();
  if (rank == 0) throw Error(ErrorKind::ShapeMismatch, "rank must be positive");
  if (anchor.rows() != rank || anchor.cols() != m)
    throw Error(ErrorKind::ShapeMismatch, "anchor must be " + std::to_string(rank) + "x" + std::to_string(m) +
                                              ", got " + std::to_string(anchor.rows()) + "x" +
                                              std::to_string(anchor.cols()));
  if (bracket.rank() != rank)
    throw Error(ErrorKind::ShapeMismatch, "bracket tensor must have rank " + std::to_string(rank));
  for (std::size_t s = 0; s < rank; ++s)
    for (std::size_t i = 0; i < m; ++i)
      if (anchor(s, i).nvars() != m) throw Error(ErrorKind::ShapeMismatch, "anchor entry on the wrong chart");
  for (std::size_t s = 0; s < rank; ++s)
    for (std::size_t t = 0; t < rank; ++t)
      for (std::size_t u = 0; u < rank; ++u) {
        if (bracket(s, t, u).nvars() != m)
          throw Error(ErrorKind::ShapeMismatch, "bracket entry on the wrong chart");
        if (!(bracket(s, t, u) + bracket(t, s, u)).is_zero())
          throw Error(ErrorKind::AntisymmetryViolation,
                      "c^{" + std::to_string(s + 1) + std::to_string(t + 1) + "}_" + std::to_string(u + 1) +
                          " + c^{" + std::to_string(t + 1) + std::to_string(s + 1) + "}_" + std::to_string(u + 1) +
                          " is not zero");
      }
  auto d = std::make_shared<LieAlgebroid::Data>();
  d->chart = chart;
  d->rank = rank;
  d->anchor = std::move(anchor);
  d->bracket = std::move(bracket);
  d->name = std::move(name);
  return LieAlgebroid(std::move(d));
}

//------------------------------------------------------------------------------
// Section / VectorField
//------------------------------------------------------------------------------

Section::Section(LieAlgebroid algebroid, std::vector<ScalarField> coefficients)
    : A_(std::move(algebroid)), a_(std::move(coefficients)) {
  if (a_.size() != A_.rank())
    throw Error(ErrorKind::ShapeMismatch, "section needs " + std::to_string(A_.rank()) + " coefficients");
  for (const auto& f : a_)
    if (f.nvars() != A_.dimension()) throw Error(ErrorKind::DimensionMismatch, "coefficient on the wrong chart");
}

Section Section::zero(const LieAlgebroid& A) {
  return Section(A, std::vector<ScalarField>(A.rank(), ScalarField(A.dimension())));
}

Section Section::basis(const LieAlgebroid& A, std::size_t s) {
  std::vector<ScalarField> a(A.rank(), ScalarField(A.dimension()));
  a.at(s) = ScalarField::constant(A.dimension(), 1.0);
  return Section(A, std::move(a));
}

Section Section::constant(const LieAlgebroid& A, const Eigen::VectorXd& v) {
  if (static_cast<std::size_t>(v.size()) != A.rank()) throw Error(ErrorKind::ShapeMismatch, "vector length");
  std::vector<ScalarField> a;
  for (Eigen::Index s = 0; s < v.size(); ++s) a.push_back(ScalarField::constant(A.dimension(), v(s)));
  return Section(A, std::move(a));
}

Eigen::VectorXd Section::evaluate(std::span<const double> p) const {
  Eigen::VectorXd v(ei(a_.size()));
  for (std::size_t s = 0; s < a_.size(); ++s) v(ei(s)) = a_[s].evaluate(p);
  return v;
}

bool Section::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](const ScalarField& f) { return f.is_zero(); });
}

double Section::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& f : a_) m = std::max(m, f.max_abs_coefficient());
  return m;
}

Section Section::operator-() const {
  Section out = *this;
  for (auto& f : out.a_) f = -f;
  return out;
}

Section& Section::operator+=(const Section& o) {
  if (!A_.same_as(o.A_)) throw Error(ErrorKind::AlgebroidMismatch, "sections of different algebroids");
  for (std::size_t s = 0; s < a_.size(); ++s) a_[s] += o.a_[s];
  return *this;
}

Section& Section::operator-=(const Section& o) {
  if (!A_.same_as(o.A_)) throw Error(ErrorKind::AlgebroidMismatch, "sections of different algebroids");
  for (std::size_t s = 0; s < a_.size(); ++s) a_[s] -= o.a_[s];
  return *this;
}

Section operator*(const ScalarField& f, Section s) {
  for (auto& a : s.a_) a = f * a;
  return s;
}

Section operator*(double f, Section s) {
  for (auto& a : s.a_) a *= f;
  return s;
}

VectorField::VectorField(std::vector<ScalarField> components) : X_(std::move(components)) {
  if (!X_.empty()) nvars_ = X_.front().nvars();
  for (const auto& f : X_)
    if (f.nvars() != nvars_) throw Error(ErrorKind::DimensionMismatch, "vector field components disagree");
}

VectorField VectorField::zero(std::size_t dimension, std::size_t nvars) {
  VectorField X;
  X.nvars_ = nvars;
  X.X_.assign(dimension, ScalarField(nvars));
  return X;
}

ScalarField VectorField::apply(const ScalarField& f) const {
  if (f.nvars() != nvars_ || X_.size() != nvars_)
    throw Error(ErrorKind::DimensionMismatch, "vector field and function live on different charts");
  ScalarField out(nvars_);
  for (std::size_t i = 0; i < X_.size(); ++i)
    if (!X_[i].is_zero()) out += X_[i] * f.partial(i);
  return out;
}

Eigen::VectorXd VectorField::evaluate(std::span<const double> p) const {
  Eigen::VectorXd v(ei(X_.size()));
  for (std::size_t i = 0; i < X_.size(); ++i) v(ei(i)) = X_[i].evaluate(p);
  return v;
}

bool VectorField::is_zero() const {
  return std::all_of(X_.begin(), X_.end(), [](const ScalarField& f) { return f.is_zero(); });
}

double VectorField::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& f : X_) m = std::max(m, f.max_abs_coefficient());
  return m;
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  if (a.size() != b.size()) throw Error(ErrorKind::DimensionMismatch, "vector fields of different size");
  std::vector<ScalarField> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(a[i] - b[i]);
  VectorField r(std::move(out));
  r.nvars_ = a.nvars_;
  return r;
}

VectorField lie_bracket(const VectorField& X, const VectorField& Y) {
  if (X.size() != Y.size()) throw Error(ErrorKind::DimensionMismatch, "vector fields of different size");
  std::vector<ScalarField> out;
  for (std::size_t i = 0; i < X.size(); ++i) out.push_back(X.apply(Y[i]) - Y.apply(X[i]));
  if (out.empty()) return VectorField::zero(0, X.nvars());
  return VectorField(std::move(out));
}

//------------------------------------------------------------------------------
// Bracket and anchor
//------------------------------------------------------------------------------

Section bracket_sections(const LieAlgebroid& A, const Section& alpha, const Section& beta) {
  if (!alpha.algebroid().same_as(A) || !beta.algebroid().same_as(A))
    throw Error(ErrorKind::AlgebroidMismatch, "sections do not belong to this algebroid");
  const std::size_t r = A.rank();
  const std::size_t m = A.dimension();
  const VectorField Xa = anchor_apply(A, alpha);
  const VectorField Xb = anchor_apply(A, beta);
  std::vector<ScalarField> out(r, ScalarField(m));
  for (std::size_t s = 0; s < r; ++s) {
    if (alpha[s].is_zero()) continue;
    for (std::size_t t = 0; t < r; ++t) {
      if (beta[t].is_zero()) continue;
      const ScalarField ab = alpha[s] * beta[t];
      for (std::size_t u = 0; u < r; ++u)
        if (!A.c(s, t, u).is_zero()) out[u] += ab * A.c(s, t, u);
    }
  }
  if (m > 0)
    for (std::size_t u = 0; u < r; ++u) {
      out[u] += Xa.apply(beta[u]);
      out[u] -= Xb.apply(alpha[u]);
    }
  return Section(A, std::move(out));
}

VectorField anchor_apply(const LieAlgebroid& A, const Section& alpha) {
  if (!alpha.algebroid().same_as(A))
    throw Error(ErrorKind::AlgebroidMismatch, "section does not belong to this algebroid");
  const std::size_t m = A.dimension();
  VectorField X = VectorField::zero(m, m);
  std::vector<ScalarField> comps(m, ScalarField(m));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t s = 0; s < A.rank(); ++s)
      if (!alpha[s].is_zero() && !A.b(s, i).is_zero()) comps[i] += alpha[s] * A.b(s, i);
  if (m == 0) return X;
  return VectorField(std::move(comps));
}

//------------------------------------------------------------------------------
// Validation
//------------------------------------------------------------------------------

ValidationReport validate(const LieAlgebroid& A, const std::vector<Point>& sample_points, double tol) {
  if (sample_points.empty()) throw Error(ErrorKind::InvalidInput, "validate needs at least one sample point");
  for (const auto& p : sample_points) check_point(A, p);
  const std::size_t r = A.rank();

  ValidationReport rep;
  rep.tolerance = tol;
  rep.points = sample_points;

  std::vector<Section> basis;
  for (std::size_t s = 0; s < r; ++s) basis.push_back(Section::basis(A, s));
  std::vector<std::vector<Section>> br(r);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) br[s].push_back(bracket_sections(A, basis[s], basis[t]));

  std::vector<VectorField> anchor_defects;
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = s + 1; t < r; ++t)
      anchor_defects.push_back(anchor_apply(A, br[s][t]) -
                               lie_bracket(anchor_apply(A, basis[s]), anchor_apply(A, basis[t])));

  std::vector<Section> jacobi_defects;
  for (std::size_t a = 0; a < r; ++a)
    for (std::size_t b = a + 1; b < r; ++b)
      for (std::size_t c = b + 1; c < r; ++c)
        jacobi_defects.push_back(bracket_sections(A, br[a][b], basis[c]) + bracket_sections(A, br[b][c], basis[a]) +
                                 bracket_sections(A, br[c][a], basis[b]));

  for (const auto& p : sample_points) {
    for (const auto& X : anchor_defects)
      if (X.size() > 0) rep.anchor_residual = std::max(rep.anchor_residual, X.evaluate(p).cwiseAbs().maxCoeff());
    for (const auto& J : jacobi_defects)
      rep.jacobi_residual = std::max(rep.jacobi_residual, J.evaluate(p).cwiseAbs().maxCoeff());
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t t = 0; t < r; ++t)
        for (std::size_t u = 0; u < r; ++u)
          rep.antisymmetry_residual =
              std::max(rep.antisymmetry_residual, std::abs(A.c(s, t, u).evaluate(p) + A.c(t, s, u).evaluate(p)));
  }
  rep.anchor_pass = rep.anchor_residual <= tol;
  rep.jacobi_pass = rep.jacobi_residual <= tol;
  rep.antisymmetry_pass = rep.antisymmetry_residual <= tol;
  rep.pass = rep.anchor_pass && rep.jacobi_pass && rep.antisymmetry_pass;
  return rep;
}

//------------------------------------------------------------------------------
// Rank, isotropy, linearization
//------------------------------------------------------------------------------

std::size_t anchor_rank_at(const LieAlgebroid& A, std::span<const double> p) {
  check_point(A, p);
  if (A.dimension() == 0) return 0;
  const Eigen::MatrixXd b = A.anchor_at(p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b);
  return numerical_rank(svd);
}

namespace {

struct PointDecomposition {
  Eigen::MatrixXd kernel;  // r x d
  Eigen::MatrixXd image;   // m x k, orthonormal basis of Im #(p)
};

PointDecomposition decompose(const LieAlgebroid& A, std::span<const double> p) {
  const std::size_t r = A.rank();
  const std::size_t m = A.dimension();
  PointDecomposition out;
  if (m == 0) {
    out.kernel = Eigen::MatrixXd::Identity(ei(r), ei(r));
    out.image = Eigen::MatrixXd(0, 0);
    return out;
  }
  const Eigen::MatrixXd b = A.anchor_at(p);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(b, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const std::size_t k = numerical_rank(svd);
  const Eigen::MatrixXd U0 = svd.matrixU().rightCols(ei(r - k));
  out.kernel = canonical_basis(U0 * U0.transpose(), r - k);
  out.image = svd.matrixV().leftCols(ei(k));
  return out;
}

}  // namespace

IsotropyResult isotropy_at(const LieAlgebroid& A, std::span<const double> p) {
  check_point(A, p);
  const std::size_t r = A.rank();
  const PointDecomposition dec = decompose(A, p);
  const std::size_t d = static_cast<std::size_t>(dec.kernel.cols());

  StructureConstants cp(r);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t)
      for (std::size_t u = 0; u < r; ++u) cp(s, t, u) = A.c(s, t, u).evaluate(p);

  IsotropyResult res;
  res.basis = dec.kernel;
  res.constants = StructureConstants(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const Eigen::VectorXd w = cp.bracket(dec.kernel.col(ei(a)), dec.kernel.col(ei(b)));
      const Eigen::VectorXd coeff = dec.kernel.transpose() * w;
      const Eigen::VectorXd rest = w - dec.kernel * coeff;
      if (rest.size() > 0) res.closure_residual = std::max(res.closure_residual, rest.cwiseAbs().maxCoeff());
      for (std::size_t k = 0; k < d; ++k) res.constants(a, b, k) = coeff(ei(k));
    }
  if (res.closure_residual > kClosureTol)
    throw Error(ErrorKind::NotClosed, "bracket leaves the isotropy kernel (residual " +
                                          std::to_string(res.closure_residual) + ")");
  return res;
}

Linearization linearize_at(const LieAlgebroid& A, std::span<const double> p) {
  const IsotropyResult iso = isotropy_at(A, p);
  const std::size_t m = A.dimension();
  const std::size_t d = static_cast<std::size_t>(iso.basis.cols());
  const PointDecomposition dec = decompose(A, p);
  const std::size_t k = static_cast<std::size_t>(dec.image.cols());
  const std::size_t n = m - k;

  Linearization lin;
  lin.isotropy_basis = iso.basis;
  lin.data.algebra = iso.constants;

  // Greedy choice of coordinate directions farthest from the current span.
  Eigen::MatrixXd span = dec.image;
  lin.normal_basis = Eigen::MatrixXd::Zero(ei(m), ei(n));
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t best = 0;
    double best_norm = -1.0;
    for (std::size_t j = 0; j < m; ++j) {
      if (std::find(lin.normal_coordinates.begin(), lin.normal_coordinates.end(), j) !=
          lin.normal_coordinates.end())
        continue;
      Eigen::VectorXd e = Eigen::VectorXd::Unit(ei(m), ei(j));
      if (span.cols() > 0) e -= span * (span.transpose() * e);
      const double nj = e.norm();
      if (nj > best_norm * (1.0 + 1e-12) + 1e-15) {
        best_norm = nj;
        best = j;
      }
    }
    lin.normal_coordinates.push_back(best);
    lin.normal_basis(ei(best), ei(l)) = 1.0;
    Eigen::VectorXd e = Eigen::VectorXd::Unit(ei(m), ei(best));
    if (span.cols() > 0) e -= span * (span.transpose() * e);
    e.normalize();
    span.conservativeResize(ei(m), span.cols() + 1);
    span.col(span.cols() - 1) = e;
  }

  Eigen::MatrixXd frame(ei(m), ei(m));
  if (n > 0) frame.leftCols(ei(n)) = lin.normal_basis;
  if (k > 0) frame.rightCols(ei(k)) = dec.image;
  const Eigen::FullPivLU<Eigen::MatrixXd> lu(frame);

  for (std::size_t a = 0; a < d; ++a) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(ei(m), ei(m));
    for (std::size_t s = 0; s < A.rank(); ++s) {
      const double lam = iso.basis(ei(s), ei(a));
      if (lam == 0.0) continue;
      for (std::size_t j = 0; j < m; ++j)
        for (std::size_t c = 0; c < m; ++c) J(ei(j), ei(c)) += lam * A.b(s, j).partial(c).evaluate(p);
    }
    Eigen::MatrixXd M(ei(n), ei(n));
    for (std::size_t l = 0; l < n; ++l) {
      const Eigen::VectorXd z = lu.solve(J * lin.normal_basis.col(ei(l)));
      M.col(ei(l)) = z.head(ei(n));
    }
    lin.action_matrices.push_back(M);

    std::vector<ScalarField> comps;
    for (std::size_t j = 0; j < n; ++j) {
      ScalarField f(n);
      for (std::size_t l = 0; l < n; ++l) f += ScalarField::coordinate(n, l) * M(ei(j), ei(l));
      comps.push_back(f);
    }
    lin.data.action.push_back(n == 0 ? VectorField::zero(0, 0) : VectorField(std::move(comps)));
  }
  return lin;
}

LieAlgebroid change_frame(const LieAlgebroid& A, const FieldMatrix& a) {
  const std::size_t r = A.rank();
  const std::size_t m = A.dimension();
  if (a.rows() != r || a.cols() != r) throw Error(ErrorKind::ShapeMismatch, "frame change must be r x r");
  const FieldMatrix inv = polynomial_inverse(a);

  std::vector<Section> frame;
  for (std::size_t s = 0; s < r; ++s) {
    std::vector<ScalarField> row;
    for (std::size_t t = 0; t < r; ++t) row.push_back(a(s, t));
    frame.emplace_back(A, std::move(row));
  }
  BracketTensor c(r, m);
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = s + 1; t < r; ++t) {
      const Section w = bracket_sections(A, frame[s], frame[t]);
      for (std::size_t u2 = 0; u2 < r; ++u2) {
        ScalarField v(m);
        for (std::size_t u = 0; u < r; ++u) v += w[u] * inv(u, u2);
        c(s, t, u2) = v;
        c(t, s, u2) = -v;
      }
    }
  return build_algebroid(A.chart(), r, a * A.anchor(), std::move(c), A.name());
}

}  // namespace algebroid
