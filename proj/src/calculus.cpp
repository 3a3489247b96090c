#include "algebroid/calculus.hpp"

#include <algorithm>
#include <map>
#include <mutex>

#include "algebroid/combinatorics.hpp"
#include "algebroid/error.hpp"

namespace algebroid {

namespace {

std::shared_ptr<const std::vector<std::vector<std::size_t>>> shared_tuples(std::size_t r, std::size_t k) {
  static std::mutex mu;
  static std::map<std::pair<std::size_t, std::size_t>, std::shared_ptr<const std::vector<std::vector<std::size_t>>>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[{r, k}];
  if (!slot) slot = std::make_shared<const std::vector<std::vector<std::size_t>>>(increasing_tuples(r, k));
  return slot;
}

FieldMatrix anchor_derivative(const LieAlgebroid& A, std::size_t s, const FieldMatrix& M) {
  FieldMatrix out(M.rows(), M.cols(), M.nvars());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = A.anchor_derivative(s, M(i, j));
  return out;
}

FieldMatrix product(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.rows() == 1 && a.cols() == 1 && b.rows() != 1) return a(0, 0) * b;
  if (b.rows() == 1 && b.cols() == 1 && a.rows() != 1) return b(0, 0) * a;
  return a * b;
}

}  // namespace

//------------------------------------------------------------------------------
// AForm
//------------------------------------------------------------------------------

AForm::AForm(LieAlgebroid A, std::size_t degree, std::size_t q)
    : A_(std::move(A)), k_(degree), q_(q), tuples_(shared_tuples(A_.rank(), degree)) {
  if (q == 0) throw Error(ErrorKind::ShapeMismatch, "matrix-valued forms need q >= 1");
  comps_.assign(tuples_->size(), FieldMatrix(q, q, A_.dimension()));
}

std::size_t AForm::position(const std::vector<std::size_t>& increasing) const {
  auto it = std::lower_bound(tuples_->begin(), tuples_->end(), increasing);
  if (it == tuples_->end() || *it != increasing)
    throw Error(ErrorKind::InvalidInput, "index tuple is not strictly increasing or out of range");
  return static_cast<std::size_t>(it - tuples_->begin());
}

FieldMatrix& AForm::component(const std::vector<std::size_t>& increasing) { return comps_[position(increasing)]; }

const FieldMatrix& AForm::component(const std::vector<std::size_t>& increasing) const {
  return comps_[position(increasing)];
}

FieldMatrix AForm::value(std::vector<std::size_t> idx) const {
  if (idx.size() != k_) throw Error(ErrorKind::ShapeMismatch, "wrong number of arguments for the form");
  for (auto i : idx)
    if (i >= A_.rank()) throw Error(ErrorKind::ShapeMismatch, "frame index out of range");
  const int sign = sort_with_sign(idx);
  if (sign == 0) return FieldMatrix(q_, q_, A_.dimension());
  const FieldMatrix& c = component(idx);
  return sign > 0 ? c : -c;
}

ScalarField AForm::scalar(std::vector<std::size_t> idx) const {
  if (q_ != 1) throw Error(ErrorKind::ShapeMismatch, "form is matrix-valued");
  return value(std::move(idx))(0, 0);
}

void AForm::set_scalar(const std::vector<std::size_t>& increasing, const ScalarField& f) {
  if (q_ != 1) throw Error(ErrorKind::ShapeMismatch, "form is matrix-valued");
  component(increasing)(0, 0) = f;
}

Eigen::MatrixXd AForm::value_at(std::vector<std::size_t> idx, std::span<const double> p) const {
  return value(std::move(idx)).evaluate(p);
}

bool AForm::is_zero() const {
  return std::all_of(comps_.begin(), comps_.end(), [](const FieldMatrix& m) { return m.is_zero(); });
}

double AForm::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& c : comps_) m = std::max(m, c.max_abs_coefficient());
  return m;
}

double AForm::max_abs_at(const std::vector<Point>& points) const {
  double m = 0.0;
  for (const auto& p : points)
    for (const auto& c : comps_)
      if (!c.is_zero()) m = std::max(m, c.evaluate(p).cwiseAbs().maxCoeff());
  return m;
}

AForm AForm::pruned(double tol) const {
  AForm out = *this;
  for (auto& c : out.comps_) c = c.pruned(tol);
  return out;
}

void AForm::check_compatible(const AForm& o) const {
  if (!A_.same_as(o.A_)) throw Error(ErrorKind::AlgebroidMismatch, "forms over different algebroids");
  if (k_ != o.k_ || q_ != o.q_) throw Error(ErrorKind::ShapeMismatch, "forms of different degree or fibre");
}

AForm& AForm::operator+=(const AForm& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] += o.comps_[i];
  return *this;
}

AForm& AForm::operator-=(const AForm& o) {
  check_compatible(o);
  for (std::size_t i = 0; i < comps_.size(); ++i) comps_[i] -= o.comps_[i];
  return *this;
}

AForm& AForm::operator*=(double s) {
  for (auto& c : comps_) c *= s;
  return *this;
}

AForm operator*(const ScalarField& f, AForm a) {
  for (auto& c : a.comps_) c *= f;
  return a;
}

AForm function_form(const LieAlgebroid& A, const ScalarField& f) {
  AForm out(A, 0);
  out.set_scalar({}, f);
  return out;
}

//------------------------------------------------------------------------------
// d_A and wedge
//------------------------------------------------------------------------------

AForm d_A(const LieAlgebroid& A, const AForm& Q) {
  if (!Q.algebroid().same_as(A)) throw Error(ErrorKind::AlgebroidMismatch, "form does not belong to this algebroid");
  const std::size_t k = Q.degree();
  const std::size_t r = A.rank();
  AForm out(A, k + 1, Q.fiber());
  for (std::size_t pos = 0; pos < out.tuples().size(); ++pos) {
    const auto& I = out.tuples()[pos];
    FieldMatrix acc(Q.fiber(), Q.fiber(), A.dimension());
    for (std::size_t j = 0; j <= k; ++j) {
      std::vector<std::size_t> rest;
      for (std::size_t l = 0; l <= k; ++l)
        if (l != j) rest.push_back(I[l]);
      const FieldMatrix term = anchor_derivative(A, I[j], Q.component(rest));
      if (j % 2 == 0) acc += term;
      else acc -= term;
    }
    for (std::size_t j = 0; j <= k; ++j)
      for (std::size_t l = j + 1; l <= k; ++l) {
        std::vector<std::size_t> args(1);
        for (std::size_t n = 0; n <= k; ++n)
          if (n != j && n != l) args.push_back(I[n]);
        FieldMatrix term(Q.fiber(), Q.fiber(), A.dimension());
        for (std::size_t u = 0; u < r; ++u) {
          const ScalarField& c = A.c(I[j], I[l], u);
          if (c.is_zero()) continue;
          args[0] = u;
          const FieldMatrix v = Q.value(args);
          if (!v.is_zero()) term += c * v;
        }
        if ((j + l) % 2 == 0) acc += term;
        else acc -= term;
      }
    out.component_at(pos) = std::move(acc);
  }
  return out;
}

AForm wedge(const AForm& P, const AForm& Q) {
  if (!P.algebroid().same_as(Q.algebroid()))
    throw Error(ErrorKind::AlgebroidMismatch, "forms over different algebroids");
  if (P.fiber() != Q.fiber() && P.fiber() != 1 && Q.fiber() != 1)
    throw Error(ErrorKind::ShapeMismatch, "matrix-valued forms of different size");
  const std::size_t p = P.degree(), q = Q.degree();
  AForm out(P.algebroid(), p + q, std::max(P.fiber(), Q.fiber()));
  const auto subsets = increasing_tuples(p + q, p);
  for (std::size_t pos = 0; pos < out.tuples().size(); ++pos) {
    const auto& I = out.tuples()[pos];
    FieldMatrix acc(out.fiber(), out.fiber(), P.algebroid().dimension());
    for (const auto& S : subsets) {
      std::vector<std::size_t> left, right;
      std::size_t inversions = 0;
      std::size_t si = 0;
      for (std::size_t n = 0; n < p + q; ++n) {
        if (si < S.size() && S[si] == n) {
          left.push_back(I[n]);
          inversions += n - si;
          ++si;
        } else {
          right.push_back(I[n]);
        }
      }
      const FieldMatrix& a = P.component(left);
      const FieldMatrix& b = Q.component(right);
      if (a.is_zero() || b.is_zero()) continue;
      const FieldMatrix term = product(a, b);
      if (inversions % 2 == 0) acc += term;
      else acc -= term;
    }
    out.component_at(pos) = std::move(acc);
  }
  return out;
}

AForm differential_form(const LieAlgebroid& tangent, std::size_t k) { return AForm(tangent, k); }

//------------------------------------------------------------------------------
// Anchor pullback
//------------------------------------------------------------------------------

AForm anchor_pullback(const LieAlgebroid& A, const AForm& omega) {
  const std::size_t m = A.dimension();
  if (omega.algebroid().rank() != m || omega.algebroid().dimension() != m)
    throw Error(ErrorKind::DimensionMismatch, "differential form must live on the " + std::to_string(m) +
                                                  "-dimensional chart of the algebroid");
  const std::size_t k = omega.degree();
  AForm out(A, k, omega.fiber());
  if (k > A.rank()) return out;
  const auto& perms = permutations(k);
  for (std::size_t pos = 0; pos < out.tuples().size(); ++pos) {
    const auto& S = out.tuples()[pos];
    FieldMatrix acc(omega.fiber(), omega.fiber(), m);
    for (std::size_t ipos = 0; ipos < omega.tuples().size(); ++ipos) {
      const FieldMatrix& w = omega.component_at(ipos);
      if (w.is_zero()) continue;
      const auto& I = omega.tuples()[ipos];
      ScalarField det(m);
      for (const auto& sp : perms) {
        ScalarField prod = ScalarField::constant(m, static_cast<double>(sp.sign));
        for (std::size_t n = 0; n < k && !prod.is_zero(); ++n) prod = prod * A.b(S[n], I[sp.perm[n]]);
        det += prod;
      }
      if (!det.is_zero()) acc += det * w;
    }
    out.component_at(pos) = std::move(acc);
  }
  return out;
}

//------------------------------------------------------------------------------
// Dual Lie-Poisson structure
//------------------------------------------------------------------------------

Chart dual_chart(const LieAlgebroid& A) {
  std::vector<std::string> labels = A.chart().labels();
  for (std::size_t s = 0; s < A.rank(); ++s) labels.push_back("xi" + std::to_string(s + 1));
  return Chart(std::move(labels));
}

ScalarField fiber_linear_function(const LieAlgebroid& A, const Section& alpha) {
  if (!alpha.algebroid().same_as(A)) throw Error(ErrorKind::AlgebroidMismatch, "section of another algebroid");
  const std::size_t m = A.dimension(), n = m + A.rank();
  ScalarField f(n);
  for (std::size_t s = 0; s < A.rank(); ++s)
    if (!alpha[s].is_zero()) f += alpha[s].embedded(n) * ScalarField::coordinate(n, m + s);
  return f;
}

VectorField hamiltonian_vector_field(const LieAlgebroid& A, const Section& alpha) {
  if (!alpha.algebroid().same_as(A)) throw Error(ErrorKind::AlgebroidMismatch, "section of another algebroid");
  const std::size_t m = A.dimension(), r = A.rank(), n = m + r;
  std::vector<ScalarField> comps(n, ScalarField(n));
  const VectorField X = anchor_apply(A, alpha);
  for (std::size_t i = 0; i < m; ++i) comps[i] = X[i].embedded(n);
  for (std::size_t t = 0; t < r; ++t) {
    for (std::size_t u = 0; u < r; ++u) {
      ScalarField coeff(m);
      for (std::size_t s = 0; s < r; ++s)
        if (!alpha[s].is_zero() && !A.c(s, t, u).is_zero()) coeff += alpha[s] * A.c(s, t, u);
      for (std::size_t i = 0; i < m; ++i)
        if (!A.b(t, i).is_zero()) coeff -= alpha[u].partial(i) * A.b(t, i);
      if (!coeff.is_zero()) comps[m + t] += coeff.embedded(n) * ScalarField::coordinate(n, m + u);
    }
  }
  return VectorField(std::move(comps));
}

ScalarField dual_poisson_bracket(const LieAlgebroid& A, const ScalarField& F, const ScalarField& G) {
  const std::size_t m = A.dimension(), r = A.rank(), n = m + r;
  if (F.nvars() != n || G.nvars() != n)
    throw Error(ErrorKind::DimensionMismatch, "functions must live on the " + std::to_string(n) +
                                                  "-dimensional dual chart");
  ScalarField out(n);
  std::vector<ScalarField> dF(n), dG(n);
  for (std::size_t a = 0; a < n; ++a) {
    dF[a] = F.partial(a);
    dG[a] = G.partial(a);
  }
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t i = 0; i < m; ++i) {
      const ScalarField& b = A.b(s, i);
      if (b.is_zero()) continue;
      const ScalarField bb = b.embedded(n);
      out += bb * (dF[m + s] * dG[i] - dF[i] * dG[m + s]);
    }
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) {
      if (dF[m + s].is_zero() || dG[m + t].is_zero()) continue;
      ScalarField bracket(n);
      for (std::size_t u = 0; u < r; ++u)
        if (!A.c(s, t, u).is_zero()) bracket += A.c(s, t, u).embedded(n) * ScalarField::coordinate(n, m + u);
      if (!bracket.is_zero()) out += dF[m + s] * dG[m + t] * bracket;
    }
  return out;
}

}  // namespace algebroid
