#include "algebroid/field_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "algebroid/error.hpp"

namespace algebroid {

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, std::size_t nvars)
    : rows_(rows), cols_(cols), nvars_(nvars), data_(rows * cols, ScalarField(nvars)) {}

FieldMatrix FieldMatrix::identity(std::size_t n, std::size_t nvars) {
  FieldMatrix m(n, n, nvars);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = ScalarField::constant(nvars, 1.0);
  return m;
}

FieldMatrix FieldMatrix::constant(const Eigen::MatrixXd& src, std::size_t nvars) {
  FieldMatrix m(static_cast<std::size_t>(src.rows()), static_cast<std::size_t>(src.cols()), nvars);
  for (Eigen::Index i = 0; i < src.rows(); ++i)
    for (Eigen::Index j = 0; j < src.cols(); ++j)
      m(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = ScalarField::constant(nvars, src(i, j));
  return m;
}

Eigen::MatrixXd FieldMatrix::evaluate(std::span<const double> p) const {
  Eigen::MatrixXd out(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = (*this)(i, j).evaluate(p);
  return out;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(cols_, rows_, nvars_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

ScalarField FieldMatrix::trace() const {
  if (rows_ != cols_) throw Error(ErrorKind::ShapeMismatch, "trace of a non-square matrix");
  ScalarField t(nvars_);
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool FieldMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const ScalarField& f) { return f.is_zero(); });
}

double FieldMatrix::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& f : data_) m = std::max(m, f.max_abs_coefficient());
  return m;
}

FieldMatrix FieldMatrix::pruned(double tol) const {
  FieldMatrix out = *this;
  for (auto& f : out.data_) f = f.pruned(tol);
  return out;
}

void FieldMatrix::check_same_shape(const FieldMatrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_)
    throw Error(ErrorKind::ShapeMismatch, "matrix shapes differ");
}

FieldMatrix FieldMatrix::operator-() const {
  FieldMatrix out = *this;
  for (auto& f : out.data_) f = -f;
  return out;
}

FieldMatrix& FieldMatrix::operator+=(const FieldMatrix& o) {
  check_same_shape(o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += o.data_[k];
  return *this;
}

FieldMatrix& FieldMatrix::operator-=(const FieldMatrix& o) {
  check_same_shape(o);
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= o.data_[k];
  return *this;
}

FieldMatrix& FieldMatrix::operator*=(double s) {
  for (auto& f : data_) f *= s;
  return *this;
}

FieldMatrix& FieldMatrix::operator*=(const ScalarField& g) {
  for (auto& f : data_) f = f * g;
  return *this;
}

FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b) {
  if (a.cols_ != b.rows_) throw Error(ErrorKind::ShapeMismatch, "matrix product shapes differ");
  FieldMatrix out(a.rows_, b.cols_, a.nvars_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t k = 0; k < a.cols_; ++k) {
      const ScalarField& aik = a(i, k);
      if (aik.is_zero()) continue;
      for (std::size_t j = 0; j < b.cols_; ++j)
        if (!b(k, j).is_zero()) out(i, j) += aik * b(k, j);
    }
  return out;
}

FieldMatrix polynomial_inverse(const FieldMatrix& a, double tol) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw Error(ErrorKind::NotInvertible, "frame change must be square");
  const std::size_t nv = a.nvars();
  if (n == 0) return FieldMatrix(0, 0, nv);

  // M_k = A M_{k-1} + c I with c updated to -tr(A M_k)/k; after n steps
  // A M_n + c I = 0 and c = (-1)^n det(A).
  const FieldMatrix id = FieldMatrix::identity(n, nv);
  FieldMatrix m(n, n, nv);
  ScalarField c = ScalarField::constant(nv, 1.0);
  for (std::size_t k = 1; k <= n; ++k) {
    m = a * m + c * id;
    c = (a * m).trace() * (-1.0 / static_cast<double>(k));
  }
  const ScalarField det_signed = c.pruned(tol);
  if (!det_signed.is_constant() || det_signed.is_zero())
    throw Error(ErrorKind::NotInvertible,
                "determinant is not a non-zero constant; only polynomially invertible frame changes are supported");
  const double cn = det_signed.coefficient(Exponents(nv, 0));
  if (std::abs(cn) <= tol) throw Error(ErrorKind::NotInvertible, "determinant vanishes");
  return (m * (-1.0 / cn)).pruned(tol * std::max(1.0, 1.0 / std::abs(cn)));
}

}  // namespace algebroid
