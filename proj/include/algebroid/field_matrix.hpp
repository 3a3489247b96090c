#pragma once

#include <Eigen/Dense>
#include <cstddef>
#include <span>
#include <vector>

#include "algebroid/field.hpp"

namespace algebroid {

/// Dense matrix of polynomial fields on a common chart.
class FieldMatrix {
 public:
  FieldMatrix() = default;
  FieldMatrix(std::size_t rows, std::size_t cols, std::size_t nvars);

  static FieldMatrix identity(std::size_t n, std::size_t nvars);
  static FieldMatrix constant(const Eigen::MatrixXd& m, std::size_t nvars);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nvars() const { return nvars_; }

  ScalarField& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const ScalarField& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Eigen::MatrixXd evaluate(std::span<const double> p) const;
  FieldMatrix transpose() const;
  ScalarField trace() const;
  bool is_zero() const;
  double max_abs_coefficient() const;
  FieldMatrix pruned(double tol) const;

  FieldMatrix operator-() const;
  FieldMatrix& operator+=(const FieldMatrix& o);
  FieldMatrix& operator-=(const FieldMatrix& o);
  FieldMatrix& operator*=(double s);
  FieldMatrix& operator*=(const ScalarField& f);
  friend FieldMatrix operator+(FieldMatrix a, const FieldMatrix& b) { return a += b; }
  friend FieldMatrix operator-(FieldMatrix a, const FieldMatrix& b) { return a -= b; }
  friend FieldMatrix operator*(FieldMatrix a, double s) { return a *= s; }
  friend FieldMatrix operator*(double s, FieldMatrix a) { return a *= s; }
  friend FieldMatrix operator*(const ScalarField& f, FieldMatrix a) { return a *= f; }
  friend FieldMatrix operator*(const FieldMatrix& a, const FieldMatrix& b);
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  void check_same_shape(const FieldMatrix& o) const;

  std::size_t rows_ = 0, cols_ = 0, nvars_ = 0;
  std::vector<ScalarField> data_;
};

/// Polynomial inverse of a matrix whose determinant is a non-zero constant
/// (constant or unipotent-triangular changes of frame). Uses the
/// Faddeev-LeVerrier recursion so no division by fields is needed.
/// Throws Error{NotInvertible} otherwise.
FieldMatrix polynomial_inverse(const FieldMatrix& a, double tol = 1e-12);

}  // namespace algebroid
