#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace algebroid {

/// A single coordinate chart: dimension m and the coordinate labels.
/// m = 0 models a point.
class Chart {
 public:
  /// Chart with the default labels x1..xm.
  explicit Chart(std::size_t dimension);
  explicit Chart(std::vector<std::string> labels);

  std::size_t dimension() const { return labels_.size(); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a coordinate label, or -1 when the name is not a coordinate.
  int index_of(std::string_view name) const;

 private:
  std::vector<std::string> labels_;
};

using Point = std::vector<double>;
using Exponents = std::vector<std::uint32_t>;

/// Sparse multivariate polynomial with double coefficients. Immutable value
/// type; all arithmetic returns new fields with zero coefficients dropped.
class ScalarField {
 public:
  using Terms = std::map<Exponents, double>;

  ScalarField() = default;
  explicit ScalarField(std::size_t nvars) : nvars_(nvars) {}
  ScalarField(std::size_t nvars, Terms terms);

  static ScalarField constant(std::size_t nvars, double value);
  /// The coordinate function x_{index+1}.
  static ScalarField coordinate(std::size_t nvars, std::size_t index);
  static ScalarField monomial(std::size_t nvars, Exponents exps, double coefficient);

  std::size_t nvars() const { return nvars_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  /// Coefficient of the given monomial (0 when absent).
  double coefficient(const Exponents& exps) const;
  double max_abs_coefficient() const;
  std::uint32_t total_degree() const;
  /// True when the field has no non-constant term.
  bool is_constant() const;

  double evaluate(std::span<const double> point) const;
  ScalarField partial(std::size_t index) const;
  /// Repeated partial derivative along the listed coordinate indices.
  ScalarField partial(std::span<const std::size_t> indices) const;

  /// Drops coefficients with |c| <= tol.
  ScalarField pruned(double tol) const;

  /// The same polynomial viewed on a chart of `nvars` coordinates, with the
  /// current variables placed at positions offset..offset+nvars()-1.
  ScalarField embedded(std::size_t nvars, std::size_t offset = 0) const;

  ScalarField operator-() const;
  ScalarField& operator+=(const ScalarField& other);
  ScalarField& operator-=(const ScalarField& other);
  ScalarField& operator*=(double s);
  friend ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
  friend ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
  friend ScalarField operator*(const ScalarField& a, const ScalarField& b);
  friend ScalarField operator*(ScalarField a, double s) { return a *= s; }
  friend ScalarField operator*(double s, ScalarField a) { return a *= s; }

  /// Structural equality of the sparse representations.
  friend bool operator==(const ScalarField& a, const ScalarField& b) {
    return a.nvars_ == b.nvars_ && a.terms_ == b.terms_;
  }

  /// Canonical text in the field grammar: terms by descending total degree,
  /// coefficients with 17 significant digits.
  std::string to_string(const Chart& chart) const;
  std::string to_string() const;

 private:
  void check_compatible(const ScalarField& other) const;

  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Parses "x1^2*x2 - 3"-style text into a canonical polynomial.
/// Throws Error{UnknownVariable} or Error{SyntaxError}.
ScalarField parse_field(const Chart& chart, std::string_view text);

/// Exact partial derivative along `derivative` followed by evaluation at p.
/// An empty multi-index is plain evaluation.
double eval_partial(const ScalarField& f, std::span<const std::size_t> derivative,
                    std::span<const double> p);

}  // namespace algebroid
