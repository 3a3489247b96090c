#pragma once

#include <string_view>
#include <utility>
#include <vector>

#include "algebroid/algebroid.hpp"
#include "algebroid/calculus.hpp"

namespace algebroid {

enum class Bundle { A, TM, CotangentM, E };

std::string_view to_string(Bundle b);
/// Fibre rank: r, m, m or r + m.
std::size_t bundle_rank(const LieAlgebroid& A, Bundle b);

/// Linear A-connection in a fixed frame e_1..e_q of the bundle:
///   nabla_{alpha^s} e_t = sum_u Gamma^{st}_u e_u,
/// stored as one q x q matrix per direction s with entry (u, t).
class AConnection {
 public:
  const LieAlgebroid& algebroid() const { return A_; }
  Bundle bundle() const { return bundle_; }
  std::size_t fiber() const { return q_; }
  const FieldMatrix& symbols(std::size_t s) const { return gamma_[s]; }
  const std::vector<FieldMatrix>& symbols() const { return gamma_; }

 private:
  AConnection(LieAlgebroid A, Bundle b, std::size_t q, std::vector<FieldMatrix> g)
      : A_(std::move(A)), bundle_(b), q_(q), gamma_(std::move(g)) {}
  friend AConnection build_connection(const LieAlgebroid&, Bundle, std::vector<FieldMatrix>);

  LieAlgebroid A_;
  Bundle bundle_;
  std::size_t q_;
  std::vector<FieldMatrix> gamma_;
};

/// Throws Error{ShapeMismatch} unless there are r matrices of size q x q.
AConnection build_connection(const LieAlgebroid& A, Bundle bundle, std::vector<FieldMatrix> gamma);

/// Section of the bundle in the connection's frame.
using FiberSection = std::vector<ScalarField>;

/// omega(alpha) with entries sum_s a_s Gamma^{st}_u at (u, t).
FieldMatrix connection_matrix(const AConnection& conn, const Section& alpha);

/// nabla_alpha v = #alpha(v) + omega(alpha) v. Throws Error{BundleMismatch}.
FiberSection covariant_derivative(const AConnection& conn, const Section& alpha, const FiberSection& v);
/// Bundle A only: result as a section.
Section covariant_derivative(const AConnection& conn, const Section& alpha, const Section& beta);

/// Tensor of type (k, l): K^{t_1..t_l}_{s_1..s_k}, k covariant and l
/// contravariant indices over the connection's frame.
class TensorSection {
 public:
  TensorSection(std::size_t q, std::size_t covariant, std::size_t contravariant, std::size_t nvars);

  static TensorSection vector(const FiberSection& v);
  static TensorSection covector(const FiberSection& w);

  std::size_t fiber() const { return q_; }
  std::size_t covariant() const { return k_; }
  std::size_t contravariant() const { return l_; }
  std::size_t nvars() const { return nvars_; }
  std::size_t size() const { return data_.size(); }

  /// Indices: the k covariant ones followed by the l contravariant ones.
  ScalarField& at(std::span<const std::size_t> idx) { return data_[offset(idx)]; }
  const ScalarField& at(std::span<const std::size_t> idx) const { return data_[offset(idx)]; }
  ScalarField& flat(std::size_t i) { return data_[i]; }
  const ScalarField& flat(std::size_t i) const { return data_[i]; }

  /// Multi-index of a flat position.
  std::vector<std::size_t> indices(std::size_t flat) const;
  bool is_zero() const;
  double max_abs_coefficient() const;
  double max_abs_at(std::span<const double> p) const;

  friend TensorSection operator-(const TensorSection& a, const TensorSection& b);

 private:
  std::size_t offset(std::span<const std::size_t> idx) const;

  std::size_t q_, k_, l_, nvars_;
  std::vector<ScalarField> data_;
};

/// A-derivative of a (k,l) tensor:
///   (nabla_a K)^{T}_{S} = #a(K^T_S) + sum over upper slots of omega(a) K
///                         - sum over lower slots of K omega(a).
/// Throws Error{BundleMismatch}.
TensorSection a_derivative(const AConnection& conn, const Section& alpha, const TensorSection& K);

/// Torsion T^{st}_u = Gamma^{st}_u - Gamma^{ts}_u - c^{st}_u as a tensor with
/// covariant indices (s,t) and contravariant index u. Bundle A only.
TensorSection torsion(const AConnection& conn);
/// T(alpha, beta) = nabla_alpha beta - nabla_beta alpha - [alpha, beta].
Section torsion_operational(const AConnection& conn, const Section& alpha, const Section& beta);
/// Contraction of a (2,1) tensor with two sections.
Section contract(const LieAlgebroid& A, const TensorSection& T, const Section& alpha, const Section& beta);

/// Curvature 2-form in coordinates:
///   R(s,t) = #s Gamma_t - #t Gamma_s + Gamma_s Gamma_t - Gamma_t Gamma_s - sum_a c^{st}_a Gamma_a.
AForm curvature(const AConnection& conn);
/// R(alpha,beta) v = nabla_alpha nabla_beta v - nabla_beta nabla_alpha v - nabla_[alpha,beta] v.
FiberSection curvature_operational(const AConnection& conn, const Section& alpha, const Section& beta,
                                   const FiberSection& v);
/// R(alpha,beta) as a matrix from a curvature form.
FieldMatrix evaluate_two_form(const AForm& R, const Section& alpha, const Section& beta);

/// Matrix-valued 1-form s -> Gamma_s.
AForm connection_form(const AConnection& conn);
/// Omega = d_A omega + omega ^ omega.
AForm local_curvature(const AConnection& conn);

/// Change of frame e'_{t'} = sum_t a(t', t) e_t. For connections on A the
/// directions change too and the result lives on change_frame(A, a).
struct FrameChange {
  FieldMatrix a;
};
/// Throws Error{NotInvertible}.
AConnection transform_symbols(const AConnection& conn, const FrameChange& change);

struct CompatiblePair {
  AConnection on_A;
  AConnection on_TM;
};
/// Gamma_A = c and nabla-check_{alpha^s} d_i = -sum_j (db^{sj}/dx^i) d_j,
/// the Lie derivative along #alpha^s.
CompatiblePair compatible_connection(const LieAlgebroid& A);
/// Largest coefficient of #nabla_{alpha^s} alpha^t - nabla-check_{alpha^s}(#alpha^t).
double compatibility_defect(const CompatiblePair& pair);

/// Basic connection on E = A + T*M with frame {alpha^s, dx^i}: the A-block
/// is c and nabla_{alpha^s} dx^i = sum_j (db^{si}/dx^j) dx^j.
AConnection basic_connection(const LieAlgebroid& A);
/// Zero symbols on E.
AConnection flat_metric_connection(const LieAlgebroid& A);

}  // namespace algebroid
