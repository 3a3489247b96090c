#include "algebroid/classes.hpp"

#include <cmath>
#include <map>
#include <numbers>

#include "algebroid/catalog.hpp"
#include "algebroid/combinatorics.hpp"
#include "algebroid/error.hpp"
#include "algebroid/quadrature.hpp"
#include "algebroid/random.hpp"

namespace algebroid {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kClosednessTol = 1e-7;
constexpr std::uint64_t kClosednessSeed = 0x5ec0dd;

// Scalar and matrix helpers so the polarization can run on numbers and on
// polynomial matrices alike.
double trace_of(const Eigen::MatrixXd& m) { return m.trace(); }
ScalarField trace_of(const FieldMatrix& m) { return m.trace(); }
double unit_like(const Eigen::MatrixXd&) { return 1.0; }
ScalarField unit_like(const FieldMatrix& m) { return ScalarField::constant(m.nvars(), 1.0); }
double zero_like(const Eigen::MatrixXd&) { return 0.0; }
ScalarField zero_like(const FieldMatrix& m) { return ScalarField(m.nvars()); }

template <class M>
auto sigma_impl(const M& X, std::size_t k) {
  const M Y = X * (1.0 / kTwoPi);
  using S = decltype(trace_of(Y));
  std::vector<S> p(k + 1, zero_like(Y));
  M power = Y;
  for (std::size_t j = 1; j <= k; ++j) {
    p[j] = trace_of(power);
    if (j < k) power = power * Y;
  }
  std::vector<S> e(k + 1, zero_like(Y));
  e[0] = unit_like(Y);
  for (std::size_t n = 1; n <= k; ++n) {
    S acc = zero_like(Y);
    for (std::size_t i = 1; i <= n; ++i) {
      S term = e[n - i] * p[i];
      if (i % 2 == 1) acc += term;
      else acc -= term;
    }
    e[n] = acc * (1.0 / static_cast<double>(n));
  }
  return e[k];
}

template <class M>
auto polarize(std::span<const M> X, std::size_t k) {
  using S = decltype(trace_of(X[0]));
  S total = zero_like(X[0]);
  double factorial = 1.0;
  for (std::size_t i = 2; i <= k; ++i) factorial *= static_cast<double>(i);
  for (std::size_t mask = 1; mask < (std::size_t{1} << k); ++mask) {
    M sum = X[0] * 0.0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (std::size_t{1} << i)) {
        sum = sum + X[i];
        ++count;
      }
    S s = sigma_impl(sum, k);
    if ((k - count) % 2 == 0) total += s;
    else total -= s;
  }
  return total * (1.0 / factorial);
}

/// Canonical key for a list of antisymmetric pair arguments: each pair
/// ordered (sign recorded), then the list sorted (P is symmetric).
struct PairKey {
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  int sign = 1;
};

PairKey normalize_pairs(std::vector<std::pair<std::size_t, std::size_t>> pairs) {
  PairKey key;
  for (auto& [a, b] : pairs) {
    if (a == b) {
      key.sign = 0;
      return key;
    }
    if (a > b) {
      std::swap(a, b);
      key.sign = -key.sign;
    }
  }
  std::sort(pairs.begin(), pairs.end());
  key.pairs = std::move(pairs);
  return key;
}

AConnection blend(const LieAlgebroid& A, const std::vector<std::pair<double, const AConnection*>>& terms) {
  const AConnection& first = *terms.front().second;
  std::vector<FieldMatrix> g;
  for (std::size_t s = 0; s < A.rank(); ++s) {
    FieldMatrix acc(first.fiber(), first.fiber(), A.dimension());
    for (const auto& [w, c] : terms)
      if (w != 0.0) acc += w * c->symbols(s);
    g.push_back(std::move(acc));
  }
  return build_connection(A, first.bundle(), std::move(g));
}

void require_same_bundle(const LieAlgebroid& A, const AConnection& a, const AConnection& b) {
  if (!a.algebroid().same_as(A) || !b.algebroid().same_as(A))
    throw Error(ErrorKind::AlgebroidMismatch, "connections belong to another algebroid");
  if (a.bundle() != b.bundle() || a.fiber() != b.fiber())
    throw Error(ErrorKind::BundleMismatch, "connections live on different bundles");
}

std::vector<FieldMatrix> symbol_difference(const AConnection& a, const AConnection& b) {
  std::vector<FieldMatrix> out;
  for (std::size_t s = 0; s < a.symbols().size(); ++s) out.push_back(a.symbols(s) - b.symbols(s));
  return out;
}

/// sum over S_n of sign * P(fixed one-slot args first, then curvature pairs).
/// `lead` is the number of leading 1-form slots whose arguments are taken
/// from `one_forms[j]`.
ScalarField alternating_sum(const std::vector<std::size_t>& I, const std::vector<const std::vector<FieldMatrix>*>& one_forms,
                            const AForm& Omega, const InvariantPolynomial& P,
                            std::map<std::pair<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>,
                                     ScalarField>& memo) {
  const std::size_t lead = one_forms.size();
  const std::size_t n = I.size();
  const std::size_t nv = Omega.algebroid().dimension();
  ScalarField total(nv);
  for (const auto& sp : permutations(n)) {
    std::vector<std::size_t> heads;
    for (std::size_t j = 0; j < lead; ++j) heads.push_back(I[sp.perm[j]]);
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t j = lead; j + 1 < n; j += 2) pairs.emplace_back(I[sp.perm[j]], I[sp.perm[j + 1]]);
    PairKey key = normalize_pairs(std::move(pairs));
    if (key.sign == 0) continue;
    auto mk = std::make_pair(heads, key.pairs);
    auto it = memo.find(mk);
    if (it == memo.end()) {
      std::vector<FieldMatrix> args;
      for (std::size_t j = 0; j < lead; ++j) args.push_back((*one_forms[j])[heads[j]]);
      for (const auto& [a, b] : key.pairs) args.push_back(Omega.component({a, b}));
      it = memo.emplace(mk, P(std::span<const FieldMatrix>(args))).first;
    }
    if (it->second.is_zero()) continue;
    if (sp.sign * key.sign > 0) total += it->second;
    else total -= it->second;
  }
  return total;
}

double closedness(const LieAlgebroid& A, const AForm& form) {
  if (form.degree() + 1 > A.rank()) return 0.0;
  return d_A(A, form).max_abs_at(sample_points(kClosednessSeed, 20, A.dimension()));
}

}  // namespace

//------------------------------------------------------------------------------
// Invariant polynomials
//------------------------------------------------------------------------------

double InvariantPolynomial::sigma(const Eigen::MatrixXd& X) const { return sigma_impl(X, k_); }
ScalarField InvariantPolynomial::sigma(const FieldMatrix& X) const { return sigma_impl(X, k_); }

double InvariantPolynomial::operator()(std::span<const Eigen::MatrixXd> X) const {
  if (X.size() != k_) throw Error(ErrorKind::BadOrder, "polynomial of order " + std::to_string(k_) + " needs " +
                                                           std::to_string(k_) + " arguments");
  return polarize(X, k_);
}

ScalarField InvariantPolynomial::operator()(std::span<const FieldMatrix> X) const {
  if (X.size() != k_) throw Error(ErrorKind::BadOrder, "polynomial of order " + std::to_string(k_) + " needs " +
                                                           std::to_string(k_) + " arguments");
  return polarize(X, k_);
}

InvariantPolynomial invariant_polynomial(std::size_t k, std::size_t q) {
  if (k < 1 || k > q)
    throw Error(ErrorKind::BadOrder, "order " + std::to_string(k) + " is outside 1.." + std::to_string(q));
  return InvariantPolynomial(k, q);
}

//------------------------------------------------------------------------------
// Chern-Weil forms and transgressions
//------------------------------------------------------------------------------

ChernWeilResult chern_weil(const LieAlgebroid& A, const AConnection& conn, const InvariantPolynomial& P) {
  if (P.fiber() != conn.fiber()) throw Error(ErrorKind::BundleMismatch, "polynomial and connection fibres differ");
  const std::size_t k = P.order();
  ChernWeilResult res{AForm(A, 2 * k), 2 * k > A.rank(), 0.0};
  if (res.degree_overflow) return res;
  const AForm Omega = local_curvature(conn);
  std::map<std::pair<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>, ScalarField> memo;
  for (std::size_t pos = 0; pos < res.form.tuples().size(); ++pos)
    res.form.component_at(pos)(0, 0) = alternating_sum(res.form.tuples()[pos], {}, Omega, P, memo);
  res.closedness_residual = closedness(A, res.form);
  return res;
}

AForm transgression(const LieAlgebroid& A, const AConnection& nabla1, const AConnection& nabla0,
                    const InvariantPolynomial& P, std::size_t nodes) {
  require_same_bundle(A, nabla1, nabla0);
  if (P.fiber() != nabla1.fiber()) throw Error(ErrorKind::BundleMismatch, "polynomial and connection fibres differ");
  const std::size_t k = P.order();
  AForm out(A, 2 * k - 1);
  if (2 * k - 1 > A.rank()) return out;
  const std::vector<FieldMatrix> w10 = symbol_difference(nabla1, nabla0);
  const QuadratureRule rule = gauss_legendre(nodes);
  for (std::size_t n = 0; n < rule.nodes.size(); ++n) {
    const double t = rule.nodes[n];
    const AForm Omega = local_curvature(blend(A, {{t, &nabla1}, {1.0 - t, &nabla0}}));
    std::map<std::pair<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>, ScalarField> memo;
    for (std::size_t pos = 0; pos < out.tuples().size(); ++pos) {
      const ScalarField v = alternating_sum(out.tuples()[pos], {&w10}, Omega, P, memo);
      out.component_at(pos)(0, 0) += v * (rule.weights[n] * static_cast<double>(k));
    }
  }
  return out;
}

AForm secondary_triple(const LieAlgebroid& A, const AConnection& nabla2, const AConnection& nabla1,
                       const AConnection& nabla0, const InvariantPolynomial& P, std::size_t nodes) {
  require_same_bundle(A, nabla2, nabla0);
  require_same_bundle(A, nabla1, nabla0);
  const std::size_t k = P.order();
  if (2 * k - 2 > A.rank())
    throw Error(ErrorKind::DegreeOverflow, "degree " + std::to_string(2 * k - 2) + " exceeds the rank");
  AForm out(A, 2 * k - 2);
  if (k < 2) return out;
  const std::vector<FieldMatrix> w10 = symbol_difference(nabla1, nabla0);
  const std::vector<FieldMatrix> w20 = symbol_difference(nabla2, nabla0);
  const QuadratureRule rule = gauss_legendre(nodes);
  const double scale = static_cast<double>(k * (k - 1));
  for (std::size_t a = 0; a < rule.nodes.size(); ++a)
    for (std::size_t b = 0; b < rule.nodes.size(); ++b) {
      const double u = rule.nodes[a], v = rule.nodes[b];
      const double t1 = u, t2 = (1.0 - u) * v;
      const double weight = rule.weights[a] * rule.weights[b] * (1.0 - u);
      const AForm Omega = local_curvature(blend(A, {{t1, &nabla1}, {t2, &nabla2}, {1.0 - t1 - t2, &nabla0}}));
      std::map<std::pair<std::vector<std::size_t>, std::vector<std::pair<std::size_t, std::size_t>>>, ScalarField>
          memo;
      for (std::size_t pos = 0; pos < out.tuples().size(); ++pos) {
        const ScalarField val = alternating_sum(out.tuples()[pos], {&w10, &w20}, Omega, P, memo);
        out.component_at(pos)(0, 0) += val * (weight * scale);
      }
    }
  return out;
}

CocycleSection secondary_class(const LieAlgebroid& A, std::size_t k) {
  if (k == 0 || k % 2 == 0) throw Error(ErrorKind::BadOrder, "secondary classes are defined for odd k");
  if (2 * k - 1 > A.rank())
    throw Error(ErrorKind::DegreeOverflow, "a " + std::to_string(2 * k - 1) + "-form vanishes on a rank " +
                                               std::to_string(A.rank()) + " algebroid");
  const AConnection basic = basic_connection(A);
  const AConnection flat = flat_metric_connection(A);
  const InvariantPolynomial P = invariant_polynomial(k, basic.fiber());
  CocycleSection out{transgression(A, basic, flat, P), k, "basic, flat metric", 0.0};
  out.closedness_residual = closedness(A, out.form);
  if (out.closedness_residual > kClosednessTol)
    throw Error(ErrorKind::ClosednessFailure, "d_A of the representative is " + std::to_string(out.closedness_residual));
  return out;
}

//------------------------------------------------------------------------------
// Modular class
//------------------------------------------------------------------------------

CocycleSection modular_cocycle(const LieAlgebroid& A) {
  const std::size_t r = A.rank(), m = A.dimension();
  AForm theta(A, 1);
  for (std::size_t s = 0; s < r; ++s) {
    ScalarField v(m);
    for (std::size_t u = 0; u < r; ++u) v += A.c(s, u, u);
    for (std::size_t i = 0; i < m; ++i) v += A.b(s, i).partial(i);
    theta.set_scalar({s}, v);
  }
  CocycleSection out{theta, 1, "modular", 0.0};
  out.closedness_residual = closedness(A, theta);
  return out;
}

ScalarField modular_leibniz_expansion(const LieAlgebroid& A, const Section& alpha) {
  const std::size_t r = A.rank(), m = A.dimension();
  ScalarField total(m);
  // alpha^1 ^ .. ^ [alpha, alpha^k] ^ .. ^ alpha^r keeps only the alpha^k component.
  for (std::size_t k = 0; k < r; ++k) total += bracket_sections(A, alpha, Section::basis(A, k))[k];
  // L_X(dx^1 ^ .. ^ dx^m) = div(X) dx^1 ^ .. ^ dx^m.
  const VectorField X = anchor_apply(A, alpha);
  for (std::size_t i = 0; i < m; ++i) total += X[i].partial(i);
  return total;
}

Eigen::VectorXd rescaled_modular_cocycle(const LieAlgebroid& A, const ScalarField& a, std::span<const double> p) {
  const std::size_t r = A.rank();
  const double av = a.evaluate(p);
  if (av == 0.0) throw Error(ErrorKind::InvalidInput, "rescaling function vanishes at the point");
  Eigen::VectorXd out(static_cast<Eigen::Index>(r));
  for (std::size_t s = 0; s < r; ++s) {
    const Section as = Section::basis(A, s);
    const double nabla_as = A.anchor_derivative(s, a).evaluate(p) + av * modular_leibniz_expansion(A, as).evaluate(p);
    out(static_cast<Eigen::Index>(s)) = nabla_as / av;
  }
  return out;
}

ModularTheoremReport modular_theorem_check(const LieAlgebroid& A, const std::vector<Point>& points) {
  ModularTheoremReport rep{0.0, secondary_class(A, 1).form, modular_cocycle(A).form};
  AForm diff = rep.m1 - (1.0 / kTwoPi) * rep.theta;
  rep.max_deviation = diff.max_abs_at(points);
  return rep;
}

//------------------------------------------------------------------------------
// Lie algebra cocycles and transformation algebroids
//------------------------------------------------------------------------------

AForm lie_algebra_secondary(const StructureConstants& g, std::size_t k) {
  const std::size_t n = g.dimension();
  if (k == 0 || k % 2 == 0) throw Error(ErrorKind::BadOrder, "k must be odd");
  if (2 * k - 1 > n)
    throw Error(ErrorKind::BadOrder, "degree " + std::to_string(2 * k - 1) + " exceeds dim g = " + std::to_string(n));
  const LieAlgebroid A = catalog::lie_algebra(g, "g");
  AForm out(A, 2 * k - 1);
  std::vector<Eigen::MatrixXd> ad;
  for (std::size_t s = 0; s < n; ++s) ad.push_back(g.ad(s));
  std::vector<std::vector<Eigen::MatrixXd>> ad_br(n, std::vector<Eigen::MatrixXd>(n));
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = 0; t < n; ++t) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
      for (std::size_t u = 0; u < n; ++u) m += g(s, t, u) * ad[u];
      ad_br[s][t] = m;
    }
  const double norm = std::pow(kTwoPi, static_cast<double>(k));
  for (std::size_t pos = 0; pos < out.tuples().size(); ++pos) {
    const auto& I = out.tuples()[pos];
    double total = 0.0;
    for (const auto& sp : permutations(I.size())) {
      Eigen::MatrixXd prod = ad[I[sp.perm[0]]];
      for (std::size_t j = 1; j + 1 < I.size(); j += 2) prod = prod * ad_br[I[sp.perm[j]]][I[sp.perm[j + 1]]];
      total += sp.sign * prod.trace();
    }
    out.set_scalar(I, ScalarField::constant(0, total / norm));
  }
  return out;
}

std::vector<ScalarField> transformation_m1(const TransformationData& T) {
  const std::size_t r = T.algebra.dimension();
  std::vector<ScalarField> out;
  for (std::size_t s = 0; s < r; ++s) {
    const std::size_t m = T.action[s].size();
    ScalarField v = ScalarField::constant(m, T.algebra.ad(s).trace());
    for (std::size_t i = 0; i < m; ++i) v += T.action[s][i].partial(i);
    out.push_back(v * (1.0 / kTwoPi));
  }
  return out;
}

}  // namespace algebroid
