#include "algebroid/connections.hpp"

#include <algorithm>

#include "algebroid/error.hpp"

namespace algebroid {

namespace {

FieldMatrix anchor_derivative(const LieAlgebroid& A, std::size_t s, const FieldMatrix& M) {
  FieldMatrix out(M.rows(), M.cols(), M.nvars());
  for (std::size_t i = 0; i < M.rows(); ++i)
    for (std::size_t j = 0; j < M.cols(); ++j) out(i, j) = A.anchor_derivative(s, M(i, j));
  return out;
}

void require_section(const AConnection& conn, const Section& alpha) {
  if (!alpha.algebroid().same_as(conn.algebroid()))
    throw Error(ErrorKind::AlgebroidMismatch, "section does not belong to the connection's algebroid");
}

void require_fiber(const AConnection& conn, std::size_t q) {
  if (q != conn.fiber())
    throw Error(ErrorKind::BundleMismatch, "fibre rank " + std::to_string(q) + " does not match the " +
                                               std::string(to_string(conn.bundle())) + " connection of rank " +
                                               std::to_string(conn.fiber()));
}

}  // namespace

std::string_view to_string(Bundle b) {
  switch (b) {
    case Bundle::A: return "A";
    case Bundle::TM: return "TM";
    case Bundle::CotangentM: return "T*M";
    case Bundle::E: return "E";
  }
  return "?";
}

std::size_t bundle_rank(const LieAlgebroid& A, Bundle b) {
  switch (b) {
    case Bundle::A: return A.rank();
    case Bundle::TM:
    case Bundle::CotangentM: return A.dimension();
    case Bundle::E: return A.rank() + A.dimension();
  }
  return 0;
}

AConnection build_connection(const LieAlgebroid& A, Bundle bundle, std::vector<FieldMatrix> gamma) {
  const std::size_t q = bundle_rank(A, bundle);
  if (gamma.size() != A.rank())
    throw Error(ErrorKind::ShapeMismatch, "need one symbol matrix per frame direction (" + std::to_string(A.rank()) +
                                              "), got " + std::to_string(gamma.size()));
  for (const auto& g : gamma)
    if (g.rows() != q || g.cols() != q || (q > 0 && g.nvars() != A.dimension()))
      throw Error(ErrorKind::ShapeMismatch, "symbol matrices must be " + std::to_string(q) + "x" +
                                                std::to_string(q) + " for bundle " + std::string(to_string(bundle)));
  return AConnection(A, bundle, q, std::move(gamma));
}

FieldMatrix connection_matrix(const AConnection& conn, const Section& alpha) {
  require_section(conn, alpha);
  FieldMatrix w(conn.fiber(), conn.fiber(), conn.algebroid().dimension());
  for (std::size_t s = 0; s < alpha.size(); ++s)
    if (!alpha[s].is_zero()) w += alpha[s] * conn.symbols(s);
  return w;
}

FiberSection covariant_derivative(const AConnection& conn, const Section& alpha, const FiberSection& v) {
  require_fiber(conn, v.size());
  const LieAlgebroid& A = conn.algebroid();
  const VectorField X = anchor_apply(A, alpha);
  const FieldMatrix w = connection_matrix(conn, alpha);
  FiberSection out(v.size(), ScalarField(A.dimension()));
  for (std::size_t u = 0; u < v.size(); ++u) {
    if (A.dimension() > 0) out[u] = X.apply(v[u]);
    for (std::size_t t = 0; t < v.size(); ++t)
      if (!w(u, t).is_zero() && !v[t].is_zero()) out[u] += w(u, t) * v[t];
  }
  return out;
}

Section covariant_derivative(const AConnection& conn, const Section& alpha, const Section& beta) {
  if (conn.bundle() != Bundle::A) throw Error(ErrorKind::BundleMismatch, "sections of A need a connection on A");
  return Section(conn.algebroid(), covariant_derivative(conn, alpha, beta.coefficients()));
}

//------------------------------------------------------------------------------
// TensorSection
//------------------------------------------------------------------------------

TensorSection::TensorSection(std::size_t q, std::size_t covariant, std::size_t contravariant, std::size_t nvars)
    : q_(q), k_(covariant), l_(contravariant), nvars_(nvars) {
  std::size_t n = 1;
  for (std::size_t i = 0; i < k_ + l_; ++i) n *= q_;
  data_.assign(n, ScalarField(nvars));
}

TensorSection TensorSection::vector(const FiberSection& v) {
  TensorSection T(v.size(), 0, 1, v.empty() ? 0 : v.front().nvars());
  for (std::size_t i = 0; i < v.size(); ++i) T.data_[i] = v[i];
  return T;
}

TensorSection TensorSection::covector(const FiberSection& w) {
  TensorSection T(w.size(), 1, 0, w.empty() ? 0 : w.front().nvars());
  for (std::size_t i = 0; i < w.size(); ++i) T.data_[i] = w[i];
  return T;
}

std::size_t TensorSection::offset(std::span<const std::size_t> idx) const {
  if (idx.size() != k_ + l_) throw Error(ErrorKind::ShapeMismatch, "wrong number of tensor indices");
  std::size_t off = 0;
  for (auto i : idx) {
    if (i >= q_) throw Error(ErrorKind::ShapeMismatch, "tensor index out of range");
    off = off * q_ + i;
  }
  return off;
}

std::vector<std::size_t> TensorSection::indices(std::size_t flat) const {
  std::vector<std::size_t> idx(k_ + l_);
  for (std::size_t n = idx.size(); n > 0; --n) {
    idx[n - 1] = flat % q_;
    flat /= q_;
  }
  return idx;
}

bool TensorSection::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](const ScalarField& f) { return f.is_zero(); });
}

double TensorSection::max_abs_coefficient() const {
  double m = 0.0;
  for (const auto& f : data_) m = std::max(m, f.max_abs_coefficient());
  return m;
}

double TensorSection::max_abs_at(std::span<const double> p) const {
  double m = 0.0;
  for (const auto& f : data_) m = std::max(m, std::abs(f.evaluate(p)));
  return m;
}

TensorSection operator-(const TensorSection& a, const TensorSection& b) {
  if (a.q_ != b.q_ || a.k_ != b.k_ || a.l_ != b.l_) throw Error(ErrorKind::ShapeMismatch, "tensor types differ");
  TensorSection out = a;
  for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] -= b.data_[i];
  return out;
}

TensorSection a_derivative(const AConnection& conn, const Section& alpha, const TensorSection& K) {
  require_fiber(conn, K.fiber());
  const LieAlgebroid& A = conn.algebroid();
  const VectorField X = anchor_apply(A, alpha);
  const FieldMatrix w = connection_matrix(conn, alpha);
  const std::size_t q = K.fiber();
  const std::size_t k = K.covariant();
  TensorSection out(q, k, K.contravariant(), A.dimension());
  for (std::size_t f = 0; f < K.size(); ++f) {
    const std::vector<std::size_t> idx = K.indices(f);
    ScalarField acc = A.dimension() > 0 ? X.apply(K.flat(f)) : ScalarField(0);
    std::vector<std::size_t> j = idx;
    for (std::size_t slot = 0; slot < idx.size(); ++slot) {
      for (std::size_t v = 0; v < q; ++v) {
        j[slot] = v;
        const ScalarField& kv = K.at(j);
        if (kv.is_zero()) continue;
        if (slot < k) {
          const ScalarField& wv = w(v, idx[slot]);
          if (!wv.is_zero()) acc -= wv * kv;
        } else {
          const ScalarField& wv = w(idx[slot], v);
          if (!wv.is_zero()) acc += wv * kv;
        }
      }
      j[slot] = idx[slot];
    }
    out.flat(f) = std::move(acc);
  }
  return out;
}

//------------------------------------------------------------------------------
// Torsion and curvature
//------------------------------------------------------------------------------

TensorSection torsion(const AConnection& conn) {
  if (conn.bundle() != Bundle::A) throw Error(ErrorKind::BundleMismatch, "torsion needs a connection on A");
  const LieAlgebroid& A = conn.algebroid();
  const std::size_t r = A.rank();
  TensorSection T(r, 2, 1, A.dimension());
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t)
      for (std::size_t u = 0; u < r; ++u) {
        const std::size_t idx[3] = {s, t, u};
        T.at(idx) = conn.symbols(s)(u, t) - conn.symbols(t)(u, s) - A.c(s, t, u);
      }
  return T;
}

Section torsion_operational(const AConnection& conn, const Section& alpha, const Section& beta) {
  const LieAlgebroid& A = conn.algebroid();
  return covariant_derivative(conn, alpha, beta) - covariant_derivative(conn, beta, alpha) -
         bracket_sections(A, alpha, beta);
}

Section contract(const LieAlgebroid& A, const TensorSection& T, const Section& alpha, const Section& beta) {
  const std::size_t r = A.rank();
  if (T.fiber() != r || T.covariant() != 2 || T.contravariant() != 1)
    throw Error(ErrorKind::ShapeMismatch, "expected a (2,1) tensor on A");
  std::vector<ScalarField> out(r, ScalarField(A.dimension()));
  for (std::size_t s = 0; s < r; ++s) {
    if (alpha[s].is_zero()) continue;
    for (std::size_t t = 0; t < r; ++t) {
      if (beta[t].is_zero()) continue;
      const ScalarField ab = alpha[s] * beta[t];
      for (std::size_t u = 0; u < r; ++u) {
        const std::size_t idx[3] = {s, t, u};
        if (!T.at(idx).is_zero()) out[u] += ab * T.at(idx);
      }
    }
  }
  return Section(A, std::move(out));
}

AForm curvature(const AConnection& conn) {
  const LieAlgebroid& A = conn.algebroid();
  const std::size_t r = A.rank();
  AForm R(A, 2, conn.fiber());
  for (std::size_t pos = 0; pos < R.tuples().size(); ++pos) {
    const std::size_t s = R.tuples()[pos][0], t = R.tuples()[pos][1];
    const FieldMatrix& gs = conn.symbols(s);
    const FieldMatrix& gt = conn.symbols(t);
    FieldMatrix m = anchor_derivative(A, s, gt) - anchor_derivative(A, t, gs) + gs * gt - gt * gs;
    for (std::size_t a = 0; a < r; ++a)
      if (!A.c(s, t, a).is_zero()) m -= A.c(s, t, a) * conn.symbols(a);
    R.component_at(pos) = std::move(m);
  }
  return R;
}

FiberSection curvature_operational(const AConnection& conn, const Section& alpha, const Section& beta,
                                   const FiberSection& v) {
  const FiberSection ab = covariant_derivative(conn, alpha, covariant_derivative(conn, beta, v));
  const FiberSection ba = covariant_derivative(conn, beta, covariant_derivative(conn, alpha, v));
  const FiberSection br = covariant_derivative(conn, bracket_sections(conn.algebroid(), alpha, beta), v);
  FiberSection out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = ab[i] - ba[i] - br[i];
  return out;
}

FieldMatrix evaluate_two_form(const AForm& R, const Section& alpha, const Section& beta) {
  if (R.degree() != 2) throw Error(ErrorKind::ShapeMismatch, "expected a 2-form");
  const std::size_t r = R.algebroid().rank();
  FieldMatrix out(R.fiber(), R.fiber(), R.algebroid().dimension());
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) {
      if (s == t || alpha[s].is_zero() || beta[t].is_zero()) continue;
      out += (alpha[s] * beta[t]) * R.value({s, t});
    }
  return out;
}

AForm connection_form(const AConnection& conn) {
  AForm w(conn.algebroid(), 1, conn.fiber());
  for (std::size_t s = 0; s < conn.algebroid().rank(); ++s) w.component({s}) = conn.symbols(s);
  return w;
}

AForm local_curvature(const AConnection& conn) {
  const AForm w = connection_form(conn);
  return d_A(conn.algebroid(), w) + wedge(w, w);
}

//------------------------------------------------------------------------------
// Frame changes
//------------------------------------------------------------------------------

AConnection transform_symbols(const AConnection& conn, const FrameChange& change) {
  const LieAlgebroid& A = conn.algebroid();
  const std::size_t q = conn.fiber();
  const std::size_t r = A.rank();
  const FieldMatrix& a = change.a;
  if (a.rows() != q || a.cols() != q) throw Error(ErrorKind::ShapeMismatch, "frame change must be q x q");
  const FieldMatrix inv = polynomial_inverse(a);
  const FieldMatrix inv_t = inv.transpose();
  const bool directions_change = conn.bundle() == Bundle::A;

  // Gamma in the new fibre frame along the old directions:
  //   G_s = inv^T Gamma_s a^T + inv^T (#s a)^T.
  std::vector<FieldMatrix> along_old;
  for (std::size_t s = 0; s < r; ++s)
    along_old.push_back(inv_t * conn.symbols(s) * a.transpose() + inv_t * anchor_derivative(A, s, a).transpose());

  if (!directions_change) return build_connection(A, conn.bundle(), std::move(along_old));

  std::vector<FieldMatrix> gamma;
  for (std::size_t s2 = 0; s2 < r; ++s2) {
    FieldMatrix g(q, q, A.dimension());
    for (std::size_t s = 0; s < r; ++s)
      if (!a(s2, s).is_zero()) g += a(s2, s) * along_old[s];
    gamma.push_back(std::move(g));
  }
  return build_connection(change_frame(A, a), Bundle::A, std::move(gamma));
}

//------------------------------------------------------------------------------
// Canonical connections
//------------------------------------------------------------------------------

CompatiblePair compatible_connection(const LieAlgebroid& A) {
  const std::size_t r = A.rank(), m = A.dimension();
  std::vector<FieldMatrix> ga, gt;
  for (std::size_t s = 0; s < r; ++s) {
    FieldMatrix g(r, r, m);
    for (std::size_t t = 0; t < r; ++t)
      for (std::size_t u = 0; u < r; ++u) g(u, t) = A.c(s, t, u);
    ga.push_back(std::move(g));
    FieldMatrix h(m, m, m);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) h(j, i) = -A.b(s, j).partial(i);
    gt.push_back(std::move(h));
  }
  return {build_connection(A, Bundle::A, std::move(ga)), build_connection(A, Bundle::TM, std::move(gt))};
}

double compatibility_defect(const CompatiblePair& pair) {
  const LieAlgebroid& A = pair.on_A.algebroid();
  const std::size_t r = A.rank(), m = A.dimension();
  double worst = 0.0;
  for (std::size_t s = 0; s < r; ++s)
    for (std::size_t t = 0; t < r; ++t) {
      const Section as = Section::basis(A, s);
      const VectorField lhs = anchor_apply(A, covariant_derivative(pair.on_A, as, Section::basis(A, t)));
      FiberSection anchor_t(m);
      for (std::size_t j = 0; j < m; ++j) anchor_t[j] = A.b(t, j);
      const FiberSection rhs = covariant_derivative(pair.on_TM, as, anchor_t);
      for (std::size_t j = 0; j < m; ++j) worst = std::max(worst, (lhs[j] - rhs[j]).max_abs_coefficient());
    }
  return worst;
}

AConnection basic_connection(const LieAlgebroid& A) {
  const std::size_t r = A.rank(), m = A.dimension(), q = r + m;
  std::vector<FieldMatrix> g;
  for (std::size_t s = 0; s < r; ++s) {
    FieldMatrix h(q, q, m);
    for (std::size_t t = 0; t < r; ++t)
      for (std::size_t u = 0; u < r; ++u) h(u, t) = A.c(s, t, u);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) h(r + j, r + i) = A.b(s, i).partial(j);
    g.push_back(std::move(h));
  }
  return build_connection(A, Bundle::E, std::move(g));
}

AConnection flat_metric_connection(const LieAlgebroid& A) {
  const std::size_t q = A.rank() + A.dimension();
  return build_connection(A, Bundle::E, std::vector<FieldMatrix>(A.rank(), FieldMatrix(q, q, A.dimension())));
}

}  // namespace algebroid
