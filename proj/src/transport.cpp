#include "algebroid/transport.hpp"

#include <algorithm>
#include <cmath>

#include "algebroid/error.hpp"

namespace algebroid {

namespace {

Eigen::Index ei(std::size_t i) { return static_cast<Eigen::Index>(i); }

std::vector<double> as_point(const Eigen::VectorXd& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Eigen::VectorXd anchor_image(const LieAlgebroid& A, const Eigen::VectorXd& x, const Eigen::VectorXd& a) {
  if (A.dimension() == 0) return Eigen::VectorXd(0);
  return A.anchor_at(as_point(x)).transpose() * a;
}

constexpr double kLoopTol = 1e-7;

}  // namespace

const PathSegment& APath::segment_at(double t) const {
  if (segments.empty()) throw Error(ErrorKind::InvalidInput, "empty path");
  for (const auto& s : segments)
    if (t <= s.t1) return s;
  return segments.back();
}

double tangency_residual(const LieAlgebroid& A, const APath& path, std::size_t grid) {
  double res = 0.0;
  if (A.dimension() == 0) return 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double t = grid == 1 ? 0.0 : static_cast<double>(j) / static_cast<double>(grid - 1);
    const PathSegment& seg = path.segment_at(t);
    const Eigen::VectorXd d = anchor_image(A, seg.position(t), seg.coefficients(t)) - seg.velocity(t);
    res = std::max(res, d.cwiseAbs().maxCoeff());
  }
  return res;
}

BasePath polynomial_base_path(const std::vector<ScalarField>& coordinates) {
  for (const auto& f : coordinates)
    if (f.nvars() != 1) throw Error(ErrorKind::DimensionMismatch, "base path coordinates must be polynomials in t");
  std::vector<ScalarField> derivs;
  for (const auto& f : coordinates) derivs.push_back(f.partial(0));
  auto eval = [](const std::vector<ScalarField>& fs) {
    return [fs](double t) {
      Eigen::VectorXd v(ei(fs.size()));
      const double p[1] = {t};
      for (std::size_t i = 0; i < fs.size(); ++i) v(ei(i)) = fs[i].evaluate(p);
      return v;
    };
  };
  return {eval(coordinates), eval(derivs)};
}

APath lift_base_path(const LieAlgebroid& A, const BasePath& gamma, std::size_t grid_size) {
  if (grid_size < 3) throw Error(ErrorKind::InvalidInput, "grid size must be at least 3");
  const std::size_t r = A.rank();
  const std::size_t N = grid_size;
  auto nodes = std::make_shared<std::vector<Eigen::VectorXd>>();
  for (std::size_t j = 0; j <= N; ++j) {
    const double t = static_cast<double>(j) / static_cast<double>(N);
    const Eigen::VectorXd x = gamma.position(t);
    if (static_cast<std::size_t>(x.size()) != A.dimension())
      throw Error(ErrorKind::DimensionMismatch, "base path does not live on the chart");
    if (A.dimension() == 0) {
      nodes->push_back(Eigen::VectorXd::Zero(ei(r)));
      continue;
    }
    const Eigen::MatrixXd bt = A.anchor_at(as_point(x)).transpose();
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(bt, Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-9);
    nodes->push_back(svd.solve(gamma.velocity(t)));
  }
  auto coeffs = [nodes, N, r](double t) {
    const double h = 1.0 / static_cast<double>(N);
    const double s = std::clamp(t, 0.0, 1.0) / h;
    std::ptrdiff_t j = static_cast<std::ptrdiff_t>(std::floor(s));
    std::ptrdiff_t first = std::clamp<std::ptrdiff_t>(j - 1, 0, static_cast<std::ptrdiff_t>(N) - 3);
    Eigen::VectorXd out = Eigen::VectorXd::Zero(ei(r));
    for (std::ptrdiff_t a = first; a < first + 4; ++a) {
      double w = 1.0;
      for (std::ptrdiff_t b = first; b < first + 4; ++b)
        if (b != a) w *= (s - static_cast<double>(b)) / static_cast<double>(a - b);
      out += w * (*nodes)[static_cast<std::size_t>(a)];
    }
    return out;
  };
  APath path;
  path.rank = r;
  path.dimension = A.dimension();
  path.segments.push_back({0.0, 1.0, coeffs, gamma.position, gamma.velocity});
  path.residual = tangency_residual(A, path);
  if (path.residual > kPathTolerance)
    throw Error(ErrorKind::NotTangent, "base path is not tangent to the orbits (residual " +
                                           std::to_string(path.residual) + ")");
  return path;
}

APath path_from_coefficients(const LieAlgebroid& A, CurveFn coefficients, const Eigen::VectorXd& start,
                             std::size_t resolution) {
  const std::size_t m = A.dimension();
  if (static_cast<std::size_t>(start.size()) != m)
    throw Error(ErrorKind::DimensionMismatch, "start point does not live on the chart");
  const std::size_t N = std::max<std::size_t>(resolution, 1);
  const double h = 1.0 / static_cast<double>(N);
  auto xs = std::make_shared<std::vector<Eigen::VectorXd>>();
  auto vs = std::make_shared<std::vector<Eigen::VectorXd>>();
  auto f = [&](double t, const Eigen::VectorXd& x) { return anchor_image(A, x, coefficients(t)); };
  Eigen::VectorXd x = start;
  for (std::size_t j = 0; j <= N; ++j) {
    const double t = static_cast<double>(j) * h;
    xs->push_back(x);
    vs->push_back(f(t, x));
    if (j == N) break;
    const Eigen::VectorXd k1 = f(t, x);
    const Eigen::VectorXd k2 = f(t + h / 2, x + h / 2 * k1);
    const Eigen::VectorXd k3 = f(t + h / 2, x + h / 2 * k2);
    const Eigen::VectorXd k4 = f(t + h, x + h * k3);
    x += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
  }
  auto position = [xs, vs, N, h](double t) {
    const double s = std::clamp(t, 0.0, 1.0) / h;
    const std::size_t j = std::min<std::size_t>(static_cast<std::size_t>(std::floor(s)), N - 1);
    const double u = s - static_cast<double>(j);
    const double h00 = 2 * u * u * u - 3 * u * u + 1, h10 = u * u * u - 2 * u * u + u;
    const double h01 = -2 * u * u * u + 3 * u * u, h11 = u * u * u - u * u;
    return Eigen::VectorXd(h00 * (*xs)[j] + h10 * h * (*vs)[j] + h01 * (*xs)[j + 1] + h11 * h * (*vs)[j + 1]);
  };
  const LieAlgebroid Acopy = A;
  auto velocity = [Acopy, position, coefficients](double t) {
    return anchor_image(Acopy, position(t), coefficients(t));
  };
  APath path;
  path.rank = A.rank();
  path.dimension = m;
  path.segments.push_back({0.0, 1.0, coefficients, position, velocity});
  path.residual = tangency_residual(A, path);
  return path;
}

APath constant_path(const LieAlgebroid& A, const Eigen::VectorXd& v, const Eigen::VectorXd& start) {
  if (static_cast<std::size_t>(v.size()) != A.rank()) throw Error(ErrorKind::ShapeMismatch, "coefficient length");
  return path_from_coefficients(A, [v](double) { return v; }, start);
}

APath concatenate(const APath& p1, const APath& p2) {
  if (p1.rank != p2.rank || p1.dimension != p2.dimension)
    throw Error(ErrorKind::ShapeMismatch, "paths of different algebroids");
  if (p1.dimension > 0 && (p1.position(1.0) - p2.position(0.0)).cwiseAbs().maxCoeff() > kLoopTol)
    throw Error(ErrorKind::InvalidInput, "paths do not join");
  APath out;
  out.rank = p1.rank;
  out.dimension = p1.dimension;
  auto add = [&out](const APath& p, double offset) {
    for (const auto& s : p.segments) {
      auto map = [offset](double t) { return 2.0 * t - offset; };
      PathSegment seg;
      seg.t0 = (s.t0 + offset) / 2.0;
      seg.t1 = (s.t1 + offset) / 2.0;
      seg.coefficients = [s, map](double t) { return Eigen::VectorXd(2.0 * s.coefficients(map(t))); };
      seg.position = [s, map](double t) { return s.position(map(t)); };
      seg.velocity = [s, map](double t) { return Eigen::VectorXd(2.0 * s.velocity(map(t))); };
      out.segments.push_back(std::move(seg));
    }
  };
  add(p1, 0.0);
  add(p2, 1.0);
  out.residual = std::max(p1.residual, p2.residual);
  return out;
}

APath reverse(const APath& p) {
  APath out;
  out.rank = p.rank;
  out.dimension = p.dimension;
  for (auto it = p.segments.rbegin(); it != p.segments.rend(); ++it) {
    const PathSegment s = *it;
    PathSegment seg;
    seg.t0 = 1.0 - s.t1;
    seg.t1 = 1.0 - s.t0;
    seg.coefficients = [s](double t) { return Eigen::VectorXd(-s.coefficients(1.0 - t)); };
    seg.position = [s](double t) { return s.position(1.0 - t); };
    seg.velocity = [s](double t) { return Eigen::VectorXd(-s.velocity(1.0 - t)); };
    out.segments.push_back(std::move(seg));
  }
  out.residual = p.residual;
  return out;
}

APath reparametrize(const APath& p, std::function<double(double)> phi, std::function<double(double)> dphi) {
  if (p.segments.size() != 1) throw Error(ErrorKind::InvalidInput, "reparametrization expects a single segment");
  const PathSegment s = p.segments.front();
  APath out = p;
  out.segments.front().coefficients = [s, phi, dphi](double t) {
    return Eigen::VectorXd(dphi(t) * s.coefficients(phi(t)));
  };
  out.segments.front().position = [s, phi](double t) { return s.position(phi(t)); };
  out.segments.front().velocity = [s, phi, dphi](double t) { return Eigen::VectorXd(dphi(t) * s.velocity(phi(t))); };
  return out;
}

Eigen::MatrixXd rk4_transport(const AConnection& conn, const APath& path, const Eigen::MatrixXd& v0,
                              std::size_t steps) {
  const std::size_t q = conn.fiber();
  if (static_cast<std::size_t>(v0.rows()) != q)
    throw Error(ErrorKind::BundleMismatch, "initial vectors have " + std::to_string(v0.rows()) +
                                               " entries, the bundle has rank " + std::to_string(q));
  if (path.rank != conn.algebroid().rank() || path.dimension != conn.algebroid().dimension())
    throw Error(ErrorKind::AlgebroidMismatch, "path and connection belong to different algebroids");
  const std::size_t r = path.rank;
  Eigen::MatrixXd V = v0;
  for (const auto& seg : path.segments) {
    const double len = seg.t1 - seg.t0;
    if (len <= 0.0) continue;
    const std::size_t n = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(steps) * len)));
    const double h = len / static_cast<double>(n);
    auto W = [&](double t) {
      const Eigen::VectorXd a = seg.coefficients(t);
      const std::vector<double> x = as_point(seg.position(t));
      Eigen::MatrixXd w = Eigen::MatrixXd::Zero(ei(q), ei(q));
      for (std::size_t s = 0; s < r; ++s)
        if (a(ei(s)) != 0.0) w += a(ei(s)) * conn.symbols(s).evaluate(x);
      return w;
    };
    for (std::size_t k = 0; k < n; ++k) {
      const double t = seg.t0 + static_cast<double>(k) * h;
      const Eigen::MatrixXd w0 = W(t), wh = W(t + h / 2), w1 = W(t + h);
      const Eigen::MatrixXd k1 = -w0 * V;
      const Eigen::MatrixXd k2 = -wh * (V + h / 2 * k1);
      const Eigen::MatrixXd k3 = -wh * (V + h / 2 * k2);
      const Eigen::MatrixXd k4 = -w1 * (V + h * k3);
      V += h / 6 * (k1 + 2 * k2 + 2 * k3 + k4);
    }
  }
  return V;
}

TransportResult parallel_transport(const AConnection& conn, const APath& path, const Eigen::MatrixXd& v0,
                                   std::size_t steps, double tol, std::size_t max_steps) {
  if (path.residual > kPathTolerance)
    throw Error(ErrorKind::NotTangent, "not an A-path (residual " + std::to_string(path.residual) + ")");
  std::size_t n = std::max<std::size_t>(steps, 1);
  Eigen::MatrixXd coarse = rk4_transport(conn, path, v0, n);
  while (true) {
    const Eigen::MatrixXd fine = rk4_transport(conn, path, v0, 2 * n);
    const double est = coarse.size() == 0 ? 0.0 : (coarse - fine).cwiseAbs().maxCoeff() * 16.0 / 15.0;
    if (est <= tol) return {coarse, n, est};
    if (2 * n > max_steps)
      throw Error(ErrorKind::ToleranceNotMet, "error estimate " + std::to_string(est) + " above " +
                                                  std::to_string(tol) + " at " + std::to_string(n) + " steps");
    n *= 2;
    coarse = fine;
  }
}

TransportResult holonomy_matrix(const AConnection& conn, const APath& loop, std::size_t steps, double tol) {
  if (loop.dimension > 0) {
    const double gap = (loop.position(0.0) - loop.position(1.0)).cwiseAbs().maxCoeff();
    if (gap > kLoopTol) throw Error(ErrorKind::NotALoop, "base path does not close (gap " + std::to_string(gap) + ")");
  }
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(ei(conn.fiber()), ei(conn.fiber()));
  return parallel_transport(conn, loop, id, steps, tol);
}

FixedPointHolonomy fixed_point_holonomy(const TransformationData& T, const Eigen::VectorXd& v) {
  const std::size_t r = T.algebra.dimension();
  if (static_cast<std::size_t>(v.size()) != r) throw Error(ErrorKind::ShapeMismatch, "element has wrong length");
  const std::size_t m = T.action.empty() ? 0 : T.action.front().size();
  const std::vector<double> origin(m, 0.0);
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(ei(m), ei(m));
  for (std::size_t s = 0; s < r; ++s) {
    const VectorField& X = T.action[s];
    for (std::size_t j = 0; j < m; ++j) {
      const double val = X[j].evaluate(origin);
      if (std::abs(val) > 1e-12)
        throw Error(ErrorKind::NotAFixedPoint, "action field " + std::to_string(s + 1) + " does not vanish at the origin");
      for (std::size_t k = 0; k < m; ++k) J(ei(j), ei(k)) += v(ei(s)) * X[j].partial(k).evaluate(origin);
    }
  }
  return {matrix_exponential(T.algebra.ad(v)), matrix_exponential(J)};
}

Eigen::MatrixXd matrix_exponential(const Eigen::MatrixXd& M) {
  const Eigen::Index n = M.rows();
  if (n == 0) return M;
  const double norm = M.cwiseAbs().colwise().sum().maxCoeff();
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const Eigen::MatrixXd X = M / std::ldexp(1.0, squarings);
  Eigen::MatrixXd result = Eigen::MatrixXd::Identity(n, n);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(n, n);
  for (int k = 1; k <= 20; ++k) {
    term = term * X / static_cast<double>(k);
    result += term;
  }
  for (int i = 0; i < squarings; ++i) result = result * result;
  return result;
}

}  // namespace algebroid
