#include "algebroid/catalog.hpp"

#include <cmath>

#include "algebroid/error.hpp"
#include "algebroid/random.hpp"

namespace algebroid::catalog {

namespace {

constexpr double kJacobiTol = 1e-12;

void require_jacobi(const StructureConstants& g) {
  if (g.antisymmetry_residual() > 0.0)
    throw Error(ErrorKind::AntisymmetryViolation, "structure constants are not antisymmetric");
  const double res = g.jacobi_residual();
  if (res > kJacobiTol)
    throw Error(ErrorKind::JacobiViolation, "structure constants violate Jacobi (residual " + std::to_string(res) + ")");
}

}  // namespace

LieAlgebroid lie_algebra(const StructureConstants& g, std::string name) {
  require_jacobi(g);
  const std::size_t r = g.dimension();
  return build_algebroid(Chart(0), r, FieldMatrix(r, 0, 0), BracketTensor::from_constants(g, 0), std::move(name));
}

LieAlgebroid tangent(std::size_t m) {
  return build_algebroid(Chart(m), m, FieldMatrix::identity(m, m), BracketTensor(m, m), "tangent");
}

LieAlgebroid poisson(const Chart& chart, const FieldMatrix& pi, std::string name) {
  const std::size_t m = chart.dimension();
  if (pi.rows() != m || pi.cols() != m) throw Error(ErrorKind::ShapeMismatch, "bivector must be m x m");
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (!(pi(i, j) + pi(j, i)).is_zero())
        throw Error(ErrorKind::NotABivector, "Pi^{" + std::to_string(i + 1) + std::to_string(j + 1) +
                                                 "} + Pi^{" + std::to_string(j + 1) + std::to_string(i + 1) +
                                                 "} is not zero");
  BracketTensor c(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t k = 0; k < m; ++k) c(i, j, k) = pi(i, j).partial(k);
  return build_algebroid(chart, m, pi, std::move(c), std::move(name));
}

LieAlgebroid lie_poisson(const StructureConstants& g, std::string name) {
  require_jacobi(g);
  const std::size_t n = g.dimension();
  FieldMatrix pi(n, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (g(i, j, k) != 0.0) pi(i, j) += ScalarField::coordinate(n, k) * g(i, j, k);
  return poisson(Chart(n), pi, std::move(name));
}

LieAlgebroid transformation(const TransformationData& T, std::string name) {
  require_jacobi(T.algebra);
  const std::size_t r = T.algebra.dimension();
  if (T.action.size() != r) throw Error(ErrorKind::ShapeMismatch, "one action field per Lie algebra generator");
  const std::size_t m = r == 0 ? 0 : T.action.front().size();
  FieldMatrix b(r, m, m);
  for (std::size_t s = 0; s < r; ++s) {
    if (T.action[s].size() != m || (m > 0 && T.action[s].nvars() != m))
      throw Error(ErrorKind::DimensionMismatch, "action fields live on different charts");
    for (std::size_t i = 0; i < m; ++i) b(s, i) = T.action[s][i];
  }
  return build_algebroid(Chart(m), r, std::move(b), BracketTensor::from_constants(T.algebra, m), std::move(name));
}

LieAlgebroid lie_algebra_bundle(const Chart& chart, const BracketTensor& c, std::string name, std::size_t samples) {
  const std::size_t r = c.rank();
  const std::size_t m = chart.dimension();
  LieAlgebroid A = build_algebroid(chart, r, FieldMatrix(r, m, m), c, std::move(name));
  for (const auto& p : sample_points(0x1ab, samples, m)) {
    StructureConstants g(r);
    for (std::size_t s = 0; s < r; ++s)
      for (std::size_t t = 0; t < r; ++t)
        for (std::size_t u = 0; u < r; ++u) g(s, t, u) = c(s, t, u).evaluate(p);
    const double res = g.jacobi_residual();
    if (res > kJacobiTol)
      throw Error(ErrorKind::JacobiViolation, "fibre bracket violates Jacobi (residual " + std::to_string(res) + ")");
  }
  return A;
}

StructureConstants so3() {
  StructureConstants g(3);
  g.set_antisymmetric(0, 1, 2, 1.0);
  g.set_antisymmetric(1, 2, 0, 1.0);
  g.set_antisymmetric(2, 0, 1, 1.0);
  return g;
}

StructureConstants sl2() {
  StructureConstants g(3);
  g.set_antisymmetric(0, 1, 1, 2.0);
  g.set_antisymmetric(0, 2, 2, -2.0);
  g.set_antisymmetric(1, 2, 0, 1.0);
  return g;
}

StructureConstants aff1() {
  StructureConstants g(2);
  g.set_antisymmetric(0, 1, 1, 1.0);
  return g;
}

StructureConstants heisenberg() {
  StructureConstants g(3);
  g.set_antisymmetric(0, 1, 2, 1.0);
  return g;
}

StructureConstants abelian(std::size_t n) { return StructureConstants(n); }

TransformationData so3_rotations() {
  // x cross e1 = (0, x3, -x2), x cross e2 = (-x3, 0, x1), x cross e3 = (x2, -x1, 0).
  const auto x = [](std::size_t i) { return ScalarField::coordinate(3, i); };
  const ScalarField zero(3);
  TransformationData T;
  T.algebra = so3();
  T.action.emplace_back(std::vector<ScalarField>{zero, x(2), -x(1)});
  T.action.emplace_back(std::vector<ScalarField>{-x(2), zero, x(0)});
  T.action.emplace_back(std::vector<ScalarField>{x(1), -x(0), zero});
  return T;
}

TransformationData scaling_action() {
  TransformationData T;
  T.algebra = abelian(1);
  T.action.emplace_back(std::vector<ScalarField>{ScalarField::coordinate(1, 0)});
  return T;
}

TransformationData coadjoint_action(const StructureConstants& g) {
  const std::size_t n = g.dimension();
  TransformationData T;
  T.algebra = g;
  for (std::size_t s = 0; s < n; ++s) {
    std::vector<ScalarField> comps(n, ScalarField(n));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (g(s, j, k) != 0.0) comps[j] += ScalarField::coordinate(n, k) * g(s, j, k);
    T.action.emplace_back(std::move(comps));
  }
  return T;
}

LieAlgebroid regular_foliation() {
  const Chart chart(3);
  FieldMatrix b(2, 3, 3);
  b(0, 0) = ScalarField::constant(3, 1.0);
  b(0, 2) = ScalarField::coordinate(3, 1);
  b(1, 1) = ScalarField::constant(3, 1.0);
  b(1, 2) = ScalarField::coordinate(3, 0);
  return build_algebroid(chart, 2, std::move(b), BracketTensor(2, 3), "regular_foliation");
}

LieAlgebroid heisenberg_bundle() {
  BracketTensor c(3, 1);
  c(0, 1, 2) = ScalarField::coordinate(1, 0);
  c(1, 0, 2) = -ScalarField::coordinate(1, 0);
  return lie_algebra_bundle(Chart(1), c, "heisenberg_bundle");
}

std::vector<Entry> examples() {
  return {
      {"tangent_R2", tangent(2)},
      {"regular_foliation_R3", regular_foliation()},
      {"lie_poisson_aff1", lie_poisson(aff1(), "lie_poisson_aff1")},
      {"lie_poisson_so3", lie_poisson(so3(), "lie_poisson_so3")},
      {"so3_rotations_R3", transformation(so3_rotations(), "so3_rotations_R3")},
      {"scaling_R1", transformation(scaling_action(), "scaling_R1")},
      {"heisenberg_bundle_R1", heisenberg_bundle()},
      {"sl2_point", lie_algebra(sl2(), "sl2")},
      {"so3_point", lie_algebra(so3(), "so3")},
      {"aff1_point", lie_algebra(aff1(), "aff1")},
  };
}

}  // namespace algebroid::catalog
