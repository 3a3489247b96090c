#pragma once

#include <string>
#include <vector>

#include "algebroid/algebroid.hpp"

namespace algebroid::catalog {

/// Lie algebra viewed as an algebroid over a point.
/// Throws Error{JacobiViolation} when the constants fail Jacobi beyond 1e-12.
LieAlgebroid lie_algebra(const StructureConstants& g, std::string name = "lie_algebra");

/// Tangent algebroid TR^m with frame d/dx^i.
LieAlgebroid tangent(std::size_t m);

/// Cotangent algebroid of a Poisson bivector: b^{ij} = Pi^{ij},
/// c^{ij}_k = dPi^{ij}/dx^k. Throws Error{NotABivector}.
LieAlgebroid poisson(const Chart& chart, const FieldMatrix& pi, std::string name = "poisson");

/// Linear Poisson structure Pi^{ij} = sum_k c^{ij}_k x_k on the dual of g.
LieAlgebroid lie_poisson(const StructureConstants& g, std::string name = "lie_poisson");

/// Transformation algebroid g x M with b^{si} = rho(e_s)^i and constant bracket.
/// Throws Error{JacobiViolation} or Error{DimensionMismatch}.
LieAlgebroid transformation(const TransformationData& T, std::string name = "transformation");

/// Bundle of Lie algebras with zero anchor and position-dependent bracket.
/// Jacobi is checked at `samples` seeded points; Error{JacobiViolation}.
LieAlgebroid lie_algebra_bundle(const Chart& chart, const BracketTensor& c, std::string name = "lie_algebra_bundle",
                                std::size_t samples = 20);

// Standard Lie algebras.
StructureConstants so3();
/// Basis (h, e, f) with [h,e] = 2e, [h,f] = -2f, [e,f] = h.
StructureConstants sl2();
/// [e1, e2] = e2.
StructureConstants aff1();
/// [e1, e2] = e3.
StructureConstants heisenberg();
StructureConstants abelian(std::size_t n);

/// so(3) acting on R^3 by rho(e_s)(x) = x cross e_s.
TransformationData so3_rotations();
/// R acting on R by rho(e) = x1 d/dx1.
TransformationData scaling_action();
/// g acting on its dual by the linear fields of the Lie-Poisson anchor.
TransformationData coadjoint_action(const StructureConstants& g);

/// Rank-2 regular foliation of R^3 spanned by d1 + x2 d3 and d2 + x1 d3.
LieAlgebroid regular_foliation();
/// Heisenberg family over R^1 with c^{12}_3 = x1.
LieAlgebroid heisenberg_bundle();

struct Entry {
  std::string name;
  LieAlgebroid algebroid;
};

/// Every example family used for cross-checks.
std::vector<Entry> examples();

}  // namespace algebroid::catalog
