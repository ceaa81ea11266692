#pragma once

#include "muforge/torus.hpp"

namespace muforge {

/// Solution set of a system chi(lambda_i) = target_i on the rank-n torus.
///
/// Either a finite list of points, or a coset: finitely many base points
/// together with free rational directions (an affine subtorus through each
/// base point). The empty finite set records an inconsistent system.
struct MonomialSystemSolution {
    bool finite = true;
    std::vector<TorusPoint> points;     // all solutions when finite
    std::vector<TorusPoint> base_points; // coset representatives otherwise
    std::vector<RatVec> free_directions; // rational kernel basis (coset case)

    bool empty() const { return finite && points.empty(); }
};

struct MonomialEquation {
    LatticeVector lam;
    UnitValue target;
};

/// Exact solver: exponent parts by rational linear algebra, rotation parts
/// by Smith normal form over Z with targets in Q/Z. Inconsistency yields an
/// empty finite set; rank deficiency yields a coset description.
MonomialSystemSolution solve_monomial_system(const std::vector<MonomialEquation>& eqs, size_t n);

} // namespace muforge
