#pragma once

#include "muforge/monomial_system.hpp"
#include "muforge/rootdata.hpp"

namespace muforge {

/// Cuspidal support: a Levi M together with the position of the support
/// relative to the base point of its orbit (the torus identity).
struct CuspidalSupport {
    std::string levi_id;
    TorusPoint offset;
};

/// Handling of the positive constants in front of mu- and j-functions.
/// Unit mode collapses them all to 1; zero/pole structure never depends
/// on them.
struct MuConstants {
    bool unit = true;
    Scalar overall = Scalar::one(); // explicit mode: the (G|L)-level square
};

/// Corank-one j-function attached to a root, centered at the support:
/// the constant c_alpha in the constant case, otherwise the four-block
/// rational function with parameters (q_alpha, q_alpha_star) in the
/// variable y = (offset * chi)(h_alpha). Blocks with q_alpha_star = 1
/// cancel against their unitary partners and disappear.
FactoredRational j_corank_one(const SpectralDatum& d, int root_idx, const CuspidalSupport& s,
                              const MuConstants& k);

/// mu = (constants) * j^{-1}.
FactoredRational mu_corank_one(const SpectralDatum& d, int root_idx, const CuspidalSupport& s,
                               const MuConstants& k);

/// Product of corank-one mu's over the positive roots (per the facet) of
/// the big Levi; the small Levi is the support's.
FactoredRational mu_product(const SpectralDatum& d, const std::string& big_levi_id,
                            const ParabolicFacet& m_facet, const CuspidalSupport& s,
                            const MuConstants& k);

/// Product over all positive roots of the facet.
FactoredRational mu_full(const SpectralDatum& d, const ParabolicFacet& m_facet,
                         const CuspidalSupport& s, const MuConstants& k);

struct PiContext {
    std::string levi_id; // the Levi L carrying the induced representation
    CuspidalSupport support;
    ParabolicFacet m_facet; // positive system at the support level
};

/// mu of the induced representation: full product divided by the product
/// over the Levi's roots, then (optionally) written in the coordinates of
/// the Levi torus along the declared restriction map.
FactoredRational mu_quotient(const SpectralDatum& d, const PiContext& ctx, const MuConstants& k,
                             bool restrict = true);

/// The closed product formula over the roots outside the Levi; agrees with
/// mu_quotient up to a unit constant.
FactoredRational mu_closed_form(const SpectralDatum& d, const PiContext& ctx,
                                const MuConstants& k, bool restrict = true);

/// Candidate residual target values for chi(h_alpha), from the root's
/// parameters: {+-q_a^{+-1}, +-q_a*^{+-1}, +-1}, kept when representable
/// in mu_inf * q^Q.
std::vector<UnitValue> residual_targets(const SpectralDatum& d, int root_idx);

/// Canonical positive system: roots whose vector has positive first
/// nonzero coordinate.
std::vector<int> lex_positive_roots(const SpectralDatum& d);

struct ResidualPoint {
    TorusPoint point;
    long long pole_order;     // order of the pole of mu there (= residual rank)
    RatVec cc_exponents;      // log_q sizes of the coordinates
    bool square_integrable;   // central exponent component vanishes
    bool general_position;    // vanishing factor directions independent
};

/// Enumerates the points where mu over the full root system has a pole of
/// order exactly residual_rank: subsets of linearly independent
/// cocharacters, candidate target assignments, exact solving, then the
/// pole-order filter. Infinite families require a declared center map.
std::vector<ResidualPoint> residual_points(const SpectralDatum& d, const MuConstants& k);

} // namespace muforge
