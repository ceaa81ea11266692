#pragma once

#include "muforge/mufunc.hpp"

namespace muforge {

/// Data-level record for an intertwining operator between two parabolic
/// facets: operators themselves are never represented, only whether the
/// composite is invertible, which crossing roots obstruct it, and the
/// normalization monomials (chi(h_alpha) - 1) picked up at mu-zero roots.
struct OperatorStatus {
    bool invertible = true;
    std::vector<std::string> witness_roots; // crossing roots with mu in {0, inf}
    long long gallery_length = 0;
    std::vector<std::pair<std::string, LatticeVector>> normalization_exponents;
    bool regular_domain = true; // no crossing root with a mu-pole at the support
};

/// Invertibility of the operator between two facets with the common Levi of
/// the pi-context: each crossed reduced root class contributes the
/// vanishing order of its corank-one mu at the representation's point;
/// invertible iff every order is zero.
OperatorStatus invertibility_check(const SpectralDatum& d, const ParabolicFacet& from,
                                   const ParabolicFacet& to, const PiContext& ctx,
                                   const MuConstants& k);

/// Normalization data at a cuspidal support: the crossing roots where the
/// corank-one mu vanishes contribute their cocharacters to the
/// normalization product, and a crossing mu-pole breaks the regular
/// domain hypothesis.
OperatorStatus normalization_factor(const SpectralDatum& d, const ParabolicFacet& from,
                                    const ParabolicFacet& to, const CuspidalSupport& s,
                                    const MuConstants& k);

enum class RankOneOutcome {
    Irreducible,
    LengthTwoSemisimple,
    IndecompSqIntSub,
    IndecompSqIntQuot,
};

std::string to_string(RankOneOutcome o);

/// Classification of the corank-one induced module at sigma tensor nu:
/// driven by the mu-order at the point and the coroot pairing with nu.
RankOneOutcome rank_one_classify(const SpectralDatum& d, int root_idx, const CuspidalSupport& s,
                                 const RatVec& nu, const MuConstants& k);

/// R-group data of a point on the cuspidal-level torus.
struct RGroupResult {
    std::vector<WeylElement> stabilizer;           // W_{L,delta}
    std::vector<WeylElement> reflection_subgroup;  // W(Phi_delta)
    std::vector<WeylElement> r_group;              // stabilizer of the positive system
    std::vector<int> phi_delta;                    // roots with a mu-zero at delta
    bool factorization_ok = false;                 // unique u * r decomposition
};

RGroupResult r_group(const SpectralDatum& d, const std::string& levi_id, const TorusPoint& delta,
                     const ParabolicFacet& facet, const MuConstants& k);

} // namespace muforge
