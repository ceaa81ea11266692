#pragma once

#include "muforge/standard.hpp"

namespace muforge {

/// Quadratic character measuring how a Galois element moves the square
/// root of the modular character of a parabolic: the parity, per lattice
/// basis direction, of the half-exponent functional summed over the
/// facet's positive roots.
struct EpsilonCharacter {
    std::vector<int> basis_parity; // 0 or 1 per coordinate
    bool trivial = true;           // true when gamma fixes t or all parities vanish

    int value_on(const LatticeVector& lambda) const; // +1 or -1
    /// The order-2 torus point with rotation 1/2 on the odd directions.
    TorusPoint shift_point() const;
};

/// Computes the character; when a Weyl enumeration is supplied, also
/// verifies that the parity is the same for every reachable facet sharing
/// the Levi, and throws on a mismatch (non-geometric data).
EpsilonCharacter epsilon_character(const SpectralDatum& d, const ParabolicFacet& facet,
                                   const GaloisElement& g,
                                   const std::vector<WeylElement>* verify_with = nullptr);

/// gamma applied to an induction datum: the support point moves by the
/// coordinatewise Galois action followed by the epsilon shift; the
/// central-size exponents never change in the rational regime.
InductionDatum twist_datum(const SpectralDatum& d, const GaloisElement& g,
                           const InductionDatum& datum);

struct TwistMuReport {
    bool equal = false;          // coefficientwise action matches the twisted mu
    bool product_form_ok = false; // the same, root by root
};

/// Checks mu-equivariance exactly: gamma applied to the coefficients of
/// the factored mu of the context equals the mu built on the twisted
/// support with the epsilon shift folded in.
TwistMuReport twist_mu_check(const SpectralDatum& d, const GaloisElement& g, const PiContext& ctx,
                             const MuConstants& k);

struct SignPreservationReport {
    enum class Kind { PoleSameSign, ZeroBothZero, NoConstraint } kind;
    bool ok = true;
    long long order_before = 0, order_after = 0;
    Rat pairing_before, pairing_after;
};

/// At a mu-pole the twisted mu must keep the pole and the coroot pairing
/// its (nonzero) sign; at a mu-zero both pairings vanish and the zero
/// survives; elsewhere there is no constraint.
SignPreservationReport sign_preservation_check(const SpectralDatum& d, const GaloisElement& g,
                                               const CuspidalSupport& s, int root_idx,
                                               const MuConstants& k);

/// Output of the twisted-facet construction: a support-level facet and the
/// induced Levi-level facet, positive for the twisted datum.
struct TwistFacetResult {
    ParabolicFacet q_prime;   // support level
    ParabolicFacet q_prime_l; // Levi level
    bool cond_levi_ok = false;    // <alpha^vee, nu_sigma'> >= 0 on Levi plus-roots
    bool cond_outside_ok = false; // restricted-coroot pairing >= 0 outside the Levi
    std::string w_sigma_word;     // dominance element used at the support
    CuspidalSupport moved_support; // support after the dominance move
    std::vector<std::string> trace;
};

/// Builds the facet making the twisted datum positive: moves the support
/// into the dominant position for the Levi's pole-case roots, then takes
/// the facet cut out by the layered vector (cc exponents, support
/// exponents, original witness), and verifies both positivity conditions.
TwistFacetResult construct_twisted_facet(const SpectralDatum& d, const GaloisElement& g,
                                         const InductionDatum& positive_datum,
                                         const MuConstants& k);

enum class TwistConclusion { StandardAfterTwist, Inconclusive };

std::string to_string(TwistConclusion c);

struct TwistReport {
    ParabolicFacet q_prime_l;
    bool positivity_ok = false;     // twisted datum positive on the new facet
    bool crossing_regular = false;  // no mu-pole root in the crossing set
    TwistConclusion conclusion = TwistConclusion::Inconclusive;
    std::vector<std::string> details;
};

/// Full run for one positive datum and one Galois element: construct the
/// twisted facet, check that no mu-pole root is crossed, and check
/// positivity of the twisted datum there.
TwistReport twist_pipeline(const SpectralDatum& d, const GaloisElement& g,
                           const InductionDatum& positive_datum, const MuConstants& k);

} // namespace muforge
