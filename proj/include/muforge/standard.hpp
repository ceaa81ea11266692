#pragma once

#include "muforge/mufunc.hpp"

namespace muforge {

/// Descriptor of an essentially square-integrable representation at data
/// level: its Levi, the cuspidal support point, and the size of its
/// central character in log q units (a vector orthogonal to the Levi's
/// root span).
struct DeltaDescriptor {
    std::string levi_id;
    CuspidalSupport support;
    RatVec cc_log;
    std::optional<bool> square_integrable_mod_centre;
};

struct InductionDatum {
    std::string id;
    ParabolicFacet facet; // Levi must equal the delta's Levi
    DeltaDescriptor delta;
    std::optional<ParabolicFacet> support_facet; // refining facet at the support level
};

/// ccLog must be the component of the support's exponent vector orthogonal
/// to the Levi root span; throws otherwise.
void validate_delta(const SpectralDatum& d, const DeltaDescriptor& delta);

struct PositivityResult {
    bool positive = true;
    std::vector<std::pair<std::string, Rat>> pairings; // per plus-root
};

/// Positive iff <alpha^vee, ccLog> >= 0 for every root on the facet's
/// plus side (coroots taken in the Levi-orthogonal component).
PositivityResult positivity_check(const SpectralDatum& d, const InductionDatum& datum);

/// Changes only the facet: roots with positive pairing go to the plus
/// side, negative to minus, and pairing-zero roots keep the input facet's
/// side. Idempotent; preserves the distance invariant.
InductionDatum make_positive(const SpectralDatum& d, const InductionDatum& datum);

struct AssociationResult {
    bool associate = false;
    std::optional<WeylElement> witness;
};

/// Searches the enumerated Weyl group for an element carrying one datum's
/// Levi, support and ccLog onto the other's. Symmetric.
AssociationResult associate(const SpectralDatum& d, const std::vector<WeylElement>& weyl,
                            const InductionDatum& a, const InductionDatum& b);

/// Squared distance invariant: Gram norm of the projection of the
/// support's exponent vector onto the Levi root span. Independent of the
/// facet.
Rat n_value(const SpectralDatum& d, const InductionDatum& datum);

enum class StandardClass { Standard, QuasiStandardOnly };

std::string to_string(StandardClass c);

struct ClassifyResult {
    StandardClass cls;
    InductionDatum positive_associate;
    Rat n_sq;
    bool n_preserved; // n_value of input equals n_value of the associate
};

ClassifyResult classify(const SpectralDatum& d, const InductionDatum& datum);

} // namespace muforge
