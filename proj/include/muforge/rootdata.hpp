#pragma once

#include "muforge/factored.hpp"
#include "muforge/scalar.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace muforge {

/// Corank-one parameters of a root: empty q_alpha marks the constant case
/// (no pole on the orbit, the corank-one j-function is the constant c_alpha).
struct RootParams {
    std::optional<Scalar> q_alpha;
    Scalar q_alpha_star = Scalar::one();
    Scalar c_alpha = Scalar::one();
    bool constant_case() const { return !q_alpha.has_value(); }
};

struct RootEntry {
    std::string id;
    RatVec a;        // root vector in the ambient space V*
    LatticeVector h; // cocharacter in Lambda attached to the root
    LatticeVector d; // integer valuation functional on Lambda (modular data)
    long long mult = 1;
    RootParams params;
    IntMat reflection; // lattice-side action of the root reflection
};

struct LeviSubset {
    std::string id;
    std::vector<int> roots; // indices into the datum's root list
    RatVec witness;         // rational vector vanishing exactly on these roots
    std::optional<IntMat> restriction; // lattice map Lambda -> Lambda_L
};

/// Spectral datum: lattice, generalized root system with q-parameters,
/// Gram form, Weyl generators and named Levi subsets. Immutable after
/// validation; every operation below is pure.
struct SpectralDatum {
    std::string name;
    size_t rank = 0;
    RatMat gram;
    Rat qF = 2;
    std::vector<RootEntry> roots;
    std::map<std::string, LeviSubset> levis;
    std::vector<std::string> weyl_gens; // ids of generating reflections
    size_t residual_rank = 0;           // rank of the residual search
    std::optional<RatMat> center_map;   // extracts the central exponent part
    long long weyl_cap = 10000;

    int root_index(const std::string& id) const;
    const RootEntry& root(const std::string& id) const { return roots[root_index(id)]; }
    const LeviSubset& levi(const std::string& id) const;
    /// Index of -alpha; -1 if absent (validation rejects that).
    int negation_of(int idx) const;
    bool levi_contains(const LeviSubset& l, int idx) const;
    /// Reflection on V* derived from the Gram form.
    RatMat reflection_vstar(int idx) const;
    /// Parity of the half-exponent functional evaluated on lambda for the
    /// positive roots given by indices.
    int half_exponent(const std::vector<int>& positive, const LatticeVector& lambda) const;
};

struct ValidationReport {
    std::vector<std::string> errors;
    std::vector<std::string> warnings;
    bool ok() const { return errors.empty(); }
};

/// Checks the standing structural hypotheses: +- pairing, reflection
/// closure, Gram invariance and definiteness, Levi realizability, parameter
/// positivity. Non-integral Cartan pairings are warnings only.
ValidationReport validate_datum(const SpectralDatum& d);

/// Parabolic facet: sign partition of the roots cut out by a witness
/// vector, with the Levi as the exact zero set.
struct ParabolicFacet {
    std::string levi_id;
    RatVec witness;
    std::vector<int> plus, zero, minus;

    bool same_partition(const ParabolicFacet& o) const {
        return levi_id == o.levi_id && plus == o.plus;
    }
    bool is_plus(int idx) const;
    bool is_minus(int idx) const;
};

/// Partition by the sign of <xi, a>_Gram. The witness must vanish exactly
/// on the Levi's roots.
ParabolicFacet facet_from_vector(const SpectralDatum& d, const std::string& levi_id,
                                 const RatVec& xi);

ParabolicFacet opposite_facet(const SpectralDatum& d, const ParabolicFacet& f);

/// Reduced root of (G, A_L): the non-Levi roots grouped by positive
/// proportionality of their projections away from the Levi span.
struct RootClass {
    std::vector<int> members; // positive members of the facet
    RatVec direction;         // canonical projected direction
};

/// Classes of the facet's plus-set.
std::vector<RootClass> facet_classes(const SpectralDatum& d, const ParabolicFacet& f);

/// Classes of the facet crossed when passing to the other facet
/// (plus here, minus there).
std::vector<RootClass> crossing_classes(const SpectralDatum& d, const ParabolicFacet& from,
                                        const ParabolicFacet& to);

/// Minimal gallery from one facet to another with the same Levi:
/// consecutive facets differ by one reduced-root class, and the length is
/// the number of crossed classes. Deterministic: classes are crossed in
/// the order met by an exactly perturbed straight segment between the two
/// witnesses.
std::vector<ParabolicFacet> gallery(const SpectralDatum& d, const ParabolicFacet& from,
                                    const ParabolicFacet& to);

/// <alpha^vee, v> = 2 <a, v>_G / <a, a>_G, with the coroot projected away
/// from the Levi span when a Levi context is given.
Rat coroot_pairing(const SpectralDatum& d, int root_idx, const RatVec& v,
                   const std::string* levi_context = nullptr);

/// Squared Gram norm of the projection of v onto the span of the Levi's
/// root vectors (the distance-to-unitary invariant, in log q units).
Rat n_norm_sq(const SpectralDatum& d, const RatVec& v, const std::string& levi_id);

/// Element of the enumerated Weyl group, acting on the lattice, on V* and
/// on the root list.
struct WeylElement {
    IntMat lam, lam_inv;
    RatMat vstar;
    std::vector<int> root_perm;
    std::string word; // generator ids, "" for the identity

    TorusPoint apply(const TorusPoint& p) const { return p.transformed(lam_inv); }
    RatVec apply_vstar(const RatVec& v) const { return mat_vec(vstar, v); }
};

/// Breadth-first closure of the generating reflections; throws when the
/// configured cap is exceeded.
std::vector<WeylElement> enumerate_weyl(const SpectralDatum& d);

/// w . facet; the image Levi root set must be a declared Levi.
ParabolicFacet transform_facet(const SpectralDatum& d, const WeylElement& w,
                               const ParabolicFacet& f);

/// Orbit of a facet under the full enumerated group, deduplicated.
std::vector<ParabolicFacet> facet_orbit(const SpectralDatum& d,
                                        const std::vector<WeylElement>& weyl,
                                        const ParabolicFacet& f);

/// Facets sharing the Levi reachable from f: orbit under the Levi-set
/// stabilizer together with the opposite facets.
std::vector<ParabolicFacet> facets_with_levi(const SpectralDatum& d,
                                             const std::vector<WeylElement>& weyl,
                                             const ParabolicFacet& f);

} // namespace muforge
