#include "muforge/standard.hpp"

#include <algorithm>
#include <set>

namespace muforge {

namespace {

std::vector<RatVec> levi_span(const SpectralDatum& d, const LeviSubset& l) {
    std::vector<RatVec> basis;
    for (int idx : l.roots) basis.push_back(d.roots[static_cast<size_t>(idx)].a);
    return basis;
}

} // namespace

void validate_delta(const SpectralDatum& d, const DeltaDescriptor& delta) {
    const LeviSubset& l = d.levi(delta.levi_id);
    const LeviSubset& m = d.levi(delta.support.levi_id);
    std::set<int> lset(l.roots.begin(), l.roots.end());
    for (int idx : m.roots)
        if (!lset.count(idx))
            throw Error("delta support Levi is not contained in its Levi");
    RatVec e = delta.support.offset.exponent_vector();
    RatVec perp = sub(e, project_onto_span(d.gram, levi_span(d, l), e));
    if (perp != delta.cc_log)
        throw Error("delta descriptor inconsistent: ccLog differs from the Levi-orthogonal "
                    "component of the support exponents");
}

PositivityResult positivity_check(const SpectralDatum& d, const InductionDatum& datum) {
    if (datum.facet.levi_id != datum.delta.levi_id)
        throw Error("datum facet Levi differs from the delta Levi");
    PositivityResult res;
    for (int idx : datum.facet.plus) {
        Rat p = coroot_pairing(d, idx, datum.delta.cc_log, &datum.delta.levi_id);
        res.pairings.emplace_back(d.roots[static_cast<size_t>(idx)].id, p);
        if (p < 0) res.positive = false;
    }
    return res;
}

InductionDatum make_positive(const SpectralDatum& d, const InductionDatum& datum) {
    PositivityResult before = positivity_check(d, datum);
    if (before.positive) return datum;

    RatVec v = datum.delta.cc_log;
    // Witness ccLog + eps * old witness: sign of the pairing where nonzero,
    // the input facet's side on pairing-zero roots.
    Rat min_nonzero(0);
    Rat max_old(0);
    for (size_t i = 0; i < d.roots.size(); ++i) {
        Rat p = gram_dot(d.gram, v, d.roots[i].a);
        Rat o = rat_abs(gram_dot(d.gram, datum.facet.witness, d.roots[i].a));
        if (p != 0) {
            Rat ap = rat_abs(p);
            if (min_nonzero == 0 || ap < min_nonzero) min_nonzero = ap;
        }
        if (o > max_old) max_old = o;
    }
    RatVec witness;
    if (min_nonzero == 0) {
        witness = datum.facet.witness; // ccLog pairs to zero everywhere
    } else {
        Rat eps = min_nonzero / (Rat(2) * (max_old + 1));
        witness = add(v, scale(datum.facet.witness, eps));
    }
    InductionDatum out = datum;
    out.facet = facet_from_vector(d, datum.delta.levi_id, witness);
    out.support_facet.reset();
    PositivityResult after = positivity_check(d, out);
    if (!after.positive)
        throw Error("no facet realizes the required sign pattern"); // defensive
    return out;
}

AssociationResult associate(const SpectralDatum& d, const std::vector<WeylElement>& weyl,
                            const InductionDatum& a, const InductionDatum& b) {
    const LeviSubset& la = d.levi(a.delta.levi_id);
    const LeviSubset& lb = d.levi(b.delta.levi_id);
    const LeviSubset& ma = d.levi(a.delta.support.levi_id);
    const LeviSubset& mb = d.levi(b.delta.support.levi_id);
    std::set<int> lb_set(lb.roots.begin(), lb.roots.end());
    std::set<int> mb_set(mb.roots.begin(), mb.roots.end());

    AssociationResult res;
    for (const auto& w : weyl) {
        std::set<int> levi_img, m_img;
        for (int idx : la.roots) levi_img.insert(w.root_perm[static_cast<size_t>(idx)]);
        for (int idx : ma.roots) m_img.insert(w.root_perm[static_cast<size_t>(idx)]);
        if (levi_img != lb_set || m_img != mb_set) continue;
        if (w.apply(a.delta.support.offset) != b.delta.support.offset) continue;
        if (w.apply_vstar(a.delta.cc_log) != b.delta.cc_log) continue;
        res.associate = true;
        res.witness = w;
        return res;
    }
    return res;
}

Rat n_value(const SpectralDatum& d, const InductionDatum& datum) {
    return n_norm_sq(d, datum.delta.support.offset.exponent_vector(), datum.delta.levi_id);
}

std::string to_string(StandardClass c) {
    return c == StandardClass::Standard ? "Standard" : "QuasiStandardOnly";
}

ClassifyResult classify(const SpectralDatum& d, const InductionDatum& datum) {
    ClassifyResult res{StandardClass::Standard, datum, Rat(0), true};
    PositivityResult pos = positivity_check(d, datum);
    res.cls = pos.positive ? StandardClass::Standard : StandardClass::QuasiStandardOnly;
    res.positive_associate = make_positive(d, datum);
    res.n_sq = n_value(d, datum);
    res.n_preserved = res.n_sq == n_value(d, res.positive_associate);
    return res;
}

} // namespace muforge
