#include "muforge/intertwine.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace muforge {

namespace {

std::string matrix_key(const IntMat& m) {
    std::ostringstream os;
    for (const auto& row : m)
        for (long long x : row) os << x << ",";
    return os.str();
}

// Order at the identity of the restricted corank-one mu of the context's
// representation along one root outside the Levi.
long long class_member_order(const SpectralDatum& d, int root_idx, const PiContext& ctx,
                             const MuConstants& k) {
    FactoredRational mu = mu_corank_one(d, root_idx, ctx.support, k);
    const LeviSubset& l = d.levi(ctx.levi_id);
    if (!l.restriction)
        throw Error("missing sublattice map: Levi '" + l.id + "' has no restriction matrix");
    FactoredRational res = mu.restrict_along(*l.restriction);
    return res.order_at(TorusPoint::identity(res.rank()));
}

} // namespace

OperatorStatus invertibility_check(const SpectralDatum& d, const ParabolicFacet& from,
                                   const ParabolicFacet& to, const PiContext& ctx,
                                   const MuConstants& k) {
    if (from.levi_id != ctx.levi_id || to.levi_id != ctx.levi_id)
        throw Error("facet Levi does not match the pi-context");
    OperatorStatus st;
    auto classes = crossing_classes(d, from, to);
    st.gallery_length = static_cast<long long>(classes.size());
    for (const auto& c : classes) {
        long long order = 0;
        for (int idx : c.members) order += class_member_order(d, idx, ctx, k);
        if (order != 0) {
            st.invertible = false;
            for (int idx : c.members) st.witness_roots.push_back(d.roots[static_cast<size_t>(idx)].id);
        }
    }
    std::sort(st.witness_roots.begin(), st.witness_roots.end());
    return st;
}

OperatorStatus normalization_factor(const SpectralDatum& d, const ParabolicFacet& from,
                                    const ParabolicFacet& to, const CuspidalSupport& s,
                                    const MuConstants& k) {
    if (from.levi_id != s.levi_id || to.levi_id != s.levi_id)
        throw Error("facet Levi does not match the cuspidal support");
    OperatorStatus st;
    auto classes = crossing_classes(d, from, to);
    st.gallery_length = static_cast<long long>(classes.size());
    TorusPoint origin = TorusPoint::identity(d.rank);
    for (const auto& c : classes)
        for (int idx : c.members) {
            long long order = mu_corank_one(d, idx, s, k).order_at(origin);
            if (order == 0) continue;
            const RootEntry& r = d.roots[static_cast<size_t>(idx)];
            st.invertible = false;
            st.witness_roots.push_back(r.id);
            if (order > 0) st.normalization_exponents.emplace_back(r.id, r.h);
            if (order < 0) st.regular_domain = false;
        }
    std::sort(st.witness_roots.begin(), st.witness_roots.end());
    return st;
}

std::string to_string(RankOneOutcome o) {
    switch (o) {
        case RankOneOutcome::Irreducible: return "Irreducible";
        case RankOneOutcome::LengthTwoSemisimple: return "LengthTwoSemisimple";
        case RankOneOutcome::IndecompSqIntSub: return "IndecompSqIntSub";
        case RankOneOutcome::IndecompSqIntQuot: return "IndecompSqIntQuot";
    }
    return "?";
}

RankOneOutcome rank_one_classify(const SpectralDatum& d, int root_idx, const CuspidalSupport& s,
                                 const RatVec& nu, const MuConstants& k) {
    if (!s.offset.is_unitary()) throw Error("rank-one classification requires a unitary support");
    if (nu.size() != d.rank) throw Error("nu has wrong rank");
    Rat p = coroot_pairing(d, root_idx, nu);
    // The point sigma tensor nu, relative to the unitary support.
    std::vector<UnitValue> vals(d.rank);
    for (size_t i = 0; i < d.rank; ++i) vals[i] = UnitValue(Rat(0), nu[i]);
    TorusPoint nu_point(std::move(vals));
    long long m = mu_corank_one(d, root_idx, s, k).order_at(nu_point);

    if (m < 0) {
        if (p > 0) return RankOneOutcome::IndecompSqIntSub;
        if (p < 0) return RankOneOutcome::IndecompSqIntQuot;
        throw Error("mu-pole with vanishing pairing contradicts the corank-one pole locations");
    }
    if (p != 0) return RankOneOutcome::Irreducible;
    // p = 0: length two exactly when the reflection fixes sigma tensor nu
    // and mu neither vanishes nor blows up there.
    TorusPoint full = s.offset * nu_point;
    const RootEntry& r = d.roots[static_cast<size_t>(root_idx)];
    auto inv = int_inverse(r.reflection);
    if (!inv) throw Error("root reflection is not invertible over Z");
    bool fixed = full.transformed(*inv) == full;
    if (fixed && m == 0) return RankOneOutcome::LengthTwoSemisimple;
    return RankOneOutcome::Irreducible;
}

RGroupResult r_group(const SpectralDatum& d, const std::string& levi_id, const TorusPoint& delta,
                     const ParabolicFacet& facet, const MuConstants& k) {
    const LeviSubset& l = d.levi(levi_id);
    if (!l.roots.empty())
        throw Error("r_group is implemented at the cuspidal level (Levi without roots)");
    if (facet.levi_id != levi_id) throw Error("facet Levi does not match");

    RGroupResult res;
    std::vector<WeylElement> weyl = enumerate_weyl(d);

    for (const auto& w : weyl)
        if (w.apply(delta) == delta) res.stabilizer.push_back(w);

    // Roots whose corank-one mu has a zero at delta. The delta point is an
    // absolute position: fold it in as a support offset and test at the
    // origin, computing through the quotient route.
    CuspidalSupport s{levi_id, delta};
    ParabolicFacet pos = facet_from_vector(d, levi_id, l.witness);
    TorusPoint origin = TorusPoint::identity(d.rank);
    std::set<int> phi;
    for (int idx : pos.plus) {
        long long order = mu_corank_one(d, idx, s, k).order_at(origin);
        if (order > 0) {
            phi.insert(idx);
            phi.insert(d.negation_of(idx));
        }
    }
    res.phi_delta.assign(phi.begin(), phi.end());

    // Subgroup generated by the reflections of the mu-zero roots.
    std::map<std::string, size_t> weyl_index;
    for (size_t i = 0; i < weyl.size(); ++i) weyl_index[matrix_key(weyl[i].lam)] = i;
    std::set<std::string> sub;
    sub.insert(matrix_key(int_identity(d.rank)));
    std::vector<IntMat> frontier = {int_identity(d.rank)};
    while (!frontier.empty()) {
        std::vector<IntMat> next;
        for (const auto& m : frontier)
            for (int idx : res.phi_delta) {
                IntMat prod = int_mat_mul(m, d.roots[static_cast<size_t>(idx)].reflection);
                std::string key = matrix_key(prod);
                if (sub.insert(key).second) {
                    if (!weyl_index.count(key))
                        throw Error("mu-zero reflections leave the enumerated Weyl group");
                    next.push_back(std::move(prod));
                }
            }
        frontier = std::move(next);
    }
    for (const auto& w : weyl)
        if (sub.count(matrix_key(w.lam))) res.reflection_subgroup.push_back(w);

    // R-group: stabilizer elements preserving the positive mu-zero roots.
    std::set<int> positive_phi;
    for (int idx : res.phi_delta)
        if (facet.is_plus(idx)) positive_phi.insert(idx);
    for (const auto& w : res.stabilizer) {
        std::set<int> image;
        for (int idx : positive_phi) image.insert(w.root_perm[static_cast<size_t>(idx)]);
        if (image == positive_phi) res.r_group.push_back(w);
    }

    // Exhaustive unique-factorization check w = u * r.
    std::set<std::string> stab_keys;
    for (const auto& w : res.stabilizer) stab_keys.insert(matrix_key(w.lam));
    bool ok = res.stabilizer.size() == res.reflection_subgroup.size() * res.r_group.size();
    for (const auto& w : res.stabilizer) {
        int count = 0;
        for (const auto& u : res.reflection_subgroup)
            for (const auto& r : res.r_group)
                if (matrix_key(int_mat_mul(u.lam, r.lam)) == matrix_key(w.lam)) ++count;
        if (count != 1) ok = false;
    }
    for (const auto& u : res.reflection_subgroup)
        if (!stab_keys.count(matrix_key(u.lam))) ok = false;
    res.factorization_ok = ok;
    return res;
}

} // namespace muforge
