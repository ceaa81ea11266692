#include "muforge/galois.hpp"

#include <algorithm>
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

std::vector<int> facet_parity(const SpectralDatum& d, const std::vector<int>& positive) {
    std::vector<int> parity(d.rank, 0);
    for (size_t i = 0; i < d.rank; ++i) {
        LatticeVector basis(d.rank, 0);
        basis[i] = 1;
        parity[i] = d.half_exponent(positive, basis);
    }
    return parity;
}

TorusPoint twist_point(const SpectralDatum& d, const GaloisElement& g, const TorusPoint& p,
                       const EpsilonCharacter& eps) {
    std::vector<UnitValue> vals(p.values.size());
    for (size_t i = 0; i < p.values.size(); ++i) vals[i] = galois_unit(g, p.values[i]);
    TorusPoint out(std::move(vals));
    return out * eps.shift_point();
}

} // namespace

int EpsilonCharacter::value_on(const LatticeVector& lambda) const {
    long long s = 0;
    for (size_t i = 0; i < lambda.size(); ++i) s += basis_parity[i] * lambda[i];
    return (((s % 2) + 2) % 2) == 0 ? 1 : -1;
}

TorusPoint EpsilonCharacter::shift_point() const {
    std::vector<UnitValue> vals(basis_parity.size());
    for (size_t i = 0; i < basis_parity.size(); ++i)
        vals[i] = basis_parity[i] ? UnitValue::minus_one() : UnitValue::identity();
    return TorusPoint(std::move(vals));
}

EpsilonCharacter epsilon_character(const SpectralDatum& d, const ParabolicFacet& facet,
                                   const GaloisElement& g,
                                   const std::vector<WeylElement>* verify_with) {
    EpsilonCharacter eps;
    eps.basis_parity.assign(d.rank, 0);
    if (g.sign == 1) {
        eps.trivial = true;
        return eps;
    }
    eps.basis_parity = facet_parity(d, facet.plus);
    eps.trivial = std::all_of(eps.basis_parity.begin(), eps.basis_parity.end(),
                              [](int p) { return p == 0; });
    if (verify_with) {
        for (const auto& f : facets_with_levi(d, *verify_with, facet)) {
            if (facet_parity(d, f.plus) != eps.basis_parity)
                throw Error("datum not geometric: modular parity depends on the facet for Levi '" +
                            facet.levi_id + "'");
        }
    }
    return eps;
}

InductionDatum twist_datum(const SpectralDatum& d, const GaloisElement& g,
                           const InductionDatum& datum) {
    EpsilonCharacter eps = epsilon_character(d, datum.facet, g);
    InductionDatum out = datum;
    out.delta.support.offset = twist_point(d, g, datum.delta.support.offset, eps);
    return out;
}

TwistMuReport twist_mu_check(const SpectralDatum& d, const GaloisElement& g, const PiContext& ctx,
                             const MuConstants& k) {
    if (!k.unit && galois_scalar(g, k.overall) != k.overall)
        throw Error("explicit constants must be fixed by the Galois element");
    EpsilonCharacter eps = epsilon_character(d, ctx.m_facet, g);

    PiContext twisted = ctx;
    twisted.support.offset = twist_point(d, g, ctx.support.offset, eps);

    TwistMuReport rep;
    FactoredRational lhs = mu_quotient(d, ctx, k).map_coefficients(g);
    FactoredRational rhs = mu_quotient(d, twisted, k);
    rep.equal = lhs == rhs;

    rep.product_form_ok = true;
    const LeviSubset& l = d.levi(ctx.levi_id);
    std::set<int> lset(l.roots.begin(), l.roots.end());
    for (int idx : ctx.m_facet.plus) {
        if (lset.count(idx)) continue;
        FactoredRational a = mu_corank_one(d, idx, ctx.support, k).map_coefficients(g);
        FactoredRational b = mu_corank_one(d, idx, twisted.support, k);
        if (!(a == b)) rep.product_form_ok = false;
    }
    return rep;
}

SignPreservationReport sign_preservation_check(const SpectralDatum& d, const GaloisElement& g,
                                               const CuspidalSupport& s, int root_idx,
                                               const MuConstants& k) {
    const LeviSubset& m = d.levi(s.levi_id);
    ParabolicFacet pos = facet_from_vector(d, s.levi_id, m.witness);
    EpsilonCharacter eps = epsilon_character(d, pos, g);
    CuspidalSupport twisted{s.levi_id, twist_point(d, g, s.offset, eps)};

    TorusPoint origin = TorusPoint::identity(d.rank);
    SignPreservationReport rep;
    rep.order_before = mu_corank_one(d, root_idx, s, k).order_at(origin);
    rep.order_after = mu_corank_one(d, root_idx, twisted, k).order_at(origin);
    rep.pairing_before = coroot_pairing(d, root_idx, s.offset.exponent_vector());
    rep.pairing_after = coroot_pairing(d, root_idx, twisted.offset.exponent_vector());

    if (rep.order_before < 0) {
        rep.kind = SignPreservationReport::Kind::PoleSameSign;
        rep.ok = rep.order_after < 0 && rep.pairing_before != 0 &&
                 rat_sign(rep.pairing_before) == rat_sign(rep.pairing_after);
    } else if (rep.order_before > 0) {
        rep.kind = SignPreservationReport::Kind::ZeroBothZero;
        rep.ok = rep.order_after > 0 && rep.pairing_before == 0 && rep.pairing_after == 0;
    } else {
        rep.kind = SignPreservationReport::Kind::NoConstraint;
        rep.ok = true;
    }
    return rep;
}

namespace {

// Subgroup of the Weyl group generated by the reflections of the given
// roots, as lattice/ambient pairs; breadth-first, deterministic order.
struct SmallElement {
    IntMat lam, lam_inv;
    RatMat vstar;
    std::string word;
};

std::vector<SmallElement> reflection_closure(const SpectralDatum& d, const std::vector<int>& roots,
                                             long long cap) {
    SmallElement id{int_identity(d.rank), int_identity(d.rank), rat_identity(d.rank), ""};
    std::vector<SmallElement> group = {id};
    std::set<std::string> seen = {matrix_key(id.lam)};
    for (size_t head = 0; head < group.size(); ++head) {
        for (int idx : roots) {
            const RootEntry& r = d.roots[static_cast<size_t>(idx)];
            SmallElement next;
            next.lam = int_mat_mul(group[head].lam, r.reflection);
            std::string key = matrix_key(next.lam);
            if (seen.count(key)) continue;
            auto inv = int_inverse(r.reflection);
            if (!inv) throw Error("reflection not invertible over Z");
            next.lam_inv = int_mat_mul(*inv, group[head].lam_inv);
            next.vstar = mat_mul(group[head].vstar, d.reflection_vstar(idx));
            next.word = group[head].word.empty() ? r.id : group[head].word + "*" + r.id;
            seen.insert(key);
            group.push_back(std::move(next));
            if (static_cast<long long>(group.size()) > cap)
                throw Error("reflection subgroup enumeration exceeded the cap");
        }
    }
    return group;
}

} // namespace

TwistFacetResult construct_twisted_facet(const SpectralDatum& d, const GaloisElement& g,
                                         const InductionDatum& positive_datum,
                                         const MuConstants& k) {
    const InductionDatum& datum = positive_datum;
    if (!positivity_check(d, datum).positive)
        throw Error("twisted-facet construction requires a positive datum");
    if (!datum.support_facet)
        throw Error("twisted-facet construction requires the support-level facet");
    const ParabolicFacet& q = *datum.support_facet;
    if (q.levi_id != datum.delta.support.levi_id)
        throw Error("support facet Levi does not match the cuspidal support");
    for (int idx : datum.facet.plus)
        if (!q.is_plus(idx))
            throw Error("support facet does not refine the datum facet");

    TwistFacetResult res;
    const LeviSubset& l = d.levi(datum.delta.levi_id);
    std::set<int> lset(l.roots.begin(), l.roots.end());

    // Step 1: move the support into the dominant chamber of the Levi's
    // pole-case roots, relative to the support-level positive system.
    std::vector<int> dominance_roots;
    for (int idx : l.roots)
        if (q.is_plus(idx) && !d.roots[static_cast<size_t>(idx)].params.constant_case())
            dominance_roots.push_back(idx);
    std::vector<int> subgroup_gens = dominance_roots;
    CuspidalSupport moved = datum.delta.support;
    res.w_sigma_word = "";
    if (!dominance_roots.empty()) {
        auto subgroup = reflection_closure(d, subgroup_gens, d.weyl_cap);
        bool found = false;
        for (const auto& w : subgroup) {
            TorusPoint cand = datum.delta.support.offset.transformed(w.lam_inv);
            RatVec e = cand.exponent_vector();
            bool dominant = true;
            for (int idx : dominance_roots)
                if (coroot_pairing(d, idx, e) < 0) dominant = false;
            if (dominant) {
                moved.offset = cand;
                res.w_sigma_word = w.word;
                found = true;
                break;
            }
        }
        if (!found) throw Error("no dominant position for the support");
    }
    res.moved_support = moved;

    // Step 2: the twisted sizes; exponents are fixed by the Galois action.
    EpsilonCharacter eps = epsilon_character(d, datum.facet, g);
    TorusPoint twisted_offset = twist_point(d, g, moved.offset, eps);
    RatVec nu_gamma_sigma = twisted_offset.exponent_vector();
    const RatVec& nu_gamma_delta = datum.delta.cc_log;

    // Step 3: facet from the layered vector (cc exponents, support
    // exponents, original support witness).
    auto layered_sign = [&](const RatVec& a) -> int {
        Rat l1 = gram_dot(d.gram, nu_gamma_delta, a);
        if (l1 != 0) return rat_sign(l1);
        Rat l2 = gram_dot(d.gram, nu_gamma_sigma, a);
        if (l2 != 0) return rat_sign(l2);
        return rat_sign(gram_dot(d.gram, q.witness, a));
    };
    std::vector<int> want(d.roots.size(), 0);
    for (size_t i = 0; i < d.roots.size(); ++i) {
        want[i] = layered_sign(d.roots[i].a);
        if (want[i] == 0) throw Error("layered vector is not regular at the support level");
    }
    bool built = false;
    for (int ke = 4; ke <= 60 && !built; ke += 4) {
        Rat e1 = rat_pow(Rat(1, 2), ke);
        for (int je = 4; je <= 60 && !built; je += 4) {
            Rat e2 = e1 * rat_pow(Rat(1, 2), je);
            RatVec w = add(nu_gamma_delta, add(scale(nu_gamma_sigma, e1), scale(q.witness, e2)));
            bool ok = true;
            for (size_t i = 0; i < d.roots.size() && ok; ++i)
                if (rat_sign(gram_dot(d.gram, w, d.roots[i].a)) != want[i]) ok = false;
            if (!ok) continue;
            res.q_prime = facet_from_vector(d, q.levi_id, w);
            built = true;
        }
    }
    if (!built) throw Error("layered facet construction failed");

    // Step 4: both positivity conditions on the constructed facet.
    res.cond_levi_ok = true;
    res.cond_outside_ok = true;
    for (int idx : res.q_prime.plus) {
        if (lset.count(idx)) {
            if (coroot_pairing(d, idx, nu_gamma_sigma) < 0) res.cond_levi_ok = false;
        } else {
            if (coroot_pairing(d, idx, nu_gamma_delta, &datum.delta.levi_id) < 0)
                res.cond_outside_ok = false;
        }
    }
    if (!res.cond_levi_ok || !res.cond_outside_ok)
        throw Error("twisted facet violates a positivity condition: non-geometric scenario data");

    // Step 5: the induced Levi-level facet. Its sign pattern is the
    // support-level pattern on the non-Levi roots; find a witness
    // realizing it.
    auto matches_pattern = [&](const ParabolicFacet& f) {
        for (size_t i = 0; i < d.roots.size(); ++i) {
            int idx = static_cast<int>(i);
            if (lset.count(idx)) continue;
            if (res.q_prime.is_plus(idx) != f.is_plus(idx)) return false;
        }
        return true;
    };
    std::vector<RatVec> span;
    for (int idx : l.roots) span.push_back(d.roots[static_cast<size_t>(idx)].a);
    bool have_l = false;
    // Candidate (a): the layered vector with Levi-orthogonal layers.
    RatVec sigma_perp = sub(nu_gamma_sigma, project_onto_span(d.gram, span, nu_gamma_sigma));
    RatVec q_perp = sub(q.witness, project_onto_span(d.gram, span, q.witness));
    for (int ke = 4; ke <= 60 && !have_l; ke += 4) {
        Rat e1 = rat_pow(Rat(1, 2), ke);
        for (int je = 4; je <= 60 && !have_l; je += 4) {
            Rat e2 = e1 * rat_pow(Rat(1, 2), je);
            RatVec w = add(nu_gamma_delta, add(scale(sigma_perp, e1), scale(q_perp, e2)));
            try {
                ParabolicFacet f = facet_from_vector(d, datum.delta.levi_id, w);
                if (matches_pattern(f)) {
                    res.q_prime_l = f;
                    have_l = true;
                }
            } catch (const Error&) {
            }
        }
    }
    // Candidate (b): the Levi-orthogonal part of the support-level witness.
    if (!have_l) {
        RatVec w = sub(res.q_prime.witness,
                       project_onto_span(d.gram, span, res.q_prime.witness));
        try {
            ParabolicFacet f = facet_from_vector(d, datum.delta.levi_id, w);
            if (matches_pattern(f)) {
                res.q_prime_l = f;
                have_l = true;
            }
        } catch (const Error&) {
        }
    }
    if (!have_l)
        throw Error("restricted facet not realizable: non-geometric scenario data");

    res.trace.push_back("dominance element: " +
                        (res.w_sigma_word.empty() ? std::string("id") : res.w_sigma_word));
    res.trace.push_back("support-level facet witness verified");
    (void)k;
    return res;
}

std::string to_string(TwistConclusion c) {
    return c == TwistConclusion::StandardAfterTwist ? "StandardAfterTwist" : "Inconclusive";
}

TwistReport twist_pipeline(const SpectralDatum& d, const GaloisElement& g,
                           const InductionDatum& positive_datum, const MuConstants& k) {
    TwistReport rep;
    TwistFacetResult tf = construct_twisted_facet(d, g, positive_datum, k);
    rep.q_prime_l = tf.q_prime_l;

    // No crossed root may carry a mu-pole at the (moved) support.
    rep.crossing_regular = true;
    TorusPoint origin = TorusPoint::identity(d.rank);
    for (const auto& c : crossing_classes(d, positive_datum.facet, tf.q_prime_l))
        for (int idx : c.members) {
            long long order = mu_corank_one(d, idx, tf.moved_support, k).order_at(origin);
            if (order < 0) {
                rep.crossing_regular = false;
                rep.details.push_back("mu-pole crossed at root '" +
                                      d.roots[static_cast<size_t>(idx)].id + "'");
            }
        }

    // Positivity of the twisted datum on the new facet.
    InductionDatum twisted = twist_datum(d, g, positive_datum);
    twisted.facet = tf.q_prime_l;
    twisted.support_facet.reset();
    PositivityResult pos = positivity_check(d, twisted);
    rep.positivity_ok = pos.positive;
    if (!pos.positive) rep.details.push_back("twisted datum not positive on the new facet");

    rep.conclusion = rep.crossing_regular && rep.positivity_ok
                         ? TwistConclusion::StandardAfterTwist
                         : TwistConclusion::Inconclusive;
    return rep;
}

} // namespace muforge
