#include "muforge/mufunc.hpp"

#include <algorithm>
#include <set>

namespace muforge {

namespace {

Scalar offset_value(const CuspidalSupport& s, const LatticeVector& h) {
    return unit_to_scalar(s.offset.eval(h));
}

void require_outside_levi(const SpectralDatum& d, int root_idx, const CuspidalSupport& s) {
    const LeviSubset& l = d.levi(s.levi_id);
    if (d.levi_contains(l, root_idx))
        throw Error("root '" + d.roots[static_cast<size_t>(root_idx)].id +
                    "' lies in the support Levi");
}

} // namespace

FactoredRational j_corank_one(const SpectralDatum& d, int root_idx, const CuspidalSupport& s,
                              const MuConstants& k) {
    require_outside_levi(d, root_idx, s);
    const RootEntry& r = d.roots[static_cast<size_t>(root_idx)];
    Scalar c = k.unit ? Scalar::one() : r.params.c_alpha;
    FactoredRational f(d.rank, c);
    if (r.params.constant_case()) return f;

    Scalar v0 = offset_value(s, r.h);
    Scalar v0i = v0.inv();
    LatticeVector h = r.h;
    LatticeVector hn(h.size());
    for (size_t i = 0; i < h.size(); ++i) hn[i] = -h[i];

    const Scalar& qa = *r.params.q_alpha;
    const Scalar& qs = r.params.q_alpha_star;
    // (1 - qa y)(1 - qa y^{-1}) / ((1 - y)(1 - y^{-1}))
    f.mul_factor(qa * v0, h, 1);
    f.mul_factor(qa * v0i, hn, 1);
    f.mul_factor(v0, h, -1);
    f.mul_factor(v0i, hn, -1);
    // (1 + qs y)(1 + qs y^{-1}) / ((1 + y)(1 + y^{-1})); trivial for qs = 1
    f.mul_factor(-(qs * v0), h, 1);
    f.mul_factor(-(qs * v0i), hn, 1);
    f.mul_factor(-v0, h, -1);
    f.mul_factor(-v0i, hn, -1);
    return f;
}

FactoredRational mu_corank_one(const SpectralDatum& d, int root_idx, const CuspidalSupport& s,
                               const MuConstants& k) {
    FactoredRational mu = j_corank_one(d, root_idx, s, k).inv();
    if (!k.unit) mu.mul_constant(k.overall);
    return mu;
}

FactoredRational mu_product(const SpectralDatum& d, const std::string& big_levi_id,
                            const ParabolicFacet& m_facet, const CuspidalSupport& s,
                            const MuConstants& k) {
    if (m_facet.levi_id != s.levi_id)
        throw Error("support Levi and positive-system Levi disagree");
    const LeviSubset& big = d.levi(big_levi_id);
    const LeviSubset& small = d.levi(s.levi_id);
    std::set<int> big_set(big.roots.begin(), big.roots.end());
    for (int idx : small.roots)
        if (!big_set.count(idx))
            throw Error("Levi containment violated: '" + s.levi_id + "' is not inside '" +
                        big_levi_id + "'");
    FactoredRational f = FactoredRational::one(d.rank);
    for (int idx : m_facet.plus) {
        if (!big_set.count(idx)) continue;
        f = f * mu_corank_one(d, idx, s, k);
    }
    return f;
}

FactoredRational mu_full(const SpectralDatum& d, const ParabolicFacet& m_facet,
                         const CuspidalSupport& s, const MuConstants& k) {
    if (m_facet.levi_id != s.levi_id)
        throw Error("support Levi and positive-system Levi disagree");
    FactoredRational f = FactoredRational::one(d.rank);
    for (int idx : m_facet.plus) f = f * mu_corank_one(d, idx, s, k);
    return f;
}

namespace {

FactoredRational restrict_to_levi(const SpectralDatum& d, const FactoredRational& f,
                                  const LeviSubset& l) {
    if (!l.restriction)
        throw Error("missing sublattice map: Levi '" + l.id + "' has no restriction matrix");
    return f.restrict_along(*l.restriction);
}

} // namespace

FactoredRational mu_quotient(const SpectralDatum& d, const PiContext& ctx, const MuConstants& k,
                             bool restrict) {
    const LeviSubset& l = d.levi(ctx.levi_id);
    std::set<int> l_set(l.roots.begin(), l.roots.end());
    const LeviSubset& small = d.levi(ctx.support.levi_id);
    for (int idx : small.roots)
        if (!l_set.count(idx))
            throw Error("support Levi is not contained in '" + ctx.levi_id + "'");

    FactoredRational num = mu_full(d, ctx.m_facet, ctx.support, k);
    FactoredRational den = FactoredRational::one(d.rank);
    for (int idx : ctx.m_facet.plus)
        if (l_set.count(idx)) den = den * mu_corank_one(d, idx, ctx.support, k);
    FactoredRational q = num * den.inv();
    return restrict ? restrict_to_levi(d, q, l) : q;
}

FactoredRational mu_closed_form(const SpectralDatum& d, const PiContext& ctx,
                                const MuConstants& k, bool restrict) {
    const LeviSubset& l = d.levi(ctx.levi_id);
    std::set<int> l_set(l.roots.begin(), l.roots.end());
    FactoredRational f = FactoredRational::one(d.rank);
    for (int idx : ctx.m_facet.plus) {
        if (l_set.count(idx)) continue;
        f = f * j_corank_one(d, idx, ctx.support, k).inv();
    }
    if (!k.unit) f.mul_constant(k.overall);
    return restrict ? restrict_to_levi(d, f, l) : f;
}

std::vector<UnitValue> residual_targets(const SpectralDatum& d, int root_idx) {
    const RootEntry& r = d.roots[static_cast<size_t>(root_idx)];
    std::vector<Scalar> raw;
    if (r.params.q_alpha) {
        raw.push_back(*r.params.q_alpha);
        raw.push_back(r.params.q_alpha->inv());
    }
    raw.push_back(r.params.q_alpha_star);
    raw.push_back(r.params.q_alpha_star.inv());
    raw.push_back(Scalar::one());
    std::vector<UnitValue> out;
    auto push = [&](const UnitValue& v) {
        if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
    };
    for (const auto& s : raw) {
        auto u = scalar_to_unit(s);
        if (!u) continue; // value outside mu_inf * q^Q, the equation has no solution
        push(*u);
        push(UnitValue(u->rot + Rat(1, 2), u->exp));
    }
    return out;
}

std::vector<int> lex_positive_roots(const SpectralDatum& d) {
    std::vector<int> out;
    for (size_t i = 0; i < d.roots.size(); ++i) {
        for (const auto& x : d.roots[i].a) {
            if (x > 0) {
                out.push_back(static_cast<int>(i));
                break;
            }
            if (x < 0) break;
        }
    }
    return out;
}

std::vector<ResidualPoint> residual_points(const SpectralDatum& d, const MuConstants& k) {
    // The minimal Levi carrying the cuspidal support: no roots.
    const LeviSubset* minimal = nullptr;
    for (const auto& [id, l] : d.levis)
        if (l.roots.empty()) {
            minimal = &l;
            break;
        }
    if (!minimal) throw Error("residual search needs a declared minimal Levi");
    CuspidalSupport base{minimal->id, TorusPoint::identity(d.rank)};
    ParabolicFacet facet = facet_from_vector(d, minimal->id, minimal->witness);
    FactoredRational mu = mu_full(d, facet, base, k);

    std::vector<int> positives;
    for (int idx : facet.plus)
        if (!d.roots[static_cast<size_t>(idx)].params.constant_case()) positives.push_back(idx);

    size_t r_m = d.residual_rank == 0 ? d.rank : d.residual_rank;
    long long target_order = -static_cast<long long>(r_m);

    std::vector<ResidualPoint> out;
    auto consider = [&](const TorusPoint& p) {
        if (mu.order_at(p) != target_order) return;
        for (const auto& existing : out)
            if (existing.point == p) return;
        ResidualPoint rp;
        rp.point = p;
        rp.pole_order = r_m;
        rp.cc_exponents = p.exponent_vector();
        rp.square_integrable = true;
        if (d.center_map && !d.center_map->empty())
            rp.square_integrable = is_zero_vec(mat_vec(*d.center_map, rp.cc_exponents));
        rp.general_position = mu.vanishing_in_general_position(p);
        out.push_back(std::move(rp));
    };

    auto canonical_coset_point = [&](const TorusPoint& base_pt,
                                     const std::vector<RatVec>& free_dirs) -> TorusPoint {
        if (!d.center_map || d.center_map->empty())
            throw Error("noncompact center: supply centerMap");
        // Free directions must map onto the central coordinates so the
        // quotient is finite.
        RatMat cf(d.center_map->size(), rat_vec(free_dirs.size()));
        for (size_t i = 0; i < d.center_map->size(); ++i)
            for (size_t j = 0; j < free_dirs.size(); ++j)
                cf[i][j] = dot((*d.center_map)[i], free_dirs[j]);
        if (rank_of(cf) != free_dirs.size())
            throw Error("noncompact center: free directions not resolved by centerMap");
        RatVec e = base_pt.exponent_vector();
        RatVec rhs = mat_vec(*d.center_map, e);
        auto coeff = solve_linear(cf, scale(rhs, Rat(-1)));
        if (!coeff) throw Error("noncompact center: central correction unsolvable");
        RatVec corr = rat_vec(d.rank);
        for (size_t j = 0; j < free_dirs.size(); ++j)
            corr = add(corr, scale(free_dirs[j], (*coeff)[j]));
        std::vector<UnitValue> vals(d.rank);
        for (size_t i = 0; i < d.rank; ++i)
            vals[i] = UnitValue(base_pt.values[i].rot, base_pt.values[i].exp + corr[i]);
        return TorusPoint(std::move(vals));
    };

    // Subsets of linearly independent cocharacters of size r_m.
    std::vector<size_t> idxs(positives.size());
    for (size_t i = 0; i < idxs.size(); ++i) idxs[i] = i;
    std::vector<int> subset;
    auto recurse = [&](auto&& self, size_t start) -> void {
        if (subset.size() == r_m) {
            RatMat rows;
            for (int idx : subset) rows.push_back(to_rat_vec(d.roots[static_cast<size_t>(idx)].h));
            if (rank_of(rows) != r_m) return;
            // All target assignments for this subset.
            std::vector<std::vector<UnitValue>> target_sets;
            for (int idx : subset) target_sets.push_back(residual_targets(d, idx));
            std::vector<size_t> pick(subset.size(), 0);
            while (true) {
                std::vector<MonomialEquation> eqs;
                for (size_t i = 0; i < subset.size(); ++i)
                    eqs.push_back(MonomialEquation{d.roots[static_cast<size_t>(subset[i])].h,
                                                   target_sets[i][pick[i]]});
                MonomialSystemSolution sol = solve_monomial_system(eqs, d.rank);
                if (sol.finite) {
                    for (const auto& p : sol.points) consider(p);
                } else {
                    for (const auto& bp : sol.base_points) {
                        if (mu.order_at(bp) != target_order) continue;
                        consider(canonical_coset_point(bp, sol.free_directions));
                    }
                }
                // advance the assignment
                size_t pos = 0;
                while (pos < pick.size()) {
                    if (++pick[pos] < target_sets[pos].size()) break;
                    pick[pos] = 0;
                    ++pos;
                }
                if (pos == pick.size()) break;
            }
            return;
        }
        for (size_t i = start; i < positives.size(); ++i) {
            subset.push_back(positives[i]);
            self(self, i + 1);
            subset.pop_back();
        }
    };
    recurse(recurse, 0);

    std::sort(out.begin(), out.end(),
              [](const ResidualPoint& a, const ResidualPoint& b) { return a.point < b.point; });
    return out;
}

} // namespace muforge
