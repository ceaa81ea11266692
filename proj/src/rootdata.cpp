#include "muforge/rootdata.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace muforge {

namespace {

std::string vec_str(const RatVec& v) {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) os << ",";
        os << rat_str(v[i]);
    }
    os << ")";
    return os.str();
}

RatVec negated(const RatVec& v) {
    RatVec r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

LatticeVector negated(const LatticeVector& v) {
    LatticeVector r(v.size());
    for (size_t i = 0; i < v.size(); ++i) r[i] = -v[i];
    return r;
}

std::vector<RatVec> levi_span(const SpectralDatum& d, const LeviSubset& l) {
    std::vector<RatVec> basis;
    for (int idx : l.roots) basis.push_back(d.roots[static_cast<size_t>(idx)].a);
    return basis;
}

/// Canonical representative of the ray through v: scale so the first
/// nonzero coordinate has absolute value 1 (keeping its sign).
RatVec ray_canonical(const RatVec& v) {
    for (const auto& x : v) {
        if (x != 0) {
            return scale(v, Rat(1) / rat_abs(x));
        }
    }
    return v;
}

std::string matrix_key(const IntMat& m) {
    std::ostringstream os;
    for (const auto& row : m)
        for (long long x : row) os << x << ",";
    return os.str();
}

} // namespace

int SpectralDatum::root_index(const std::string& id) const {
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i].id == id) return static_cast<int>(i);
    throw Error("unknown root id '" + id + "'");
}

const LeviSubset& SpectralDatum::levi(const std::string& id) const {
    auto it = levis.find(id);
    if (it == levis.end()) throw Error("unknown Levi id '" + id + "'");
    return it->second;
}

int SpectralDatum::negation_of(int idx) const {
    const RatVec target = negated(roots[static_cast<size_t>(idx)].a);
    for (size_t i = 0; i < roots.size(); ++i)
        if (roots[i].a == target) return static_cast<int>(i);
    return -1;
}

bool SpectralDatum::levi_contains(const LeviSubset& l, int idx) const {
    return std::find(l.roots.begin(), l.roots.end(), idx) != l.roots.end();
}

RatMat SpectralDatum::reflection_vstar(int idx) const {
    const RootEntry& r = roots[static_cast<size_t>(idx)];
    Rat norm = gram_dot(gram, r.a, r.a);
    if (norm == 0) throw Error("root with Gram-null vector");
    RatMat m = rat_identity(rank);
    // s(v) = v - (2 <a, v> / <a, a>) a
    RatVec ga = mat_vec(gram, r.a);
    for (size_t i = 0; i < rank; ++i)
        for (size_t j = 0; j < rank; ++j) m[i][j] -= Rat(2) * r.a[i] * ga[j] / norm;
    return m;
}

int SpectralDatum::half_exponent(const std::vector<int>& positive,
                                 const LatticeVector& lambda) const {
    long long s = 0;
    for (int idx : positive) {
        const RootEntry& r = roots[static_cast<size_t>(idx)];
        long long dv = 0;
        for (size_t i = 0; i < lambda.size(); ++i) dv += r.d[i] * lambda[i];
        s += r.mult * dv;
    }
    return static_cast<int>(((s % 2) + 2) % 2);
}

// ------------------------------------------------------------------ validate

ValidationReport validate_datum(const SpectralDatum& d) {
    ValidationReport rep;
    auto err = [&](const std::string& m) { rep.errors.push_back(m); };
    auto warn = [&](const std::string& m) { rep.warnings.push_back(m); };

    if (d.rank == 0) err("rank must be positive");
    if (d.gram.size() != d.rank) err("Gram matrix has wrong size");
    for (const auto& row : d.gram)
        if (row.size() != d.rank) err("Gram matrix is not square");
    if (d.qF <= 1) err("qF must be a rational > 1");

    // Gram: symmetric positive definite (leading principal minors).
    if (d.gram.size() == d.rank) {
        for (size_t i = 0; i < d.rank; ++i)
            for (size_t j = i + 1; j < d.rank; ++j)
                if (d.gram[i][j] != d.gram[j][i]) {
                    err("Gram matrix is not symmetric");
                    i = d.rank;
                    break;
                }
        RatMat m = d.gram;
        for (size_t k = 1; k <= d.rank; ++k) {
            RatMat minor(k, rat_vec(k));
            for (size_t i = 0; i < k; ++i)
                for (size_t j = 0; j < k; ++j) minor[i][j] = m[i][j];
            // determinant by elimination
            Rat det(1);
            for (size_t c = 0; c < k; ++c) {
                size_t piv = c;
                while (piv < k && minor[piv][c] == 0) ++piv;
                if (piv == k) {
                    det = 0;
                    break;
                }
                if (piv != c) {
                    std::swap(minor[piv], minor[c]);
                    det = -det;
                }
                det *= minor[c][c];
                for (size_t i = c + 1; i < k; ++i) {
                    Rat f = minor[i][c] / minor[c][c];
                    for (size_t j = c; j < k; ++j) minor[i][j] -= f * minor[c][j];
                }
            }
            if (det <= 0) {
                err("Gram matrix is not positive definite");
                break;
            }
        }
    }

    for (const auto& r : d.roots) {
        if (r.a.size() != d.rank || r.h.size() != d.rank || r.d.size() != d.rank)
            err("root '" + r.id + "' has vectors of wrong rank");
        if (is_zero_vec(r.a)) err("root '" + r.id + "' has zero vector");
        if (r.mult <= 0) err("root '" + r.id + "' has nonpositive multiplicity");
    }

    // +- pairing with negated h, d and equal parameters.
    for (size_t i = 0; i < d.roots.size(); ++i) {
        int ni = d.negation_of(static_cast<int>(i));
        if (ni < 0) {
            err("root '" + d.roots[i].id + "' has no negative");
            continue;
        }
        const RootEntry& r = d.roots[i];
        const RootEntry& nr = d.roots[static_cast<size_t>(ni)];
        if (nr.h != negated(r.h) || nr.d != negated(r.d))
            err("root '" + r.id + "' and its negative disagree on h or d");
        if (nr.mult != r.mult) err("root '" + r.id + "' and its negative disagree on multiplicity");
        bool same_params = nr.params.constant_case() == r.params.constant_case() &&
                           nr.params.q_alpha_star == r.params.q_alpha_star &&
                           nr.params.c_alpha == r.params.c_alpha &&
                           (r.params.constant_case() || *nr.params.q_alpha == *r.params.q_alpha);
        if (!same_params) err("root '" + r.id + "' and its negative disagree on parameters");
        if (nr.reflection != r.reflection)
            err("root '" + r.id + "' and its negative disagree on the reflection");
    }

    // Parameter positivity at t = sqrt(qF).
    for (const auto& r : d.roots) {
        try {
            if (!r.params.constant_case()) {
                ScalarOrder q = scalar_compare(*r.params.q_alpha, d.qF);
                if (q.sign <= 0 || q.vs_one <= 0) err("root '" + r.id + "': qAlpha <= 1");
            }
            ScalarOrder qs = scalar_compare(r.params.q_alpha_star, d.qF);
            if (qs.sign <= 0 || (qs.vs_one < 0)) err("root '" + r.id + "': qAlphaStar < 1");
            ScalarOrder c = scalar_compare(r.params.c_alpha, d.qF);
            if (c.sign <= 0) err("root '" + r.id + "': cAlpha <= 0");
        } catch (const Error& e) {
            err("root '" + r.id + "': " + e.what());
        }
    }

    // Reflections: involutive lattice matrices permuting the root set and
    // fixing the Gram form.
    for (const auto& gid : d.weyl_gens) {
        int gi;
        try {
            gi = d.root_index(gid);
        } catch (const Error&) {
            err("Weyl generator '" + gid + "' is not a root id");
            continue;
        }
        const RootEntry& g = d.roots[static_cast<size_t>(gi)];
        if (g.reflection.size() != d.rank) {
            err("reflection of '" + gid + "' has wrong size");
            continue;
        }
        IntMat sq = int_mat_mul(g.reflection, g.reflection);
        if (sq != int_identity(d.rank)) err("reflection of '" + gid + "' is not an involution");
        RatMat sv = d.reflection_vstar(gi);
        if (mat_mul(transpose(sv), mat_mul(d.gram, sv)) != d.gram)
            err("reflection of '" + gid + "' does not fix the Gram form");
        for (const auto& r : d.roots) {
            RatVec img = mat_vec(sv, r.a);
            bool found = false;
            for (const auto& r2 : d.roots)
                if (r2.a == img) {
                    found = true;
                    // h must transport along the lattice action.
                    if (r2.h != int_mat_vec(g.reflection, r.h))
                        err("reflection of '" + gid + "' does not permute roots with correct sign: '" +
                            r.id + "' maps to '" + r2.id + "' with inconsistent h");
                    break;
                }
            if (!found)
                err("reflection of '" + gid + "' does not permute roots with correct sign: image of '" +
                    r.id + "' is not a root");
        }
    }

    // Levi realizability: the witness vanishes exactly on the subset.
    for (const auto& [id, l] : d.levis) {
        if (l.witness.size() != d.rank) {
            err("Levi '" + id + "' witness has wrong rank");
            continue;
        }
        std::set<int> zero;
        for (size_t i = 0; i < d.roots.size(); ++i)
            if (gram_dot(d.gram, l.witness, d.roots[i].a) == 0) zero.insert(static_cast<int>(i));
        std::set<int> declared(l.roots.begin(), l.roots.end());
        if (zero != declared)
            err("Levi '" + id + "' is not realizable: witness zero set differs from the declared roots");
        for (int idx : l.roots) {
            int ni = d.negation_of(idx);
            if (ni < 0 || declared.count(ni) == 0)
                err("Levi '" + id + "' is not closed under negation");
        }
        if (l.restriction) {
            for (const auto& row : *l.restriction)
                if (row.size() != d.rank) err("Levi '" + id + "' restriction map has wrong shape");
            for (int idx : l.roots) {
                LatticeVector img = int_mat_vec(*l.restriction, d.roots[static_cast<size_t>(idx)].h);
                bool zerov = true;
                for (long long x : img)
                    if (x != 0) zerov = false;
                if (!zerov)
                    warn("Levi '" + id + "' restriction does not kill h of root '" +
                         d.roots[static_cast<size_t>(idx)].id + "'");
            }
        }
    }

    // Cartan pairings: non-integral values are allowed for generalized
    // systems but worth a warning.
    for (const auto& r : d.roots)
        for (const auto& r2 : d.roots) {
            Rat nn = gram_dot(d.gram, r2.a, r2.a);
            if (nn == 0) continue;
            Rat pairing = Rat(2) * gram_dot(d.gram, r.a, r2.a) / nn;
            if (!is_integer(pairing)) {
                warn("non-integral Cartan pairing between '" + r.id + "' and '" + r2.id + "'");
            }
        }

    if (d.residual_rank > d.rank) err("residual rank exceeds the lattice rank");
    if (d.center_map)
        for (const auto& row : *d.center_map)
            if (row.size() != d.rank) err("center map has wrong shape");

    return rep;
}

// -------------------------------------------------------------------- facets

bool ParabolicFacet::is_plus(int idx) const {
    return std::find(plus.begin(), plus.end(), idx) != plus.end();
}

bool ParabolicFacet::is_minus(int idx) const {
    return std::find(minus.begin(), minus.end(), idx) != minus.end();
}

ParabolicFacet facet_from_vector(const SpectralDatum& d, const std::string& levi_id,
                                 const RatVec& xi) {
    const LeviSubset& l = d.levi(levi_id);
    if (xi.size() != d.rank) throw Error("facet witness has wrong rank");
    ParabolicFacet f;
    f.levi_id = levi_id;
    f.witness = xi;
    for (size_t i = 0; i < d.roots.size(); ++i) {
        Rat p = gram_dot(d.gram, xi, d.roots[i].a);
        int idx = static_cast<int>(i);
        bool in_levi = d.levi_contains(l, idx);
        if (p == 0) {
            if (!in_levi)
                throw Error("not regular relative to Levi '" + levi_id + "': witness " +
                            vec_str(xi) + " vanishes on root '" + d.roots[i].id + "'");
            f.zero.push_back(idx);
        } else {
            if (in_levi)
                throw Error("witness does not vanish on Levi root '" + d.roots[i].id + "'");
            (p > 0 ? f.plus : f.minus).push_back(idx);
        }
    }
    return f;
}

ParabolicFacet opposite_facet(const SpectralDatum& d, const ParabolicFacet& f) {
    return facet_from_vector(d, f.levi_id, negated(f.witness));
}

std::vector<RootClass> facet_classes(const SpectralDatum& d, const ParabolicFacet& f) {
    const LeviSubset& l = d.levi(f.levi_id);
    std::vector<RatVec> span = levi_span(d, l);
    std::vector<RootClass> classes;
    for (int idx : f.plus) {
        const RootEntry& r = d.roots[static_cast<size_t>(idx)];
        RatVec dir = sub(r.a, project_onto_span(d.gram, span, r.a));
        if (is_zero_vec(dir)) throw Error("non-Levi root projects to zero");
        dir = ray_canonical(dir);
        bool placed = false;
        for (auto& c : classes)
            if (c.direction == dir) {
                c.members.push_back(idx);
                placed = true;
                break;
            }
        if (!placed) classes.push_back(RootClass{{idx}, dir});
    }
    return classes;
}

std::vector<RootClass> crossing_classes(const SpectralDatum& d, const ParabolicFacet& from,
                                        const ParabolicFacet& to) {
    if (from.levi_id != to.levi_id) throw Error("facets have different Levis");
    std::vector<RootClass> out;
    for (const auto& c : facet_classes(d, from)) {
        bool crosses = true;
        for (int idx : c.members)
            if (!to.is_minus(idx)) crosses = false;
        // Class members flip together; mixed signs would contradict
        // proportional projections.
        bool any = false;
        for (int idx : c.members)
            if (to.is_minus(idx)) any = true;
        if (any && !crosses) throw Error("facet comparison splits a reduced-root class");
        if (crosses) out.push_back(c);
    }
    return out;
}

std::vector<ParabolicFacet> gallery(const SpectralDatum& d, const ParabolicFacet& from,
                                    const ParabolicFacet& to) {
    if (from.levi_id != to.levi_id) throw Error("facets have different Levis");
    if (from.same_partition(to)) return {from};

    std::vector<RootClass> crossings = crossing_classes(d, from, to);
    const LeviSubset& l = d.levi(from.levi_id);
    std::vector<RatVec> span = levi_span(d, l);

    const RatVec& p0 = from.witness;
    const long long primes[] = {1009, 2003, 4001, 8191, 16411};
    for (long long prime : primes) {
        // Levi-orthogonal generic perturbation direction.
        RatVec r = rat_vec(d.rank);
        Rat pw(1, prime);
        Rat acc = pw;
        for (size_t i = 0; i < d.rank; ++i) {
            r[i] = acc;
            acc *= pw;
        }
        r = sub(r, project_onto_span(d.gram, span, r));

        for (int k = 4; k <= 40; k += 4) {
            Rat eta = rat_pow(Rat(1, 2), k);
            RatVec p1 = add(to.witness, scale(r, eta));
            // Endpoint must still lie in the target facet.
            bool ok = true;
            for (size_t i = 0; i < d.roots.size() && ok; ++i) {
                Rat v = gram_dot(d.gram, p1, d.roots[i].a);
                int idx = static_cast<int>(i);
                if (to.is_plus(idx) && v <= 0) ok = false;
                if (to.is_minus(idx) && v >= 0) ok = false;
                if (d.levi_contains(l, idx) && v != 0) ok = false;
            }
            if (!ok) continue;

            // Crossing times along the affine segment; must be distinct.
            std::vector<std::pair<Rat, size_t>> times;
            for (size_t c = 0; c < crossings.size(); ++c) {
                const RatVec& a = d.roots[static_cast<size_t>(crossings[c].members[0])].a;
                Rat v0 = gram_dot(d.gram, p0, a);
                Rat v1 = gram_dot(d.gram, p1, a);
                times.emplace_back(v0 / (v0 - v1), c);
            }
            std::sort(times.begin(), times.end(),
                      [](const auto& x, const auto& y) { return x.first < y.first; });
            bool distinct = true;
            for (size_t i = 0; i + 1 < times.size(); ++i)
                if (times[i].first == times[i + 1].first) distinct = false;
            if (!distinct) continue;

            // Midpoint witnesses between consecutive crossings.
            std::vector<ParabolicFacet> out = {from};
            bool valid = true;
            for (size_t i = 0; i < times.size() && valid; ++i) {
                RatVec w;
                if (i + 1 < times.size()) {
                    Rat tm = (times[i].first + times[i + 1].first) / 2;
                    w = add(p0, scale(sub(p1, p0), tm));
                } else {
                    w = p1;
                }
                ParabolicFacet f;
                try {
                    f = facet_from_vector(d, from.levi_id, w);
                } catch (const Error&) {
                    valid = false;
                    break;
                }
                // Expected pattern: flip the first i+1 crossing classes.
                std::set<int> expect(from.plus.begin(), from.plus.end());
                for (size_t j = 0; j <= i; ++j)
                    for (int idx : crossings[times[j].second].members) {
                        expect.erase(idx);
                        expect.insert(d.negation_of(idx));
                    }
                std::set<int> got(f.plus.begin(), f.plus.end());
                if (got != expect) {
                    valid = false;
                    break;
                }
                out.push_back(std::move(f));
            }
            if (!valid) continue;
            // Use the caller's facet object for the endpoint.
            out.back() = to;
            return out;
        }
    }
    throw Error("gallery construction failed to find a generic path");
}

Rat coroot_pairing(const SpectralDatum& d, int root_idx, const RatVec& v,
                   const std::string* levi_context) {
    const RootEntry& r = d.roots[static_cast<size_t>(root_idx)];
    if (is_zero_vec(r.a)) throw Error("coroot pairing with zero root");
    if (v.size() != d.rank) throw Error("coroot pairing with vector of wrong rank");
    Rat norm = gram_dot(d.gram, r.a, r.a);
    RatVec eff = r.a;
    if (levi_context) {
        std::vector<RatVec> span = levi_span(d, d.levi(*levi_context));
        eff = sub(eff, project_onto_span(d.gram, span, eff));
    }
    return Rat(2) * gram_dot(d.gram, eff, v) / norm;
}

Rat n_norm_sq(const SpectralDatum& d, const RatVec& v, const std::string& levi_id) {
    std::vector<RatVec> span = levi_span(d, d.levi(levi_id));
    RatVec p = project_onto_span(d.gram, span, v);
    return gram_dot(d.gram, p, p);
}

// ---------------------------------------------------------------------- Weyl

namespace {

std::vector<int> root_permutation(const SpectralDatum& d, const RatMat& vstar) {
    std::vector<int> perm(d.roots.size(), -1);
    for (size_t i = 0; i < d.roots.size(); ++i) {
        RatVec img = mat_vec(vstar, d.roots[i].a);
        for (size_t j = 0; j < d.roots.size(); ++j)
            if (d.roots[j].a == img) {
                perm[i] = static_cast<int>(j);
                break;
            }
        if (perm[i] < 0) throw Error("group element does not permute the root set");
    }
    return perm;
}

} // namespace

std::vector<WeylElement> enumerate_weyl(const SpectralDatum& d) {
    std::vector<WeylElement> gens;
    for (const auto& gid : d.weyl_gens) {
        int gi = d.root_index(gid);
        const RootEntry& g = d.roots[static_cast<size_t>(gi)];
        WeylElement w;
        w.lam = g.reflection;
        auto inv = int_inverse(g.reflection);
        if (!inv) throw Error("reflection of '" + gid + "' is not invertible over Z");
        w.lam_inv = *inv;
        w.vstar = d.reflection_vstar(gi);
        w.root_perm = root_permutation(d, w.vstar);
        w.word = gid;
        gens.push_back(std::move(w));
    }

    WeylElement id;
    id.lam = int_identity(d.rank);
    id.lam_inv = id.lam;
    id.vstar = rat_identity(d.rank);
    id.root_perm.resize(d.roots.size());
    for (size_t i = 0; i < d.roots.size(); ++i) id.root_perm[i] = static_cast<int>(i);
    id.word = "";

    std::vector<WeylElement> group = {id};
    std::set<std::string> seen = {matrix_key(id.lam)};
    for (size_t head = 0; head < group.size(); ++head) {
        for (const auto& g : gens) {
            WeylElement next;
            next.lam = int_mat_mul(group[head].lam, g.lam);
            std::string key = matrix_key(next.lam);
            if (seen.count(key)) continue;
            next.lam_inv = int_mat_mul(g.lam_inv, group[head].lam_inv);
            next.vstar = mat_mul(group[head].vstar, g.vstar);
            next.root_perm.resize(d.roots.size());
            for (size_t i = 0; i < d.roots.size(); ++i)
                next.root_perm[i] = group[head].root_perm[static_cast<size_t>(g.root_perm[i])];
            next.word = group[head].word.empty() ? g.word : group[head].word + "*" + g.word;
            seen.insert(key);
            group.push_back(std::move(next));
            if (static_cast<long long>(group.size()) > d.weyl_cap)
                throw Error("Weyl group enumeration exceeded the configured cap");
        }
    }
    return group;
}

ParabolicFacet transform_facet(const SpectralDatum& d, const WeylElement& w,
                               const ParabolicFacet& f) {
    const LeviSubset& l = d.levi(f.levi_id);
    std::set<int> image;
    for (int idx : l.roots) image.insert(w.root_perm[static_cast<size_t>(idx)]);
    const std::string* target = nullptr;
    for (const auto& [id, l2] : d.levis) {
        std::set<int> s(l2.roots.begin(), l2.roots.end());
        if (s == image) {
            target = &id;
            break;
        }
    }
    if (!target) throw Error("transformed Levi is not declared in the scenario");
    return facet_from_vector(d, *target, w.apply_vstar(f.witness));
}

std::vector<ParabolicFacet> facet_orbit(const SpectralDatum& d,
                                        const std::vector<WeylElement>& weyl,
                                        const ParabolicFacet& f) {
    std::vector<ParabolicFacet> orbit;
    for (const auto& w : weyl) {
        ParabolicFacet g = transform_facet(d, w, f);
        bool dup = false;
        for (const auto& o : orbit)
            if (o.same_partition(g)) dup = true;
        if (!dup) orbit.push_back(std::move(g));
    }
    return orbit;
}

std::vector<ParabolicFacet> facets_with_levi(const SpectralDatum& d,
                                             const std::vector<WeylElement>& weyl,
                                             const ParabolicFacet& f) {
    const LeviSubset& l = d.levi(f.levi_id);
    std::set<int> declared(l.roots.begin(), l.roots.end());
    std::vector<ParabolicFacet> out;
    auto push = [&](ParabolicFacet g) {
        for (const auto& o : out)
            if (o.same_partition(g)) return;
        out.push_back(std::move(g));
    };
    for (const auto& w : weyl) {
        std::set<int> image;
        for (int idx : l.roots) image.insert(w.root_perm[static_cast<size_t>(idx)]);
        if (image != declared) continue;
        ParabolicFacet g = facet_from_vector(d, f.levi_id, w.apply_vstar(f.witness));
        ParabolicFacet og = opposite_facet(d, g);
        push(std::move(g));
        push(std::move(og));
    }
    return out;
}

} // namespace muforge
