#include "muforge/monomial_system.hpp"

#include <algorithm>

namespace muforge {

MonomialSystemSolution solve_monomial_system(const std::vector<MonomialEquation>& eqs, size_t n) {
    MonomialSystemSolution out;
    if (eqs.empty()) {
        out.finite = false;
        out.base_points = {TorusPoint::identity(n)};
        for (size_t j = 0; j < n; ++j) {
            RatVec dir = rat_vec(n);
            dir[j] = 1;
            out.free_directions.push_back(std::move(dir));
        }
        return out;
    }

    size_t m = eqs.size();
    std::vector<std::vector<Int>> a(m, std::vector<Int>(n, 0));
    RatVec target_rot(m), target_exp(m);
    for (size_t i = 0; i < m; ++i) {
        if (eqs[i].lam.size() != n) throw Error("equation lattice vector of wrong rank");
        for (size_t j = 0; j < n; ++j) a[i][j] = eqs[i].lam[j];
        target_rot[i] = eqs[i].target.rot;
        target_exp[i] = eqs[i].target.exp;
    }

    SmithForm f = smith_normal_form(a);
    size_t t = 0;
    while (t < std::min(m, n) && f.d[t][t] != 0) ++t;

    // Transformed targets U * (R, E).
    RatVec ur(m, Rat(0)), ue(m, Rat(0));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) {
            Rat c(f.u[i][j]);
            ur[i] += c * target_rot[j];
            ue[i] += c * target_exp[j];
        }

    // Zero rows demand exact consistency.
    for (size_t i = t; i < m; ++i) {
        if (ue[i] != 0 || !is_integer(ur[i])) return out; // empty finite set
    }

    // Exponent part: one value per pivot, free beyond.
    RatVec y_exp(n, Rat(0));
    for (size_t i = 0; i < t; ++i) y_exp[i] = ue[i] / Rat(f.d[i][i]);

    // Rotation part: d_i choices per pivot coordinate.
    Int combos = 1;
    for (size_t i = 0; i < t; ++i) combos *= f.d[i][i];
    if (combos > 1000000) throw Error("monomial system has too many torsion solutions");

    std::vector<RatVec> rot_choices; // one vector of y-rotations per combination
    rot_choices.push_back(RatVec(n, Rat(0)));
    for (size_t i = 0; i < t; ++i) {
        Int d = f.d[i][i];
        std::vector<RatVec> next;
        for (const auto& partial : rot_choices) {
            for (Int k = 0; k < d; ++k) {
                RatVec y = partial;
                y[i] = mod1((ur[i] + Rat(k)) / Rat(d));
                next.push_back(std::move(y));
            }
        }
        rot_choices = std::move(next);
    }

    auto assemble = [&](const RatVec& y_rot) {
        std::vector<UnitValue> vals(n);
        for (size_t j = 0; j < n; ++j) {
            Rat r(0), e(0);
            for (size_t i = 0; i < n; ++i) {
                Rat c(f.v[j][i]);
                r += c * y_rot[i];
                e += c * y_exp[i];
            }
            vals[j] = UnitValue(r, e);
        }
        return TorusPoint(std::move(vals));
    };

    std::vector<TorusPoint> points;
    for (const auto& y : rot_choices) points.push_back(assemble(y));
    std::sort(points.begin(), points.end());

    // Verification by substitution.
    for (const auto& p : points)
        for (const auto& eq : eqs) {
            UnitValue got = p.eval(eq.lam);
            if (got.exp != eq.target.exp || got.rot != eq.target.rot)
                throw Error("internal: monomial system solution fails substitution");
        }

    if (t == n) {
        out.finite = true;
        out.points = std::move(points);
        return out;
    }
    out.finite = false;
    out.base_points = std::move(points);
    for (size_t j = t; j < n; ++j) {
        RatVec dir(n, Rat(0));
        for (size_t i = 0; i < n; ++i) dir[i] = Rat(f.v[i][j]);
        out.free_directions.push_back(std::move(dir));
    }
    return out;
}

} // namespace muforge
