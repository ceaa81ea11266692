#include "muforge/factored.hpp"

#include <sstream>

namespace muforge {

namespace {

// A factor (1 - u x^lambda) vanishes at chi iff u * chi(lambda) = 1.
// With u = c t^k monomial and chi(lambda) = zeta q^e this is decidable:
// the magnitude |c| q^{k/2 + e} forces |c| = 1 and k/2 + e = 0, and the
// phase forces (c, zeta) in {(1, 1), (-1, -1)}.
bool unit_times_monomial_is_one(const Rat& c, const Rat& rot, const Rat& qexp) {
    if (qexp != 0) return false;
    if (c == 1) return rot == 0;
    if (c == -1) return rot == Rat(1, 2);
    return false;
}

Scalar::Monomial require_monomial(const Scalar& u) {
    auto m = u.as_monomial();
    if (!m)
        throw Error("undecidable vanishing: coefficient '" + u.str() + "' is not a monomial in t");
    return *m;
}

} // namespace

bool FactoredRational::lattice_normalized(const LatticeVector& v) {
    for (long long x : v) {
        if (x > 0) return true;
        if (x < 0) return false;
    }
    return false; // zero vector: caller handles
}

void FactoredRational::mul_constant(const Scalar& c) {
    if (c.is_zero()) throw Error("factored rational with zero constant");
    constant_ = constant_ * c;
}

void FactoredRational::mul_factor(const Scalar& u, const LatticeVector& lam, long long e) {
    if (e == 0 || u.is_zero()) return;
    if (lam.size() != rank_) throw Error("factor lattice vector of wrong rank");
    bool zero = true;
    for (long long x : lam)
        if (x != 0) zero = false;
    if (zero) {
        // (1 - u)^e is a scalar.
        Scalar s = Scalar::one() - u;
        if (s.is_zero())
            throw Error("factor vanishes identically: u = 1 on a zero lattice vector");
        mul_constant(s.pow(e));
        return;
    }
    LatticeVector l = lam;
    Scalar uu = u;
    if (!lattice_normalized(l)) {
        // (1 - u x^l)^e = (-u)^e x^{e l} (1 - u^{-1} x^{-l})^e
        mul_constant((-u).pow(e));
        for (size_t i = 0; i < rank_; ++i) monomial_[i] += e * l[i];
        for (auto& x : l) x = -x;
        uu = u.inv();
    }
    Key k{std::move(l), std::move(uu)};
    auto it = factors_.find(k);
    if (it == factors_.end()) {
        factors_.emplace(std::move(k), e);
    } else {
        it->second += e;
        if (it->second == 0) factors_.erase(it);
    }
}

FactoredRational FactoredRational::operator*(const FactoredRational& o) const {
    if (rank_ != o.rank_) throw Error("rank mismatch in factored product");
    FactoredRational r = *this;
    r.mul_constant(o.constant_);
    for (size_t i = 0; i < rank_; ++i) r.monomial_[i] += o.monomial_[i];
    for (const auto& [k, e] : o.factors_) {
        auto it = r.factors_.find(k);
        if (it == r.factors_.end()) {
            r.factors_.emplace(k, e);
        } else {
            it->second += e;
            if (it->second == 0) r.factors_.erase(it);
        }
    }
    return r;
}

FactoredRational FactoredRational::inv() const {
    FactoredRational r(rank_, constant_.inv());
    for (size_t i = 0; i < rank_; ++i) r.monomial_[i] = -monomial_[i];
    for (const auto& [k, e] : factors_) r.factors_.emplace(k, -e);
    return r;
}

FactoredRational FactoredRational::pow(long long e) const {
    if (e == 0) return one(rank_);
    FactoredRational r(rank_, constant_.pow(e));
    for (size_t i = 0; i < rank_; ++i) r.monomial_[i] = e * monomial_[i];
    for (const auto& [k, f] : factors_) r.factors_.emplace(k, e * f);
    return r;
}

std::optional<Scalar> FactoredRational::ratio_to(const FactoredRational& o) const {
    if (rank_ != o.rank_ || monomial_ != o.monomial_ || factors_ != o.factors_)
        return std::nullopt;
    return constant_ / o.constant_;
}

long long FactoredRational::order_at(const TorusPoint& p) const {
    long long order = 0;
    for (const auto& [k, e] : factors_) {
        auto m = require_monomial(k.u);
        UnitValue v = p.eval(k.lam);
        if (unit_times_monomial_is_one(m.c, v.rot, v.exp + Rat(m.k, 2))) order += e;
    }
    return order;
}

std::vector<std::pair<LatticeVector, long long>>
FactoredRational::vanishing_factors(const TorusPoint& p) const {
    std::vector<std::pair<LatticeVector, long long>> out;
    for (const auto& [k, e] : factors_) {
        auto m = require_monomial(k.u);
        UnitValue v = p.eval(k.lam);
        if (unit_times_monomial_is_one(m.c, v.rot, v.exp + Rat(m.k, 2)))
            out.emplace_back(k.lam, e);
    }
    return out;
}

bool FactoredRational::vanishing_in_general_position(const TorusPoint& p) const {
    auto van = vanishing_factors(p);
    if (van.empty()) return true;
    RatMat rows;
    for (const auto& [lam, e] : van) rows.push_back(to_rat_vec(lam));
    return rank_of(rows) == rows.size();
}

bool FactoredRational::LineFactor::vanishes_at_one() const {
    return unit_times_monomial_is_one(c, rot, qexp);
}

bool FactoredRational::LineSpecialization::degenerate() const {
    for (const auto& f : factors)
        if (f.m == 0 && f.vanishes_at_one()) return true;
    return false;
}

long long FactoredRational::LineSpecialization::order_at_one() const {
    long long order = 0;
    for (const auto& f : factors) {
        if (!f.vanishes_at_one()) continue;
        if (f.m == 0)
            throw Error("degenerate direction: a factor vanishes identically along the line");
        // (1 - s^m) has a simple zero at s = 1 for every m != 0.
        order += f.e;
    }
    return order;
}

FactoredRational::LineSpecialization
FactoredRational::specialize_line(const TorusPoint& p, const LatticeVector& v) const {
    bool zero = true;
    for (long long x : v)
        if (x != 0) zero = false;
    if (zero) throw Error("specialize_line requires a nonzero direction");
    LineSpecialization out;
    for (size_t i = 0; i < rank_; ++i) out.s_power += monomial_[i] * v[i];
    for (const auto& [k, e] : factors_) {
        auto m = require_monomial(k.u);
        UnitValue val = p.eval(k.lam);
        long long spow = 0;
        for (size_t i = 0; i < rank_; ++i) spow += k.lam[i] * v[i];
        out.factors.push_back(LineFactor{m.c, val.rot, val.exp + Rat(m.k, 2), spow, e});
    }
    return out;
}

FactoredRational FactoredRational::substitute_inverse() const {
    FactoredRational r(rank_, constant_);
    for (size_t i = 0; i < rank_; ++i) r.monomial_[i] = -monomial_[i];
    for (const auto& [k, e] : factors_) {
        LatticeVector l(k.lam.size());
        for (size_t i = 0; i < l.size(); ++i) l[i] = -k.lam[i];
        r.mul_factor(k.u, l, e);
    }
    return r;
}

FactoredRational FactoredRational::restrict_along(const IntMat& phi) const {
    size_t target = phi.size();
    for (const auto& row : phi)
        if (row.size() != rank_) throw Error("restriction map of wrong shape");
    FactoredRational r(target, constant_);
    LatticeVector mono = int_mat_vec(phi, monomial_);
    r.monomial_ = mono;
    for (const auto& [k, e] : factors_) {
        LatticeVector l = int_mat_vec(phi, k.lam);
        bool zero = true;
        for (long long x : l)
            if (x != 0) zero = false;
        if (zero) {
            Scalar s = Scalar::one() - k.u;
            if (s.is_zero())
                throw Error("restriction degenerates: factor vanishes identically on the subtorus");
            r.mul_constant(s.pow(e));
        } else {
            r.mul_factor(k.u, l, e);
        }
    }
    return r;
}

FactoredRational FactoredRational::map_coefficients(const GaloisElement& g) const {
    FactoredRational r(rank_, galois_scalar(g, constant_));
    r.monomial_ = monomial_;
    for (const auto& [k, e] : factors_) r.mul_factor(galois_scalar(g, k.u), k.lam, e);
    return r;
}

std::string FactoredRational::str() const {
    std::ostringstream os;
    os << constant_.str();
    bool mono = false;
    for (long long x : monomial_)
        if (x != 0) mono = true;
    if (mono) {
        os << " * x^(";
        for (size_t i = 0; i < monomial_.size(); ++i) {
            if (i) os << ",";
            os << monomial_[i];
        }
        os << ")";
    }
    for (const auto& [k, e] : factors_) {
        os << " * (1 - " << k.u.str() << "*x^(";
        for (size_t i = 0; i < k.lam.size(); ++i) {
            if (i) os << ",";
            os << k.lam[i];
        }
        os << "))";
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

std::string TorusPoint::str() const {
    std::ostringstream os;
    os << "(";
    for (size_t i = 0; i < values.size(); ++i) {
        if (i) os << ", ";
        os << values[i].str();
    }
    os << ")";
    return os.str();
}

} // namespace muforge
