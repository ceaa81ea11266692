#include "muforge/unitvalue.hpp"

#include <sstream>

namespace muforge {

Rat parse_rat(const std::string& s) {
    if (s.empty()) throw Error("empty rational literal");
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(Int(s));
        Int num(s.substr(0, slash));
        Int den(s.substr(slash + 1));
        if (den == 0) throw Error("zero denominator in rational literal '" + s + "'");
        return Rat(num, den);
    } catch (const std::exception&) {
        throw Error("malformed rational literal '" + s + "'");
    }
}

std::string rat_str(const Rat& r) {
    std::ostringstream os;
    os << rat_num(r);
    if (rat_den(r) != 1) os << '/' << rat_den(r);
    return os.str();
}

Rat rat_pow(const Rat& base, long long e) {
    if (e == 0) return Rat(1);
    if (base == 0) {
        if (e < 0) throw Error("division by zero");
        return Rat(0);
    }
    Rat b = e < 0 ? Rat(1) / base : base;
    long long n = e < 0 ? -e : e;
    Rat acc(1);
    while (n > 0) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

// ---------------------------------------------------------------- Polynomial

Polynomial Polynomial::monomial(const Rat& c, int k) {
    if (c == 0) return Polynomial();
    if (k < 0) throw Error("polynomial monomial with negative degree");
    std::vector<Rat> v(static_cast<size_t>(k) + 1, Rat(0));
    v.back() = c;
    return Polynomial(std::move(v));
}

const Rat& Polynomial::leading() const {
    if (coef_.empty()) throw Error("leading coefficient of zero polynomial");
    return coef_.back();
}

Rat Polynomial::coefficient(int k) const {
    if (k < 0 || k >= static_cast<int>(coef_.size())) return Rat(0);
    return coef_[static_cast<size_t>(k)];
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    std::vector<Rat> v(std::max(coef_.size(), o.coef_.size()), Rat(0));
    for (size_t i = 0; i < coef_.size(); ++i) v[i] += coef_[i];
    for (size_t i = 0; i < o.coef_.size(); ++i) v[i] += o.coef_[i];
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator-() const {
    std::vector<Rat> v = coef_;
    for (auto& c : v) c = -c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    if (is_zero() || o.is_zero()) return Polynomial();
    std::vector<Rat> v(coef_.size() + o.coef_.size() - 1, Rat(0));
    for (size_t i = 0; i < coef_.size(); ++i)
        for (size_t j = 0; j < o.coef_.size(); ++j) v[i + j] += coef_[i] * o.coef_[j];
    return Polynomial(std::move(v));
}

std::pair<Polynomial, Polynomial> Polynomial::divmod(const Polynomial& d) const {
    if (d.is_zero()) throw Error("division by zero");
    std::vector<Rat> rem = coef_;
    int dd = d.degree();
    if (degree() < dd) return {Polynomial(), *this};
    std::vector<Rat> quot(static_cast<size_t>(degree() - dd) + 1, Rat(0));
    for (int i = degree(); i >= dd; --i) {
        Rat c = rem[static_cast<size_t>(i)];
        if (c == 0) continue;
        Rat f = c / d.leading();
        quot[static_cast<size_t>(i - dd)] = f;
        for (int j = 0; j <= dd; ++j) rem[static_cast<size_t>(i - dd + j)] -= f * d.coefficient(j);
    }
    return {Polynomial(std::move(quot)), Polynomial(std::move(rem))};
}

Polynomial Polynomial::gcd(Polynomial a, Polynomial b) {
    while (!b.is_zero()) {
        Polynomial r = a.divmod(b).second;
        a = std::move(b);
        b = std::move(r);
    }
    return a.is_zero() ? a : a.monic();
}

Polynomial Polynomial::scaled(const Rat& c) const {
    std::vector<Rat> v = coef_;
    for (auto& x : v) x *= c;
    return Polynomial(std::move(v));
}

Polynomial Polynomial::monic() const {
    if (is_zero()) return *this;
    return scaled(Rat(1) / leading());
}

Polynomial Polynomial::substitute_sign(int s) const {
    if (s == 1) return *this;
    std::vector<Rat> v = coef_;
    for (size_t i = 1; i < v.size(); i += 2) v[i] = -v[i];
    return Polynomial(std::move(v));
}

int Polynomial::compare(const Polynomial& o) const {
    if (coef_.size() != o.coef_.size()) return coef_.size() < o.coef_.size() ? -1 : 1;
    for (size_t i = coef_.size(); i-- > 0;) {
        if (coef_[i] != o.coef_[i]) return coef_[i] < o.coef_[i] ? -1 : 1;
    }
    return 0;
}

std::string Polynomial::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = 0; k <= degree(); ++k) {
        Rat c = coefficient(k);
        if (c == 0) continue;
        if (!first) os << (c > 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        Rat ac = rat_abs(c);
        if (k == 0 || ac != 1) {
            os << rat_str(ac);
            if (k > 0) os << "*";
        }
        if (k > 0) {
            os << "t";
            if (k > 1) os << "^" << k;
        }
        first = false;
    }
    return os.str();
}

// -------------------------------------------------------------------- Scalar

Scalar::Scalar(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw Error("division by zero");
    if (num_.is_zero()) {
        den_ = Polynomial(Rat(1));
        return;
    }
    Polynomial g = Polynomial::gcd(num_, den_);
    if (g.degree() > 0) {
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
    }
    Rat lead = den_.leading();
    if (lead != 1) {
        den_ = den_.scaled(Rat(1) / lead);
        num_ = num_.scaled(Rat(1) / lead);
    }
}

Scalar Scalar::monomial(const Rat& c, long long k) {
    if (c == 0) return Scalar();
    if (k >= 0) return Scalar(Polynomial::monomial(c, static_cast<int>(k)), Polynomial(Rat(1)));
    return Scalar(Polynomial(c), Polynomial::monomial(Rat(1), static_cast<int>(-k)));
}

Scalar Scalar::operator+(const Scalar& o) const {
    return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-(const Scalar& o) const {
    return Scalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_); }

Scalar Scalar::operator*(const Scalar& o) const { return Scalar(num_ * o.num_, den_ * o.den_); }

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inv(); }

Scalar Scalar::inv() const {
    if (is_zero()) throw Error("division by zero");
    return Scalar(den_, num_);
}

Scalar Scalar::pow(long long e) const {
    if (e == 0) return one();
    Scalar b = e < 0 ? inv() : *this;
    long long n = e < 0 ? -e : e;
    Scalar acc = one();
    while (n > 0) {
        if (n & 1) acc = acc * b;
        b = b * b;
        n >>= 1;
    }
    return acc;
}

int Scalar::compare(const Scalar& o) const {
    int c = num_.compare(o.num_);
    if (c != 0) return c;
    return den_.compare(o.den_);
}

std::optional<Scalar::Monomial> Scalar::as_monomial() const {
    if (is_zero()) return Monomial{Rat(0), 0};
    auto single = [](const Polynomial& p) -> std::optional<std::pair<Rat, int>> {
        for (int k = 0; k < p.degree(); ++k)
            if (p.coefficient(k) != 0) return std::nullopt;
        return std::make_pair(p.leading(), p.degree());
    };
    auto n = single(num_);
    auto d = single(den_);
    if (!n || !d) return std::nullopt;
    return Monomial{n->first / d->first, static_cast<long long>(n->second) - d->second};
}

Scalar Scalar::galois(int sign) const {
    if (sign == 1) return *this;
    return Scalar(num_.substitute_sign(-1), den_.substitute_sign(-1));
}

std::string Scalar::str() const {
    if (den_.is_one()) {
        if (num_.degree() <= 0) return num_.str();
        return "(" + num_.str() + ")";
    }
    return "(" + num_.str() + ")/(" + den_.str() + ")";
}

ScalarOrder scalar_compare(const Scalar& a, const Rat& qF) {
    if (qF <= 1) throw Error("scalar_compare requires qF > 1");
    auto m = a.as_monomial();
    if (!m) throw Error("comparison undefined: '" + a.str() +
                        "' is not a monomial in t (rationality regime unknown)");
    if (m->c == 0) return ScalarOrder{0, -1};
    int sign = rat_sign(m->c);
    if (sign < 0) return ScalarOrder{-1, -1};
    // value = c * qF^{k/2} with c > 0: compare c^2 * qF^k against 1.
    Rat sq = m->c * m->c * rat_pow(qF, m->k);
    return ScalarOrder{1, sq > 1 ? 1 : (sq < 1 ? -1 : 0)};
}

// ----------------------------------------------------------------- UnitValue

std::string UnitValue::str() const {
    std::string s = "(" + rat_str(rot) + ", " + rat_str(exp) + ")";
    return s;
}

Scalar galois_scalar(const GaloisElement& g, const Scalar& a) { return a.galois(g.sign); }

UnitValue galois_unit(const GaloisElement& g, const UnitValue& v) {
    Rat two_e = v.exp * 2;
    Rat half(0);
    if (g.sign == -1) {
        if (!is_integer(two_e))
            throw Error("half-integer regime violation: q^(" + rat_str(v.exp) +
                        ") has no canonical image under t -> -t");
        if (rat_num(two_e) % 2 != 0) half = Rat(1, 2);
    }
    Int order = rat_den(v.rot);
    if (boost::multiprecision::gcd(g.cyclo, order) != 1)
        throw Error("cyclotomic unit " + g.cyclo.str() + " not invertible at order " + order.str());
    return UnitValue(Rat(g.cyclo) * v.rot + half, v.exp);
}

Scalar unit_to_scalar(const UnitValue& v) {
    Rat two_e = v.exp * 2;
    if (!is_integer(two_e))
        throw Error("value q^(" + rat_str(v.exp) + ") is outside Q(t)");
    Rat c(1);
    if (v.rot == Rat(1, 2)) c = Rat(-1);
    else if (v.rot != 0)
        throw Error("rotation " + rat_str(v.rot) + " is outside Q(t)");
    long long k = static_cast<long long>(rat_num(two_e));
    return Scalar::monomial(c, k);
}

std::optional<UnitValue> scalar_to_unit(const Scalar& a) {
    auto m = a.as_monomial();
    if (!m) return std::nullopt;
    if (m->c == 1) return UnitValue(Rat(0), Rat(m->k, 2));
    if (m->c == -1) return UnitValue(Rat(1, 2), Rat(m->k, 2));
    return std::nullopt;
}

} // namespace muforge
