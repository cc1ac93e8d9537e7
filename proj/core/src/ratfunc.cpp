#include "sfint/ratfunc.hpp"

#include <sstream>

namespace sfint {

RatFunc::RatFunc(const Poly& num, const Poly& den) : num_(num), den_(den) {
    if (den_.is_zero()) throw DivisionByZero("zero denominator in rational function");
    normalize();
}

void RatFunc::normalize() {
    if (num_.is_zero()) {
        den_ = Poly(Rat(1));
        return;
    }
    if (!den_.is_constant()) {
        Poly g = poly_gcd(num_, den_);
        if (!g.is_constant()) {
            num_ = *poly_div_exact(num_, g);
            den_ = *poly_div_exact(den_, g);
        }
    }
    auto [c, u] = den_.primitive();
    den_ = u;
    num_ = num_.scaled(c.inverse());
}

Rat RatFunc::constant_value() const {
    if (!is_constant()) throw std::logic_error("not a constant rational function");
    return num_.constant_value() / den_.constant_value();
}

RatFunc RatFunc::operator-() const {
    RatFunc r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
}

RatFunc RatFunc::operator+(const RatFunc& o) const {
    if (is_zero()) return o;
    if (o.is_zero()) return *this;
    if (den_ == o.den_) return RatFunc(num_ + o.num_, den_);
    Poly g = poly_gcd(den_, o.den_);
    if (g.is_constant()) return RatFunc(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    Poly da = *poly_div_exact(den_, g);
    Poly db = *poly_div_exact(o.den_, g);
    return RatFunc(num_ * db + o.num_ * da, da * o.den_);
}

RatFunc RatFunc::operator-(const RatFunc& o) const { return *this + (-o); }

RatFunc RatFunc::operator*(const RatFunc& o) const {
    if (is_zero() || o.is_zero()) return RatFunc();
    // cross-reduce before multiplying to keep intermediates small
    Poly g1 = poly_gcd(num_, o.den_);
    Poly g2 = poly_gcd(o.num_, den_);
    Poly n1 = g1.is_constant() ? num_ : *poly_div_exact(num_, g1);
    Poly d2 = g1.is_constant() ? o.den_ : *poly_div_exact(o.den_, g1);
    Poly n2 = g2.is_constant() ? o.num_ : *poly_div_exact(o.num_, g2);
    Poly d1 = g2.is_constant() ? den_ : *poly_div_exact(den_, g2);
    return RatFunc(n1 * n2, d1 * d2);
}

RatFunc RatFunc::operator/(const RatFunc& o) const { return *this * o.inverse(); }

RatFunc RatFunc::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero rational function");
    return RatFunc(den_, num_);
}

RatFunc RatFunc::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    RatFunc r(Rat(1)), base = *this;
    while (e > 0) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

RatFunc RatFunc::derivative(VarId v) const {
    if (is_polynomial()) {
        RatFunc r;
        r.num_ = num_.derivative(v);
        r.den_ = den_;
        if (r.num_.is_zero()) r.den_ = Poly(Rat(1));
        return r;
    }
    return RatFunc(num_.derivative(v) * den_ - num_ * den_.derivative(v), den_ * den_);
}

RatFunc RatFunc::substitute(VarId v, const RatFunc& value) const {
    if (!contains_var(v)) return *this;
    auto subst_poly = [&](const Poly& p) {
        // Horner in v with RatFunc accumulator
        int d = p.degree_in(v);
        RatFunc acc;
        for (int k = d; k >= 0; --k) {
            acc = acc * value + RatFunc(p.coeff_of(v, k));
        }
        return acc;
    };
    RatFunc n = subst_poly(num_);
    RatFunc d = subst_poly(den_);
    return n / d;
}

Rat RatFunc::eval(const std::map<VarId, Rat>& point) const {
    Rat d = den_.eval(point);
    if (d.is_zero()) throw DivisionByZero("denominator vanishes at evaluation point");
    return num_.eval(point) / d;
}

std::vector<VarId> RatFunc::vars() const {
    std::vector<VarId> vs = num_.vars();
    for (VarId v : den_.vars())
        if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    std::sort(vs.begin(), vs.end(), [](VarId a, VarId b) { return var_order(a, b) < 0; });
    return vs;
}

bool RatFunc::contains_var(VarId v) const {
    return num_.contains_var(v) || den_.contains_var(v);
}

std::string RatFunc::to_string() const {
    if (is_polynomial()) {
        Rat c = den_.constant_value();
        if (c.is_one()) return num_.to_string();
        return RatFunc(num_.scaled(c.inverse())).num_.to_string();
    }
    std::ostringstream os;
    bool wrap_num = num_.term_count() > 1;
    os << (wrap_num ? "(" : "") << num_.to_string() << (wrap_num ? ")" : "");
    os << "/";
    bool wrap_den = den_.term_count() > 1 || den_.leading_mono().total_degree() > 0;
    os << (wrap_den ? "(" : "") << den_.to_string() << (wrap_den ? ")" : "");
    return os.str();
}

RatFunc operator*(const Rat& r, const RatFunc& f) { return RatFunc(r) * f; }

std::ostream& operator<<(std::ostream& os, const RatFunc& f) { return os << f.to_string(); }

} // namespace sfint
