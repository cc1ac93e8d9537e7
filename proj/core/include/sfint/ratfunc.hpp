#pragma once

#include "sfint/poly.hpp"

#include <map>

namespace sfint {

// Quotient of polynomials kept in canonical form: numerator and denominator
// coprime, denominator with integer coprime coefficients and positive leading
// coefficient in graded lex order.  The zero function is 0/1.
class RatFunc {
public:
    RatFunc() : den_(Rat(1)) {}
    RatFunc(const Rat& r) : num_(r), den_(Rat(1)) {}
    RatFunc(long n) : num_(Rat(n)), den_(Rat(1)) {}
    RatFunc(const Poly& p) : num_(p), den_(Rat(1)) {}
    RatFunc(const Poly& num, const Poly& den);

    static RatFunc variable(VarId v) { return RatFunc(Poly::variable(v)); }

    const Poly& num() const { return num_; }
    const Poly& den() const { return den_; }

    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.is_constant(); }
    bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
    Rat constant_value() const;

    RatFunc operator-() const;
    RatFunc operator+(const RatFunc& o) const;
    RatFunc operator-(const RatFunc& o) const;
    RatFunc operator*(const RatFunc& o) const;
    RatFunc operator/(const RatFunc& o) const;

    RatFunc& operator+=(const RatFunc& o) { return *this = *this + o; }
    RatFunc& operator-=(const RatFunc& o) { return *this = *this - o; }
    RatFunc& operator*=(const RatFunc& o) { return *this = *this * o; }
    RatFunc& operator/=(const RatFunc& o) { return *this = *this / o; }

    RatFunc inverse() const;
    RatFunc pow(long e) const;
    RatFunc derivative(VarId v) const;

    RatFunc substitute(VarId v, const RatFunc& value) const;
    Rat eval(const std::map<VarId, Rat>& point) const;

    std::vector<VarId> vars() const;
    bool contains_var(VarId v) const;

    bool operator==(const RatFunc& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const RatFunc& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    void normalize();

    Poly num_;
    Poly den_;
};

RatFunc operator*(const Rat& r, const RatFunc& f);
std::ostream& operator<<(std::ostream& os, const RatFunc& f);

} // namespace sfint
