#pragma once

#include <gmpxx.h>
#include <iosfwd>
#include <stdexcept>
#include <string>

namespace sfint {

struct DivisionByZero : std::runtime_error {
    explicit DivisionByZero(const std::string& what) : std::runtime_error(what) {}
};

// Exact rational number. Denominator is kept positive and the fraction
// canonical (gcd(num, den) = 1) at all times.
class Rat {
public:
    Rat() : q_(0) {}
    Rat(long n) : q_(n) {}
    Rat(long n, long d) {
        if (d == 0) throw DivisionByZero("rational with zero denominator");
        q_ = mpq_class(n, d);
        q_.canonicalize();
    }
    explicit Rat(const mpz_class& n) : q_(n) {}
    Rat(const mpz_class& n, const mpz_class& d) {
        if (d == 0) throw DivisionByZero("rational with zero denominator");
        q_ = mpq_class(n, d);
        q_.canonicalize();
    }
    explicit Rat(const mpq_class& q) : q_(q) { q_.canonicalize(); }

    // Accepts "p", "-p", "p/q".
    static Rat from_string(const std::string& s);

    const mpq_class& raw() const { return q_; }
    mpz_class num() const { return q_.get_num(); }
    mpz_class den() const { return q_.get_den(); }

    bool is_zero() const { return q_ == 0; }
    bool is_one() const { return q_ == 1; }
    bool is_integer() const { return q_.get_den() == 1; }
    int sign() const { return sgn(q_); }

    Rat operator-() const { return Rat(mpq_class(-q_)); }
    Rat operator+(const Rat& o) const { return Rat(mpq_class(q_ + o.q_)); }
    Rat operator-(const Rat& o) const { return Rat(mpq_class(q_ - o.q_)); }
    Rat operator*(const Rat& o) const { return Rat(mpq_class(q_ * o.q_)); }
    Rat operator/(const Rat& o) const {
        if (o.is_zero()) throw DivisionByZero("rational division by zero");
        return Rat(mpq_class(q_ / o.q_));
    }
    Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
    Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
    Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
    Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

    Rat inverse() const {
        if (is_zero()) throw DivisionByZero("inverse of zero");
        return Rat(den(), num());
    }
    Rat abs() const { return sign() < 0 ? -*this : *this; }
    Rat pow(long e) const;

    bool operator==(const Rat& o) const { return q_ == o.q_; }
    bool operator!=(const Rat& o) const { return q_ != o.q_; }
    bool operator<(const Rat& o) const { return q_ < o.q_; }
    bool operator<=(const Rat& o) const { return q_ <= o.q_; }
    bool operator>(const Rat& o) const { return q_ > o.q_; }
    bool operator>=(const Rat& o) const { return q_ >= o.q_; }

    // gcd(a, b) = gcd(num_a, num_b) / lcm(den_a, den_b); gcd(0, 0) = 0.
    static Rat content_gcd(const Rat& a, const Rat& b);

    double to_double() const { return q_.get_d(); }
    std::string to_string() const;

private:
    mpq_class q_;
};

std::ostream& operator<<(std::ostream& os, const Rat& r);

} // namespace sfint
