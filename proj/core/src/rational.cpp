#include "sfint/rational.hpp"

#include <ostream>

namespace sfint {

Rat Rat::from_string(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rat(mpz_class(s));
    mpz_class n(s.substr(0, slash));
    mpz_class d(s.substr(slash + 1));
    if (d == 0) throw DivisionByZero("rational literal with zero denominator: " + s);
    return Rat(n, d);
}

Rat Rat::pow(long e) const {
    if (e == 0) return Rat(1);
    bool inv = e < 0;
    unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    mpz_class n, d;
    mpz_pow_ui(n.get_mpz_t(), num().get_mpz_t(), k);
    mpz_pow_ui(d.get_mpz_t(), den().get_mpz_t(), k);
    if (inv) {
        if (n == 0) throw DivisionByZero("zero raised to negative power");
        return Rat(d, n);
    }
    return Rat(n, d);
}

Rat Rat::content_gcd(const Rat& a, const Rat& b) {
    if (a.is_zero()) return b.abs();
    if (b.is_zero()) return a.abs();
    mpz_class gn, ld;
    mpz_gcd(gn.get_mpz_t(), a.num().get_mpz_t(), b.num().get_mpz_t());
    mpz_lcm(ld.get_mpz_t(), a.den().get_mpz_t(), b.den().get_mpz_t());
    return Rat(gn, ld);
}

std::string Rat::to_string() const {
    std::string s = num().get_str();
    if (!is_integer()) s += "/" + den().get_str();
    return s;
}

std::ostream& operator<<(std::ostream& os, const Rat& r) { return os << r.to_string(); }

} // namespace sfint
