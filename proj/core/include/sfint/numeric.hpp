#pragma once

#include "sfint/expr.hpp"

#include <mpfr.h>

#include <map>

namespace sfint {

struct NumericError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
// evaluation point lies on a pole, or within the working error bound of one
struct PoleAtPoint : NumericError {
    using NumericError::NumericError;
};
// ln or a fractional power left its real domain
struct DomainError : NumericError {
    using NumericError::NumericError;
};
// error bound grew past what the requested tolerance can support
struct PrecisionLost : NumericError {
    using NumericError::NumericError;
};
struct QuadratureError : NumericError {
    using NumericError::NumericError;
};
// an Integral node was reached while inert evaluation was not enabled
struct InertNodeError : NumericError {
    using NumericError::NumericError;
};

// Arbitrary precision float, value semantics, round to nearest.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec = 192);
    BigFloat(long v, mpfr_prec_t prec);
    BigFloat(int v, mpfr_prec_t prec) : BigFloat(static_cast<long>(v), prec) {}
    BigFloat(double v, mpfr_prec_t prec);
    BigFloat(const Rat& v, mpfr_prec_t prec);
    BigFloat(const BigFloat& o);
    BigFloat(BigFloat&& o) noexcept;
    BigFloat& operator=(const BigFloat& o);
    BigFloat& operator=(BigFloat&& o) noexcept;
    ~BigFloat();

    mpfr_prec_t precision() const { return mpfr_get_prec(v_); }
    const mpfr_t& raw() const { return v_; }
    mpfr_t& raw() { return v_; }

    BigFloat operator+(const BigFloat& o) const;
    BigFloat operator-(const BigFloat& o) const;
    BigFloat operator*(const BigFloat& o) const;
    BigFloat operator/(const BigFloat& o) const;
    BigFloat operator-() const;
    BigFloat& operator+=(const BigFloat& o) { return *this = *this + o; }
    BigFloat& operator-=(const BigFloat& o) { return *this = *this - o; }
    BigFloat& operator*=(const BigFloat& o) { return *this = *this * o; }
    BigFloat& operator/=(const BigFloat& o) { return *this = *this / o; }

    BigFloat abs() const;
    BigFloat exp() const;
    BigFloat ln() const; // caller checks positivity
    BigFloat pow_int(long e) const;
    BigFloat pow(const BigFloat& e) const; // positive base
    BigFloat sqrt() const;

    bool is_zero() const { return mpfr_zero_p(v_); }
    bool is_finite() const { return mpfr_number_p(v_); }
    int sign() const { return mpfr_sgn(v_); }
    int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }
    int cmp(double d) const { return mpfr_cmp_d(v_, d); }
    bool operator<(const BigFloat& o) const { return cmp(o) < 0; }
    bool operator>(const BigFloat& o) const { return cmp(o) > 0; }
    bool operator<=(const BigFloat& o) const { return cmp(o) <= 0; }
    bool operator>=(const BigFloat& o) const { return cmp(o) >= 0; }

    // 2^(exponent - precision); magnitude of the last representable digit
    BigFloat ulp() const;

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    std::string to_string(int digits = 20) const;

private:
    mpfr_t v_;
};

// Value with a propagated first-order error bound.
struct NumVal {
    BigFloat val;
    BigFloat err;
};

struct EvalOptions {
    mpfr_prec_t prec = 192;   // about 57 decimal digits
    int quad_order = 32;      // Gauss-Legendre panel order
    int quad_max_depth = 16;  // adaptive bisection depth
    // Integral nodes are resolved by quadrature only when set; plain
    // evaluation refuses them so callers cannot silently pay for one.
    bool allow_inert = false;
};

NumVal eval_expr(const Expr& e, const std::map<VarId, BigFloat>& point, const EvalOptions& opt);
NumVal eval_expr(const Expr& e, const std::map<VarId, Rat>& point, const EvalOptions& opt);

// Evaluates with retries at doubled precision until the error bound is below
// |value|-independent margin; throws PrecisionLost when the cap is reached.
NumVal eval_expr_checked(const Expr& e, const std::map<VarId, Rat>& point, double margin,
                         const EvalOptions& opt);

// True when the value is provably below tol: |val| + err < tol.  Throws
// PrecisionLost when the error bound alone exceeds tol/100, since then the
// test would be meaningless.
bool numeric_zero(const NumVal& v, double tol);

} // namespace sfint
