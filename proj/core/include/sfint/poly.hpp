#pragma once

#include "sfint/rational.hpp"
#include "sfint/vars.hpp"

#include <map>
#include <optional>
#include <vector>

namespace sfint {

// Power product, e.g. x^2*y. Factors are kept sorted by the canonical
// variable order (most significant variable first) with positive exponents.
struct Mono {
    std::vector<std::pair<VarId, int>> factors;

    static Mono one() { return Mono{}; }
    static Mono var(VarId v, int e = 1);

    bool is_one() const { return factors.empty(); }
    int total_degree() const;
    int exponent_of(VarId v) const;

    Mono mul(const Mono& o) const;
    // Componentwise quotient; nullopt if any exponent would go negative.
    std::optional<Mono> div(const Mono& o) const;
    Mono lcm(const Mono& o) const;
    bool divides(const Mono& o) const { return o.div(*this).has_value(); }
    bool coprime_with(const Mono& o) const;

    bool operator==(const Mono& o) const { return factors == o.factors; }
    std::string to_string() const;
};

enum class MonoOrder { GrLex, Lex };

// Three-way comparison under the given order; positive if a > b (a closer
// to the leading position). Both orders break ties through the canonical
// variable order with x > y > z > auxiliaries.
int mono_cmp(const Mono& a, const Mono& b, MonoOrder ord = MonoOrder::GrLex);

struct MonoGrLexDesc {
    bool operator()(const Mono& a, const Mono& b) const { return mono_cmp(a, b) > 0; }
};

// Sparse multivariate polynomial with exact rational coefficients. Terms are
// stored leading-first under graded lex. Immutable in spirit: operations
// return new values.
class Poly {
public:
    using TermMap = std::map<Mono, Rat, MonoGrLexDesc>;

    Poly() = default;
    explicit Poly(const Rat& c);
    explicit Poly(long c) : Poly(Rat(c)) {}
    static Poly variable(VarId v, int e = 1);
    static Poly term(const Mono& m, const Rat& c);
    static Poly from_terms(TermMap t);

    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    // Value when is_constant(); zero polynomial yields 0.
    Rat constant_value() const;

    size_t term_count() const { return terms_.size(); }
    int total_degree() const; // degree of zero polynomial is -1
    int degree_in(VarId v) const;
    std::vector<VarId> vars() const; // canonical order
    bool contains_var(VarId v) const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly scaled(const Rat& c) const;
    Poly pow(int e) const;

    Poly derivative(VarId v) const;

    // Leading data under the requested order.
    const Mono& leading_mono(MonoOrder ord = MonoOrder::GrLex) const;
    Rat leading_coeff(MonoOrder ord = MonoOrder::GrLex) const;

    // Coefficient of v^k viewed as polynomial in v.
    Poly coeff_of(VarId v, int k) const;
    // Split into monomials over `vars` with polynomial cofactors in the rest.
    std::map<Mono, Poly, MonoGrLexDesc> collect(const std::vector<VarId>& vars) const;

    Poly substitute(VarId v, const Poly& value) const;
    Rat eval(const std::map<VarId, Rat>& point) const;
    // Partial evaluation: substitute rationals for the given variables only.
    Poly eval_partial(const std::map<VarId, Rat>& point) const;

    // gcd of all coefficients (nonnegative); zero polynomial has content 0.
    Rat content() const;
    // p = c * unit_normal where unit_normal has integer coprime coefficients
    // and positive leading coefficient (graded lex); returns {c, unit_normal}.
    std::pair<Rat, Poly> primitive() const;

    bool operator==(const Poly& o) const { return terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    TermMap terms_;
    void add_term(const Mono& m, const Rat& c);
    friend Poly poly_add_scaled(const Poly&, const Poly&, const Rat&);
};

Poly operator*(const Rat& c, const Poly& p);

// Multivariate polynomial gcd over Q. Result is integer-primitive with
// positive leading coefficient; gcd(0, 0) = 0.
Poly poly_gcd(const Poly& a, const Poly& b);
// Quotient when division is exact, nullopt otherwise.
std::optional<Poly> poly_div_exact(const Poly& a, const Poly& b);
// Product of squarefree factors, integer-primitive, positive leading coeff.
Poly squarefree_part(const Poly& p);

// Dense view of p as a univariate polynomial in v with Poly coefficients.
std::vector<Poly> to_univariate(const Poly& p, VarId v);
Poly from_univariate(const std::vector<Poly>& coeffs, VarId v);
// Pseudo-remainder of a by b, both viewed in variable v (deg_v b >= 1).
Poly pseudo_rem(const Poly& a, const Poly& b, VarId v);
// Resultant of a and b with respect to v (subresultant PRS).
Poly resultant(const Poly& a, const Poly& b, VarId v);

} // namespace sfint
