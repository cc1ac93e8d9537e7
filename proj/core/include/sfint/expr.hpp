#pragma once

#include "sfint/ratfunc.hpp"

#include <memory>

namespace sfint {

// Symbolic expressions over rational constants, variables, field operations,
// exp, ln and an inert integral node.  Construction runs a light canonical
// form: sums and products are flattened and like terms collected, numeric
// subexpressions folded, powers of powers merged where that is sound.
//
// Integral(f, v) stands for the definite integral of f from 0 to v taken in
// the variable v, so d/dv Integral(f, v) = f and differentiation under the
// integral sign in any other variable is exact.  Fractional powers evaluate
// as exp(e*ln(b)) and are only defined numerically for positive bases.
enum class ExprKind { Num, Var, Pow, Mul, Add, Exp, Ln, Integral };

class Expr {
public:
    Expr() : Expr(num(Rat(0))) {}
    Expr(const Rat& r) : Expr(num(r)) {}
    Expr(long v) : Expr(num(Rat(v))) {}

    static Expr num(const Rat& r);
    static Expr var(VarId v);
    static Expr add(std::vector<Expr> terms);
    static Expr mul(std::vector<Expr> factors);
    static Expr pow(const Expr& base, const Rat& exponent);
    static Expr exp(const Expr& arg);
    static Expr ln(const Expr& arg);
    static Expr integral(const Expr& kernel, VarId v);

    static Expr from_poly(const Poly& p);
    static Expr from_ratfunc(const RatFunc& f);

    ExprKind kind() const;
    const Rat& value() const;     // Num
    VarId var_id() const;         // Var, Integral
    const Rat& exponent() const;  // Pow
    size_t child_count() const;
    const Expr& child(size_t i) const;

    bool is_num() const { return kind() == ExprKind::Num; }
    bool is_zero() const { return is_num() && value().is_zero(); }
    bool is_one() const { return is_num() && value().is_one(); }

    Expr operator+(const Expr& o) const { return add({*this, o}); }
    Expr operator-(const Expr& o) const;
    Expr operator-() const;
    Expr operator*(const Expr& o) const { return mul({*this, o}); }
    Expr operator/(const Expr& o) const;

    Expr derivative(VarId v) const;
    Expr substitute(VarId v, const Expr& value) const;

    std::vector<VarId> free_vars() const;
    bool contains_var(VarId v) const;
    bool contains_kind(ExprKind k) const;

    bool operator==(const Expr& o) const;
    bool operator!=(const Expr& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    struct Node;
    explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
    std::shared_ptr<const Node> n_;

    friend int expr_cmp(const Expr& a, const Expr& b);
};

// Total order on canonical forms; zero exactly for structurally equal trees.
int expr_cmp(const Expr& a, const Expr& b);

struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return expr_cmp(a, b) < 0; }
};

std::ostream& operator<<(std::ostream& os, const Expr& e);

// Maps maximal non-rational subtrees (exp, ln, integrals, fractional powers)
// to fresh placeholder variables so rational-function algorithms can run on
// mixed expressions.  Placeholders are registered once per subtree per table.
class AtomTable {
public:
    VarId intern(const Expr& e);
    const Expr& expr_of(VarId v) const;
    bool is_atom(VarId v) const;
    const std::vector<std::pair<Expr, VarId>>& atoms() const { return atoms_; }

    Expr restore(const Expr& e) const;     // substitute placeholders back
    Expr restore_poly(const Poly& p) const;
    Expr restore_ratfunc(const RatFunc& f) const;

private:
    std::vector<std::pair<Expr, VarId>> atoms_;
};

// Rewrites e as a rational function of real variables and table placeholders.
RatFunc rational_collect(const Expr& e, AtomTable& table);

// Shortcut when e is expected to be rational in the real variables already;
// returns nothing if inert or transcendental nodes remain.
std::optional<RatFunc> as_ratfunc(const Expr& e);

} // namespace sfint
