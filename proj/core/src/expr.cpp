#include "sfint/expr.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>

namespace sfint {

struct Expr::Node {
    ExprKind kind;
    Rat value;       // Num
    VarId var = -1;  // Var, Integral
    Rat exponent;    // Pow
    std::vector<Expr> kids;
};

namespace {

int kind_rank(ExprKind k) { return static_cast<int>(k); }

int rat_cmp(const Rat& a, const Rat& b) {
    if (a < b) return -1;
    if (b < a) return 1;
    return 0;
}

} // namespace

int expr_cmp(const Expr& a, const Expr& b) {
    if (a.n_ == b.n_) return 0;
    int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
    if (ra != rb) return ra < rb ? -1 : 1;
    switch (a.kind()) {
    case ExprKind::Num:
        return rat_cmp(a.value(), b.value());
    case ExprKind::Var: {
        int c = var_order(a.var_id(), b.var_id());
        if (c) return c;
        return a.var_id() < b.var_id() ? -1 : (a.var_id() > b.var_id() ? 1 : 0);
    }
    case ExprKind::Pow: {
        int c = expr_cmp(a.child(0), b.child(0));
        if (c) return c;
        return rat_cmp(a.exponent(), b.exponent());
    }
    case ExprKind::Mul:
    case ExprKind::Add: {
        if (a.child_count() != b.child_count())
            return a.child_count() < b.child_count() ? -1 : 1;
        for (size_t i = 0; i < a.child_count(); ++i) {
            int c = expr_cmp(a.child(i), b.child(i));
            if (c) return c;
        }
        return 0;
    }
    case ExprKind::Exp:
    case ExprKind::Ln:
        return expr_cmp(a.child(0), b.child(0));
    case ExprKind::Integral: {
        int c = var_order(a.var_id(), b.var_id());
        if (c) return c;
        if (a.var_id() != b.var_id()) return a.var_id() < b.var_id() ? -1 : 1;
        return expr_cmp(a.child(0), b.child(0));
    }
    }
    return 0;
}

ExprKind Expr::kind() const { return n_->kind; }
const Rat& Expr::value() const { return n_->value; }
VarId Expr::var_id() const { return n_->var; }
const Rat& Expr::exponent() const { return n_->exponent; }
size_t Expr::child_count() const { return n_->kids.size(); }
const Expr& Expr::child(size_t i) const { return n_->kids[i]; }

Expr Expr::num(const Rat& r) {
    Node n;
    n.kind = ExprKind::Num;
    n.value = r;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::var(VarId v) {
    Node n;
    n.kind = ExprKind::Var;
    n.var = v;
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::pow(const Expr& base, const Rat& e) {
    if (e.is_zero()) return num(Rat(1));
    if (e.is_one()) return base;
    if (base.is_num()) {
        const Rat& b = base.value();
        if (b.is_zero()) {
            if (e.sign() < 0) throw DivisionByZero("zero base with negative exponent");
            return num(Rat(0));
        }
        if (b.is_one()) return num(Rat(1));
        if (e.is_integer()) {
            long ei = mpz_get_si(e.num().get_mpz_t());
            return num(b.pow(ei));
        }
        // try an exact rational q-th root
        if (b.sign() > 0) {
            unsigned long q = mpz_get_ui(e.den().get_mpz_t());
            mpz_class rn, rd;
            if (mpz_root(rn.get_mpz_t(), b.num().get_mpz_t(), q) &&
                mpz_root(rd.get_mpz_t(), b.den().get_mpz_t(), q)) {
                long p = mpz_get_si(e.num().get_mpz_t());
                return num(Rat(rn, rd).pow(p));
            }
        }
    }
    if (base.kind() == ExprKind::Pow) {
        const Rat& inner = base.exponent();
        bool even_inner = inner.is_integer() && mpz_even_p(inner.num().get_mpz_t());
        if (!(even_inner && !e.is_integer()))
            return pow(base.child(0), inner * e);
    }
    if (base.kind() == ExprKind::Exp) {
        return exp(mul({num(e), base.child(0)}));
    }
    if (base.kind() == ExprKind::Mul && e.is_integer()) {
        std::vector<Expr> fs;
        fs.reserve(base.child_count());
        for (size_t i = 0; i < base.child_count(); ++i) fs.push_back(pow(base.child(i), e));
        return mul(std::move(fs));
    }
    Node n;
    n.kind = ExprKind::Pow;
    n.exponent = e;
    n.kids = {base};
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::exp(const Expr& arg) {
    if (arg.is_zero()) return num(Rat(1));
    if (arg.kind() == ExprKind::Ln) return arg.child(0);
    if (arg.kind() == ExprKind::Mul && arg.child_count() == 2 && arg.child(0).is_num() &&
        arg.child(1).kind() == ExprKind::Ln)
        return pow(arg.child(1).child(0), arg.child(0).value());
    Node n;
    n.kind = ExprKind::Exp;
    n.kids = {arg};
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::ln(const Expr& arg) {
    if (arg.is_one()) return num(Rat(0));
    if (arg.kind() == ExprKind::Exp) return arg.child(0);
    Node n;
    n.kind = ExprKind::Ln;
    n.kids = {arg};
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::integral(const Expr& kernel, VarId v) {
    if (kernel.is_zero()) return num(Rat(0));
    Node n;
    n.kind = ExprKind::Integral;
    n.var = v;
    n.kids = {kernel};
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::mul(std::vector<Expr> factors) {
    Rat coeff(1);
    std::map<Expr, Rat, ExprLess> pows;
    std::vector<Expr> expargs;
    std::vector<Expr> work = std::move(factors);
    for (size_t i = 0; i < work.size(); ++i) {
        Expr f = work[i];
        switch (f.kind()) {
        case ExprKind::Num:
            coeff *= f.value();
            break;
        case ExprKind::Mul:
            for (size_t k = 0; k < f.child_count(); ++k) work.push_back(f.child(k));
            break;
        case ExprKind::Exp:
            expargs.push_back(f.child(0));
            break;
        case ExprKind::Pow:
            pows[f.child(0)] += f.exponent();
            break;
        default:
            pows[f] += Rat(1);
            break;
        }
    }
    if (coeff.is_zero()) return num(Rat(0));

    std::optional<Expr> exp_factor;
    if (!expargs.empty()) {
        Expr m = exp(add(std::move(expargs)));
        if (m.kind() == ExprKind::Exp) {
            exp_factor = m;
        } else if (m.is_num()) {
            coeff *= m.value();
        } else {
            // exp collapsed into something structural; fold it back in
            std::vector<Expr> redo;
            redo.push_back(num(coeff));
            redo.push_back(m);
            for (auto& [b, e] : pows) redo.push_back(pow(b, e));
            return mul(std::move(redo));
        }
    }

    std::vector<Expr> out;
    std::vector<Expr> reinject;
    for (auto& [b, e] : pows) {
        if (e.is_zero()) continue;
        Expr pe = pow(b, e);
        if (pe.is_num())
            coeff *= pe.value();
        else if (pe.kind() == ExprKind::Mul)
            reinject.push_back(pe);
        else if (pe.kind() == ExprKind::Exp) {
            if (exp_factor)
                reinject.push_back(pe);
            else
                exp_factor = pe;
        } else
            out.push_back(pe);
    }
    if (!reinject.empty()) {
        reinject.push_back(num(coeff));
        if (exp_factor) reinject.push_back(*exp_factor);
        for (auto& f : out) reinject.push_back(f);
        return mul(std::move(reinject));
    }
    if (exp_factor) out.push_back(*exp_factor);
    if (coeff.is_zero()) return num(Rat(0));
    if (out.empty()) return num(coeff);

    // push a plain numeric coefficient into a lone sum so sums can cancel
    if (out.size() == 1 && out[0].kind() == ExprKind::Add && !coeff.is_one()) {
        std::vector<Expr> terms;
        terms.reserve(out[0].child_count());
        for (size_t i = 0; i < out[0].child_count(); ++i)
            terms.push_back(mul({num(coeff), out[0].child(i)}));
        return add(std::move(terms));
    }

    std::sort(out.begin(), out.end(), ExprLess{});
    if (out.size() == 1 && coeff.is_one()) return out[0];
    Node n;
    n.kind = ExprKind::Mul;
    if (!coeff.is_one()) n.kids.push_back(num(coeff));
    for (auto& f : out) n.kids.push_back(std::move(f));
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::add(std::vector<Expr> terms) {
    Rat constant(0);
    std::map<Expr, Rat, ExprLess> coefs;
    std::vector<Expr> work = std::move(terms);
    for (size_t i = 0; i < work.size(); ++i) {
        Expr t = work[i];
        switch (t.kind()) {
        case ExprKind::Num:
            constant += t.value();
            break;
        case ExprKind::Add:
            for (size_t k = 0; k < t.child_count(); ++k) work.push_back(t.child(k));
            break;
        case ExprKind::Mul:
            if (t.child(0).is_num()) {
                Rat c = t.child(0).value();
                Expr rest = [&] {
                    if (t.child_count() == 2) return t.child(1);
                    Node n;
                    n.kind = ExprKind::Mul;
                    for (size_t k = 1; k < t.child_count(); ++k) n.kids.push_back(t.child(k));
                    return Expr(std::make_shared<const Node>(std::move(n)));
                }();
                coefs[rest] += c;
            } else {
                coefs[t] += Rat(1);
            }
            break;
        default:
            coefs[t] += Rat(1);
            break;
        }
    }
    std::vector<Expr> out;
    for (auto it = coefs.rbegin(); it != coefs.rend(); ++it) {
        if (it->second.is_zero()) continue;
        if (it->second.is_one())
            out.push_back(it->first);
        else
            out.push_back(mul({num(it->second), it->first}));
    }
    if (!constant.is_zero()) out.push_back(num(constant));
    if (out.empty()) return num(Rat(0));
    if (out.size() == 1) return out[0];
    Node n;
    n.kind = ExprKind::Add;
    n.kids = std::move(out);
    return Expr(std::make_shared<const Node>(std::move(n)));
}

Expr Expr::operator-() const { return mul({num(Rat(-1)), *this}); }
Expr Expr::operator-(const Expr& o) const { return add({*this, -o}); }
Expr Expr::operator/(const Expr& o) const { return mul({*this, pow(o, Rat(-1))}); }

Expr Expr::from_poly(const Poly& p) {
    std::vector<Expr> terms;
    for (auto& [m, c] : p.terms()) {
        std::vector<Expr> fs;
        fs.push_back(num(c));
        for (auto& [v, e] : m.factors) fs.push_back(pow(var(v), Rat(e)));
        terms.push_back(mul(std::move(fs)));
    }
    return add(std::move(terms));
}

Expr Expr::from_ratfunc(const RatFunc& f) {
    if (f.is_polynomial()) return from_poly(f.num());
    return from_poly(f.num()) / from_poly(f.den());
}

Expr Expr::derivative(VarId v) const {
    switch (kind()) {
    case ExprKind::Num:
        return num(Rat(0));
    case ExprKind::Var:
        return num(Rat(var_id() == v ? 1 : 0));
    case ExprKind::Add: {
        std::vector<Expr> ds;
        for (size_t i = 0; i < child_count(); ++i) ds.push_back(child(i).derivative(v));
        return add(std::move(ds));
    }
    case ExprKind::Mul: {
        std::vector<Expr> sum;
        for (size_t i = 0; i < child_count(); ++i) {
            if (child(i).is_num()) continue;
            std::vector<Expr> fs;
            for (size_t k = 0; k < child_count(); ++k)
                fs.push_back(k == i ? child(k).derivative(v) : child(k));
            sum.push_back(mul(std::move(fs)));
        }
        return add(std::move(sum));
    }
    case ExprKind::Pow:
        return mul({num(exponent()), pow(child(0), exponent() - Rat(1)), child(0).derivative(v)});
    case ExprKind::Exp:
        return mul({child(0).derivative(v), *this});
    case ExprKind::Ln:
        return mul({child(0).derivative(v), pow(child(0), Rat(-1))});
    case ExprKind::Integral:
        if (var_id() == v) return child(0);
        return integral(child(0).derivative(v), var_id());
    }
    return num(Rat(0));
}

Expr Expr::substitute(VarId v, const Expr& val) const {
    if (!contains_var(v)) return *this;
    switch (kind()) {
    case ExprKind::Num:
        return *this;
    case ExprKind::Var:
        return var_id() == v ? val : *this;
    case ExprKind::Add:
    case ExprKind::Mul: {
        std::vector<Expr> ks;
        for (size_t i = 0; i < child_count(); ++i) ks.push_back(child(i).substitute(v, val));
        return kind() == ExprKind::Add ? add(std::move(ks)) : mul(std::move(ks));
    }
    case ExprKind::Pow:
        return pow(child(0).substitute(v, val), exponent());
    case ExprKind::Exp:
        return exp(child(0).substitute(v, val));
    case ExprKind::Ln:
        return ln(child(0).substitute(v, val));
    case ExprKind::Integral:
        if (var_id() == v)
            throw std::logic_error("cannot substitute the variable of an inert integral");
        if (val.contains_var(var_id()))
            throw std::logic_error("substitution would capture an integration variable");
        return integral(child(0).substitute(v, val), var_id());
    }
    return *this;
}

namespace {

void collect_vars(const Expr& e, std::vector<VarId>& out) {
    switch (e.kind()) {
    case ExprKind::Num:
        return;
    case ExprKind::Var:
        if (std::find(out.begin(), out.end(), e.var_id()) == out.end()) out.push_back(e.var_id());
        return;
    case ExprKind::Integral:
        if (std::find(out.begin(), out.end(), e.var_id()) == out.end()) out.push_back(e.var_id());
        collect_vars(e.child(0), out);
        return;
    default:
        for (size_t i = 0; i < e.child_count(); ++i) collect_vars(e.child(i), out);
    }
}

} // namespace

std::vector<VarId> Expr::free_vars() const {
    std::vector<VarId> out;
    collect_vars(*this, out);
    std::sort(out.begin(), out.end(), [](VarId a, VarId b) { return var_order(a, b) < 0; });
    return out;
}

bool Expr::contains_var(VarId v) const {
    switch (kind()) {
    case ExprKind::Num:
        return false;
    case ExprKind::Var:
        return var_id() == v;
    case ExprKind::Integral:
        if (var_id() == v) return true;
        return child(0).contains_var(v);
    default:
        for (size_t i = 0; i < child_count(); ++i)
            if (child(i).contains_var(v)) return true;
        return false;
    }
}

bool Expr::contains_kind(ExprKind k) const {
    if (kind() == k) return true;
    for (size_t i = 0; i < child_count(); ++i)
        if (child(i).contains_kind(k)) return true;
    return false;
}

bool Expr::operator==(const Expr& o) const { return expr_cmp(*this, o) == 0; }

// ---- printing ----

namespace {

struct Rendered {
    std::string s;
    int prec; // 1 sum or signed, 2 product, 3 power, 4 atom
};

Rendered render(const Expr& e);

std::string wrap_if(const Rendered& r, int min_prec) {
    if (r.prec >= min_prec) return r.s;
    return "(" + r.s + ")";
}

Rendered render_product(const Rat& coeff, const std::vector<std::pair<Expr, Rat>>& parts) {
    std::vector<std::string> nums, dens;
    mpz_class cn = coeff.num(), cd = coeff.den();
    bool neg = coeff.sign() < 0;
    if (neg) cn = -cn;
    auto piece = [](const Expr& base, const Rat& e) {
        Rendered rb = render(base);
        if (e.is_one()) return wrap_if(rb, 2);
        std::string bs = wrap_if(rb, 4);
        std::string es;
        if (e.is_integer() && e.sign() > 0)
            es = e.to_string();
        else
            es = "(" + e.to_string() + ")";
        return bs + "^" + es;
    };
    for (auto& [b, e] : parts) {
        if (e.sign() > 0)
            nums.push_back(piece(b, e));
        else
            dens.push_back(piece(b, -e));
    }
    if (cn != 1 || nums.empty()) nums.insert(nums.begin(), cn.get_str());
    if (cd != 1) dens.insert(dens.begin(), cd.get_str());
    std::string ns;
    for (size_t i = 0; i < nums.size(); ++i) ns += (i ? "*" : "") + nums[i];
    std::string s;
    if (dens.empty()) {
        s = ns;
    } else if (dens.size() == 1) {
        s = ns + "/" + dens[0];
    } else {
        std::string ds;
        for (size_t i = 0; i < dens.size(); ++i) ds += (i ? "*" : "") + dens[i];
        s = ns + "/(" + ds + ")";
    }
    if (neg) return {"-" + s, 1};
    bool bare = dens.empty() && nums.size() == 1 && (cn == 1 && !parts.empty());
    if (bare) {
        // lone factor: keep its own precedence
        return {s, parts[0].second.is_one() ? render(parts[0].first).prec : 3};
    }
    return {s, 2};
}

Rendered render(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Num: {
        const Rat& r = e.value();
        std::string s = r.to_string();
        int prec = (r.is_integer() && r.sign() >= 0) ? 4 : 1;
        return {s, prec};
    }
    case ExprKind::Var:
        return {var_name(e.var_id()), 4};
    case ExprKind::Add: {
        std::string s;
        for (size_t i = 0; i < e.child_count(); ++i) {
            Rendered r = render(e.child(i));
            if (i == 0)
                s = r.s;
            else if (!r.s.empty() && r.s[0] == '-')
                s += " - " + r.s.substr(1);
            else
                s += " + " + r.s;
        }
        return {s, 1};
    }
    case ExprKind::Mul: {
        Rat coeff(1);
        std::vector<std::pair<Expr, Rat>> parts;
        for (size_t i = 0; i < e.child_count(); ++i) {
            const Expr& k = e.child(i);
            if (k.is_num())
                coeff = k.value();
            else if (k.kind() == ExprKind::Pow)
                parts.push_back({k.child(0), k.exponent()});
            else
                parts.push_back({k, Rat(1)});
        }
        return render_product(coeff, parts);
    }
    case ExprKind::Pow:
        return render_product(Rat(1), {{e.child(0), e.exponent()}});
    case ExprKind::Exp:
        return {"exp(" + render(e.child(0)).s + ")", 4};
    case ExprKind::Ln:
        return {"ln(" + render(e.child(0)).s + ")", 4};
    case ExprKind::Integral:
        return {"Integral(" + render(e.child(0)).s + ", " + var_name(e.var_id()) + ")", 4};
    }
    return {"?", 4};
}

} // namespace

std::string Expr::to_string() const { return render(*this).s; }

std::ostream& operator<<(std::ostream& os, const Expr& e) { return os << e.to_string(); }

// ---- rational collection ----

VarId AtomTable::intern(const Expr& e) {
    for (auto& [expr, v] : atoms_)
        if (expr_cmp(expr, e) == 0) return v;
    static std::atomic<long> counter{0};
    long id = counter.fetch_add(1);
    VarId v = var_id("$a" + std::to_string(id));
    atoms_.push_back({e, v});
    return v;
}

const Expr& AtomTable::expr_of(VarId v) const {
    for (auto& [expr, av] : atoms_)
        if (av == v) return expr;
    throw std::logic_error("unknown placeholder variable");
}

bool AtomTable::is_atom(VarId v) const {
    for (auto& [expr, av] : atoms_)
        if (av == v) return true;
    return false;
}

Expr AtomTable::restore(const Expr& e) const {
    Expr out = e;
    for (auto& [expr, v] : atoms_)
        if (out.contains_var(v)) out = out.substitute(v, expr);
    return out;
}

Expr AtomTable::restore_poly(const Poly& p) const { return restore(Expr::from_poly(p)); }

Expr AtomTable::restore_ratfunc(const RatFunc& f) const { return restore(Expr::from_ratfunc(f)); }

RatFunc rational_collect(const Expr& e, AtomTable& table) {
    switch (e.kind()) {
    case ExprKind::Num:
        return RatFunc(e.value());
    case ExprKind::Var:
        return RatFunc::variable(e.var_id());
    case ExprKind::Add: {
        RatFunc acc;
        for (size_t i = 0; i < e.child_count(); ++i) acc += rational_collect(e.child(i), table);
        return acc;
    }
    case ExprKind::Mul: {
        RatFunc acc(Rat(1));
        for (size_t i = 0; i < e.child_count(); ++i) acc *= rational_collect(e.child(i), table);
        return acc;
    }
    case ExprKind::Pow: {
        const Rat& ex = e.exponent();
        if (ex.is_integer() && mpz_fits_slong_p(ex.num().get_mpz_t())) {
            long k = mpz_get_si(ex.num().get_mpz_t());
            return rational_collect(e.child(0), table).pow(k);
        }
        return RatFunc::variable(table.intern(e));
    }
    case ExprKind::Exp:
    case ExprKind::Ln:
    case ExprKind::Integral:
        return RatFunc::variable(table.intern(e));
    }
    return RatFunc();
}

std::optional<RatFunc> as_ratfunc(const Expr& e) {
    AtomTable t;
    RatFunc f = rational_collect(e, t);
    if (!t.atoms().empty()) return std::nullopt;
    return f;
}

} // namespace sfint
