#include "sfint/poly.hpp"

#include <algorithm>
#include <sstream>

namespace sfint {

Mono Mono::var(VarId v, int e) {
    Mono m;
    if (e != 0) m.factors.emplace_back(v, e);
    return m;
}

int Mono::total_degree() const {
    int d = 0;
    for (auto& [v, e] : factors) d += e;
    return d;
}

int Mono::exponent_of(VarId v) const {
    for (auto& [w, e] : factors)
        if (w == v) return e;
    return 0;
}

Mono Mono::mul(const Mono& o) const {
    Mono r;
    r.factors.reserve(factors.size() + o.factors.size());
    size_t i = 0, j = 0;
    while (i < factors.size() || j < o.factors.size()) {
        if (j == o.factors.size()) r.factors.push_back(factors[i++]);
        else if (i == factors.size()) r.factors.push_back(o.factors[j++]);
        else {
            int c = var_order(factors[i].first, o.factors[j].first);
            if (c < 0) r.factors.push_back(factors[i++]);
            else if (c > 0) r.factors.push_back(o.factors[j++]);
            else {
                int e = factors[i].second + o.factors[j].second;
                if (e != 0) r.factors.emplace_back(factors[i].first, e);
                ++i, ++j;
            }
        }
    }
    return r;
}

std::optional<Mono> Mono::div(const Mono& o) const {
    Mono r;
    size_t i = 0, j = 0;
    while (i < factors.size() || j < o.factors.size()) {
        if (j == o.factors.size()) r.factors.push_back(factors[i++]);
        else if (i == factors.size()) return std::nullopt;
        else {
            int c = var_order(factors[i].first, o.factors[j].first);
            if (c < 0) r.factors.push_back(factors[i++]);
            else if (c > 0) return std::nullopt;
            else {
                int e = factors[i].second - o.factors[j].second;
                if (e < 0) return std::nullopt;
                if (e != 0) r.factors.emplace_back(factors[i].first, e);
                ++i, ++j;
            }
        }
    }
    return r;
}

Mono Mono::lcm(const Mono& o) const {
    Mono r;
    size_t i = 0, j = 0;
    while (i < factors.size() || j < o.factors.size()) {
        if (j == o.factors.size()) r.factors.push_back(factors[i++]);
        else if (i == factors.size()) r.factors.push_back(o.factors[j++]);
        else {
            int c = var_order(factors[i].first, o.factors[j].first);
            if (c < 0) r.factors.push_back(factors[i++]);
            else if (c > 0) r.factors.push_back(o.factors[j++]);
            else {
                r.factors.emplace_back(factors[i].first,
                                       std::max(factors[i].second, o.factors[j].second));
                ++i, ++j;
            }
        }
    }
    return r;
}

bool Mono::coprime_with(const Mono& o) const {
    size_t i = 0, j = 0;
    while (i < factors.size() && j < o.factors.size()) {
        int c = var_order(factors[i].first, o.factors[j].first);
        if (c < 0) ++i;
        else if (c > 0) ++j;
        else return false;
    }
    return true;
}

std::string Mono::to_string() const {
    if (factors.empty()) return "1";
    std::ostringstream os;
    bool first = true;
    for (auto& [v, e] : factors) {
        if (!first) os << "*";
        first = false;
        os << var_name(v);
        if (e != 1) os << "^" << e;
    }
    return os.str();
}

int mono_cmp(const Mono& a, const Mono& b, MonoOrder ord) {
    if (ord == MonoOrder::GrLex) {
        int da = a.total_degree(), db = b.total_degree();
        if (da != db) return da < db ? -1 : 1;
    }
    // Lexicographic walk over the merged variable sequence: the first
    // variable (most significant) where exponents differ decides; a higher
    // exponent on a more significant variable makes the monomial larger.
    size_t i = 0, j = 0;
    while (i < a.factors.size() || j < b.factors.size()) {
        if (i == a.factors.size()) return -1; // b has a significant var a lacks
        if (j == b.factors.size()) return 1;
        int c = var_order(a.factors[i].first, b.factors[j].first);
        if (c < 0) return 1;  // a has the more significant variable
        if (c > 0) return -1;
        if (a.factors[i].second != b.factors[j].second)
            return a.factors[i].second < b.factors[j].second ? -1 : 1;
        ++i, ++j;
    }
    return 0;
}

Poly::Poly(const Rat& c) {
    if (!c.is_zero()) terms_.emplace(Mono::one(), c);
}

Poly Poly::variable(VarId v, int e) {
    Poly p;
    if (e == 0) return Poly(Rat(1));
    p.terms_.emplace(Mono::var(v, e), Rat(1));
    return p;
}

Poly Poly::term(const Mono& m, const Rat& c) {
    Poly p;
    if (!c.is_zero()) p.terms_.emplace(m, c);
    return p;
}

Poly Poly::from_terms(TermMap t) {
    Poly p;
    p.terms_ = std::move(t);
    for (auto it = p.terms_.begin(); it != p.terms_.end();)
        it = it->second.is_zero() ? p.terms_.erase(it) : std::next(it);
    return p;
}

bool Poly::is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

Rat Poly::constant_value() const {
    if (terms_.empty()) return Rat(0);
    return terms_.begin()->second;
}

int Poly::total_degree() const {
    if (terms_.empty()) return -1;
    return terms_.begin()->first.total_degree();
}

int Poly::degree_in(VarId v) const {
    int d = 0;
    for (auto& [m, c] : terms_) d = std::max(d, m.exponent_of(v));
    return d;
}

std::vector<VarId> Poly::vars() const {
    std::vector<VarId> vs;
    for (auto& [m, c] : terms_)
        for (auto& [v, e] : m.factors)
            if (std::find(vs.begin(), vs.end(), v) == vs.end()) vs.push_back(v);
    std::sort(vs.begin(), vs.end(), [](VarId a, VarId b) { return var_order(a, b) < 0; });
    return vs;
}

bool Poly::contains_var(VarId v) const {
    for (auto& [m, c] : terms_)
        if (m.exponent_of(v) > 0) return true;
    return false;
}

void Poly::add_term(const Mono& m, const Rat& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) terms_.erase(it);
    }
}

Poly Poly::operator-() const {
    Poly r;
    for (auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly poly_add_scaled(const Poly& a, const Poly& b, const Rat& s) {
    Poly r = a;
    for (auto& [m, c] : b.terms()) r.add_term(m, c * s);
    return r;
}

Poly Poly::operator+(const Poly& o) const { return poly_add_scaled(*this, o, Rat(1)); }
Poly Poly::operator-(const Poly& o) const { return poly_add_scaled(*this, o, Rat(-1)); }

Poly Poly::operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    Poly r;
    // iterate over the smaller operand outside
    const Poly& small = terms_.size() <= o.terms_.size() ? *this : o;
    const Poly& big = terms_.size() <= o.terms_.size() ? o : *this;
    for (auto& [ms, cs] : small.terms_)
        for (auto& [mb, cb] : big.terms_) r.add_term(ms.mul(mb), cs * cb);
    return r;
}

Poly Poly::scaled(const Rat& c) const {
    if (c.is_zero()) return Poly();
    Poly r;
    for (auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

Poly operator*(const Rat& c, const Poly& p) { return p.scaled(c); }

Poly Poly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("Poly::pow negative exponent");
    Poly r(Rat(1));
    Poly base = *this;
    while (e > 0) {
        if (e & 1) r = r * base;
        base = e > 1 ? base * base : base;
        e >>= 1;
    }
    return r;
}

Poly Poly::derivative(VarId v) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        int e = m.exponent_of(v);
        if (e == 0) continue;
        Mono dm;
        for (auto& [w, k] : m.factors) {
            int nk = (w == v) ? k - 1 : k;
            if (nk != 0) dm.factors.emplace_back(w, nk);
        }
        r.add_term(dm, c * Rat(e));
    }
    return r;
}

const Mono& Poly::leading_mono(MonoOrder ord) const {
    if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
    if (ord == MonoOrder::GrLex) return terms_.begin()->first;
    const Mono* best = &terms_.begin()->first;
    for (auto& [m, c] : terms_)
        if (mono_cmp(m, *best, MonoOrder::Lex) > 0) best = &m;
    return *best;
}

Rat Poly::leading_coeff(MonoOrder ord) const {
    return terms_.at(leading_mono(ord));
}

Poly Poly::coeff_of(VarId v, int k) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        if (m.exponent_of(v) != k) continue;
        Mono rm;
        for (auto& [w, e] : m.factors)
            if (w != v) rm.factors.emplace_back(w, e);
        r.add_term(rm, c);
    }
    return r;
}

std::map<Mono, Poly, MonoGrLexDesc> Poly::collect(const std::vector<VarId>& vars) const {
    std::map<Mono, Poly, MonoGrLexDesc> out;
    for (auto& [m, c] : terms_) {
        Mono key, rest;
        for (auto& [v, e] : m.factors) {
            if (std::find(vars.begin(), vars.end(), v) != vars.end())
                key.factors.emplace_back(v, e);
            else
                rest.factors.emplace_back(v, e);
        }
        out[key].add_term(rest, c);
    }
    return out;
}

Poly Poly::substitute(VarId v, const Poly& value) const {
    // Horner over the univariate view keeps intermediate blowup down.
    if (!contains_var(v)) return *this;
    auto coeffs = to_univariate(*this, v);
    Poly r;
    for (size_t i = coeffs.size(); i-- > 0;) r = r * value + coeffs[i];
    return r;
}

Rat Poly::eval(const std::map<VarId, Rat>& point) const {
    Rat total(0);
    for (auto& [m, c] : terms_) {
        Rat t = c;
        for (auto& [v, e] : m.factors) {
            auto it = point.find(v);
            if (it == point.end()) throw std::invalid_argument("eval: unbound variable " + var_name(v));
            t *= it->second.pow(e);
        }
        total += t;
    }
    return total;
}

Poly Poly::eval_partial(const std::map<VarId, Rat>& point) const {
    Poly r;
    for (auto& [m, c] : terms_) {
        Rat coef = c;
        Mono rest;
        for (auto& [v, e] : m.factors) {
            auto it = point.find(v);
            if (it == point.end()) rest.factors.emplace_back(v, e);
            else coef *= it->second.pow(e);
        }
        r.add_term(rest, coef);
    }
    return r;
}

Rat Poly::content() const {
    Rat g(0);
    for (auto& [m, c] : terms_) g = Rat::content_gcd(g, c);
    return g;
}

std::pair<Rat, Poly> Poly::primitive() const {
    if (is_zero()) return {Rat(0), Poly()};
    Rat c = content();
    if (leading_coeff() < Rat(0)) c = -c;
    Poly p;
    for (auto& [m, k] : terms_) p.terms_.emplace(m, k / c);
    return {c, p};
}

std::string Poly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto& [m, c] : terms_) {
        Rat a = c;
        if (first) {
            if (a.sign() < 0) { os << "-"; a = -a; }
        } else {
            os << (a.sign() < 0 ? " - " : " + ");
            if (a.sign() < 0) a = -a;
        }
        first = false;
        if (m.is_one()) os << a.to_string();
        else {
            if (!a.is_one()) {
                if (a.is_integer()) os << a.to_string() << "*";
                else os << "(" << a.to_string() << ")*";
            }
            os << m.to_string();
        }
    }
    return os.str();
}

std::vector<Poly> to_univariate(const Poly& p, VarId v) {
    int d = p.degree_in(v);
    std::vector<Poly> coeffs(static_cast<size_t>(d + 1));
    for (int k = 0; k <= d; ++k) coeffs[static_cast<size_t>(k)] = p.coeff_of(v, k);
    return coeffs;
}

Poly from_univariate(const std::vector<Poly>& coeffs, VarId v) {
    Poly r;
    for (size_t i = 0; i < coeffs.size(); ++i)
        r = r + coeffs[i] * Poly::variable(v, static_cast<int>(i));
    return r;
}

} // namespace sfint
