#include "sfint/parse.hpp"

#include <cctype>

namespace sfint {

namespace {

class Parser {
public:
    explicit Parser(const std::string& text) : s_(text) {}

    Expr run() {
        Expr e = sum();
        skip_ws();
        if (pos_ != s_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    const std::string& s_;
    size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) { throw ParseError(msg, pos_); }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    Expr sum() {
        Expr e = product();
        while (true) {
            if (eat('+'))
                e = e + product();
            else if (eat('-'))
                e = e - product();
            else
                return e;
        }
    }

    Expr product() {
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        Expr e = power();
        while (true) {
            if (eat('*')) {
                e = e * signed_power();
            } else if (eat('/')) {
                e = e / signed_power();
            } else {
                break;
            }
        }
        return neg ? -e : e;
    }

    Expr signed_power() {
        bool neg = false;
        while (true) {
            if (eat('-'))
                neg = !neg;
            else if (eat('+'))
                ;
            else
                break;
        }
        Expr e = power();
        return neg ? -e : e;
    }

    Expr power() {
        Expr base = primary();
        if (eat('^')) {
            Expr e = signed_power(); // right associative
            if (!e.is_num()) fail("exponent must be a rational constant");
            return Expr::pow(base, e.value());
        }
        return base;
    }

    Expr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (c == '(') {
            ++pos_;
            Expr e = sum();
            if (!eat(')')) fail("expected ')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') return name();
        fail("unexpected character");
    }

    Expr number() {
        size_t start = pos_;
        while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        if (pos_ < s_.size() && s_[pos_] == '.') {
            ++pos_;
            size_t frac_start = pos_;
            while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
            std::string whole = s_.substr(start, frac_start - 1 - start);
            std::string frac = s_.substr(frac_start, pos_ - frac_start);
            if (whole.empty() && frac.empty()) fail("malformed number");
            mpz_class num(whole.empty() ? "0" : whole);
            mpz_class den(1);
            for (char d : frac) {
                num = num * 10 + (d - '0');
                den *= 10;
            }
            return Expr::num(Rat(num, den));
        }
        if (start == pos_) fail("malformed number");
        return Expr::num(Rat(mpz_class(s_.substr(start, pos_ - start))));
    }

    Expr name() {
        size_t start = pos_;
        while (pos_ < s_.size()) {
            char c = s_[pos_];
            if (std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$')
                ++pos_;
            else
                break;
        }
        std::string id = s_.substr(start, pos_ - start);
        if (peek() == '(') {
            if (id == "exp") return Expr::exp(call_arg());
            if (id == "ln") return Expr::ln(call_arg());
            if (id == "Integral") {
                if (!eat('(')) fail("expected '('");
                Expr kernel = sum();
                if (!eat(',')) fail("expected ','");
                skip_ws();
                size_t vstart = pos_;
                Expr v = name();
                if (v.kind() != ExprKind::Var) throw ParseError("expected a variable", vstart);
                if (!eat(')')) fail("expected ')'");
                return Expr::integral(kernel, v.var_id());
            }
            fail("unknown function '" + id + "'");
        }
        return Expr::var(var_id(id));
    }

    Expr call_arg() {
        if (!eat('(')) fail("expected '('");
        Expr e = sum();
        if (!eat(')')) fail("expected ')'");
        return e;
    }
};

} // namespace

Expr parse_expr(const std::string& text) { return Parser(text).run(); }

Poly parse_poly(const std::string& text) {
    RatFunc f = parse_ratfunc(text);
    if (!f.is_polynomial()) throw ParseError("expected a polynomial", 0);
    return f.num();
}

RatFunc parse_ratfunc(const std::string& text) {
    Expr e = parse_expr(text);
    auto f = as_ratfunc(e);
    if (!f) throw ParseError("expected a rational expression", 0);
    return *f;
}

} // namespace sfint
