#include "gnum/dsl.hpp"

#include <cctype>
#include <vector>

namespace gnum {

namespace {

class Cursor {
  public:
    explicit Cursor(const std::string& text) : s_(text) {}

    std::size_t pos() const { return i_; }
    void skip_ws() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool done() {
        skip_ws();
        return i_ >= s_.size();
    }
    char peek() {
        skip_ws();
        return i_ < s_.size() ? s_[i_] : '\0';
    }
    bool try_eat(char c) {
        skip_ws();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void eat(char c) {
        if (!try_eat(c)) fail(std::string("expected '") + c + "'");
    }
    bool try_eat_word(const std::string& w) {
        skip_ws();
        if (s_.compare(i_, w.size(), w) == 0) {
            i_ += w.size();
            return true;
        }
        return false;
    }
    void eat_word(const std::string& w) {
        if (!try_eat_word(w)) fail("expected '" + w + "'");
    }
    [[noreturn]] void fail(const std::string& what) { throw parse_error(what, i_); }

    Int integer() {
        skip_ws();
        std::size_t start = i_;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
        std::size_t digits = i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (i_ == digits) {
            i_ = start;
            fail("expected integer");
        }
        return Int(s_.substr(start, i_ - start));
    }

    Rat rational() {
        std::size_t start = pos();
        Int num = integer();
        if (try_eat('/')) {
            std::size_t den_pos = pos();
            Int den = integer();
            if (den == 0) throw parse_error("zero denominator", den_pos);
            (void)start;
            return Rat(num, den);
        }
        return Rat(num);
    }

  private:
    const std::string& s_;
    std::size_t i_ = 0;
};

Mask parse_mask(Cursor& c) {
    c.eat_word("mod");
    c.eat('(');
    std::size_t mod_pos = c.pos();
    Int mod = c.integer();
    if (mod < 1) throw parse_error("mask modulus must be positive", mod_pos);
    std::vector<long> rs;
    do {
        c.eat(',');
        rs.push_back(static_cast<long>(c.integer()));
    } while (c.peek() == ',');
    c.eat(')');
    return Mask(static_cast<long>(mod), rs);
}

Term parse_term(Cursor& c) {
    Rat coeff(1), exponent(0);
    bool have_exp = false;
    if (c.peek() == 'e') {
        have_exp = true;
    } else {
        coeff = c.rational();
        if (c.try_eat('*')) {
            have_exp = true;
        }
    }
    if (have_exp) {
        c.eat_word("e");
        c.eat('^');
        c.eat('(');
        exponent = c.rational();
        c.eat(')');
    }
    Mask m = Mask::all();
    if (c.try_eat('@')) m = parse_mask(c);
    return Term(GaussRat(coeff), exponent, m);
}

NormalForm parse_expr(Cursor& c) {
    std::vector<Term> terms;
    terms.push_back(parse_term(c));
    while (true) {
        bool neg;
        if (c.try_eat('+'))
            neg = false;
        else if (c.try_eat('-'))
            neg = true;
        else
            break;
        Term t = parse_term(c);
        if (neg) t.coeff = -t.coeff;
        terms.push_back(std::move(t));
    }
    return NormalForm::from_terms(terms);
}

CNetPtr parse_net(Cursor& c);

NormalForm parse_expr_until(Cursor& c, char stop) {
    NormalForm x = parse_expr(c);
    if (c.peek() != stop) c.fail(std::string("expected '") + stop + "'");
    return x;
}

CNetPtr parse_net(Cursor& c) {
    if (c.try_eat_word("const")) {
        c.eat('(');
        Rat q = c.rational();
        c.eat(')');
        return CNet::constant(q);
    }
    if (c.try_eat_word("power")) {
        c.eat('(');
        Rat a = c.rational();
        c.eat(')');
        return CNet::power(a);
    }
    if (c.try_eat_word("scale")) {
        c.eat('(');
        Rat q = c.rational();
        c.eat(',');
        CNetPtr k = parse_net(c);
        c.eat(')');
        return CNet::scale(q, k);
    }
    auto binary = [&c](CNetPtr (*make)(CNetPtr, CNetPtr)) {
        c.eat('(');
        CNetPtr a = parse_net(c);
        c.eat(',');
        CNetPtr b = parse_net(c);
        c.eat(')');
        return make(std::move(a), std::move(b));
    };
    if (c.try_eat_word("sum")) return binary(&CNet::sum);
    if (c.try_eat_word("prod")) return binary(&CNet::prod);
    if (c.try_eat_word("min")) return binary(&CNet::min_of);
    if (c.try_eat_word("max")) return binary(&CNet::max_of);
    if (c.try_eat_word("env")) {
        c.eat('(');
        CNetPtr k = parse_net(c);
        c.eat(')');
        return CNet::envelope(k);
    }
    if (c.try_eat_word("switch")) {
        c.eat('(');
        long k0 = static_cast<long>(c.integer());
        c.eat(',');
        CNetPtr before = parse_net(c);
        c.eat(',');
        CNetPtr after = parse_net(c);
        c.eat(')');
        return CNet::switch_at(k0, before, after);
    }
    if (c.try_eat_word("absdiff")) {
        c.eat('(');
        NormalForm a = parse_expr_until(c, ';');
        c.eat(';');
        NormalForm b = parse_expr_until(c, ')');
        c.eat(')');
        return CNet::abs_diff(Representative(a), Representative(b));
    }
    c.fail("expected a net constructor");
}

}  // namespace

NormalForm parse_expression(const std::string& text) {
    Cursor c(text);
    NormalForm x = parse_expr(c);
    if (!c.done()) c.fail("trailing input");
    return x;
}

std::string print_expression(const NormalForm& x) {
    if (x.is_zero()) return "0";
    std::string out;
    bool first = true;
    for (const Term& t : x.terms()) {
        if (!t.coeff.is_real())
            throw std::invalid_argument("print_expression: non-real coefficient");
        Rat c = t.coeff.re;
        if (first) {
            out += rat_str(c);
            first = false;
        } else {
            out += c < 0 ? " - " : " + ";
            out += rat_str(rat_abs(c));
        }
        if (t.exponent != 0) out += " * e^(" + rat_str(t.exponent) + ")";
        if (!t.mask.is_all()) {
            out += " @ mod(" + std::to_string(t.mask.modulus());
            for (long r : t.mask.residues()) out += "," + std::to_string(r);
            out += ")";
        }
    }
    return out;
}

ValueNorm parse_norm(const std::string& text) {
    Cursor c(text);
    if (c.try_eat('0')) {
        if (!c.done()) c.fail("trailing input");
        return ValueNorm::zero();
    }
    c.eat_word("e");
    c.eat('^');
    c.eat('-');
    Rat rho = c.rational();
    if (!c.done()) c.fail("trailing input");
    return ValueNorm::exp_neg(rho);
}

CNetPtr parse_cnet(const std::string& text) {
    Cursor c(text);
    CNetPtr net = parse_net(c);
    if (!c.done()) c.fail("trailing input");
    return net;
}

}  // namespace gnum
