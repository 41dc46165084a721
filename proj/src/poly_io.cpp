#include "twistcert/poly_io.hpp"

#include "twistcert/errors.hpp"
#include "twistcert/rational_function.hpp"

#include <cctype>

namespace twistcert {

namespace {

class Parser {
public:
    Parser(std::string_view text, int nvars, const FieldSpec* field, bool t_as_variable)
        : text_(text), nvars_(nvars), field_(field), t_as_variable_(t_as_variable) {}

    MultiPoly parse() {
        skip_ws();
        if (pos_ == text_.size()) fail("empty polynomial");
        MultiPoly p = expr();
        skip_ws();
        if (pos_ != text_.size()) fail(std::string("unexpected character '") + text_[pos_] + "'");
        return p;
    }

private:
    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, pos_ + 1); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    MultiPoly expr() {
        bool negate = false;
        if (peek('-')) {
            negate = true;
            ++pos_;
        } else if (peek('+')) {
            ++pos_;
        }
        MultiPoly acc = term();
        if (negate) acc = -acc;
        while (true) {
            if (peek('+')) {
                ++pos_;
                acc += term();
            } else if (peek('-')) {
                ++pos_;
                acc -= term();
            } else {
                break;
            }
        }
        return acc;
    }

    MultiPoly term() {
        MultiPoly acc = power();
        while (peek('*')) {
            ++pos_;
            acc = acc * power();
        }
        return acc;
    }

    MultiPoly power() {
        MultiPoly base = atom();
        if (peek('^')) {
            ++pos_;
            skip_ws();
            const std::size_t start = pos_;
            const mpz_class e = integer();
            if (e > 65535) {
                pos_ = start;
                fail("exponent too large");
            }
            base = base.pow(static_cast<unsigned>(e.get_ui()));
        }
        return base;
    }

    mpz_class integer() {
        skip_ws();
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected an integer");
        return mpz_class(std::string(text_.substr(start, pos_ - start)));
    }

    MultiPoly atom() {
        skip_ws();
        if (pos_ == text_.size()) fail("unexpected end of input");
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            MultiPoly inner = expr();
            if (!peek(')')) fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            mpq_class value(integer());
            if (peek('/')) {
                ++pos_;
                const std::size_t at = pos_;
                const mpz_class den = integer();
                if (den == 0) {
                    pos_ = at;
                    fail("zero denominator");
                }
                value = mpq_class(value.get_num(), den);
                value.canonicalize();
            }
            return MultiPoly::constant(nvars_, Scalar(value), field_);
        }
        if (c == 't') {
            ++pos_;
            if (t_as_variable_) return MultiPoly::variable(nvars_, 0, field_);
            if (field_->is_rationals()) {
                --pos_;
                fail("generator 't' used over Q");
            }
            return MultiPoly::constant(nvars_, Scalar::generator(field_), field_);
        }
        if (c == 'x') {
            if (t_as_variable_) fail("variables are not allowed here");
            ++pos_;
            const std::size_t at = pos_;
            const mpz_class idx = integer();
            if (idx >= nvars_) {
                pos_ = at;
                fail("variable x" + idx.get_str() + " out of range (nvars = " + std::to_string(nvars_) + ")");
            }
            return MultiPoly::variable(nvars_, static_cast<int>(idx.get_si()), field_);
        }
        fail(std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
    int nvars_;
    const FieldSpec* field_;
    bool t_as_variable_;
};

} // namespace

MultiPoly parse_poly(std::string_view text, int nvars, const FieldSpec* field) {
    return Parser(text, nvars, field, false).parse();
}

namespace {

MultiPoly parse_shifted(std::string_view text, std::size_t offset, int nvars, const FieldSpec* field) {
    try {
        return parse_poly(text, nvars, field);
    } catch (const ParseError& e) {
        const std::string msg = e.what();
        throw ParseError(msg.substr(0, msg.rfind(" (line")), e.line(), e.column() + offset);
    }
}

// Index of the parenthesis closing the one at `open`, or npos.
std::size_t matching_paren(std::string_view text, std::size_t open) {
    int depth = 0;
    for (std::size_t i = open; i < text.size(); ++i) {
        if (text[i] == '(') ++depth;
        if (text[i] == ')' && --depth == 0) return i;
    }
    return std::string_view::npos;
}

} // namespace

RationalFunction parse_rational_function(std::string_view text, int nvars, const FieldSpec* field) {
    std::size_t b = 0;
    while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    std::size_t e = text.size();
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    if (b < e && text[b] == '(') {
        const std::size_t close = matching_paren(text, b);
        if (close != std::string_view::npos && close + 1 < e && text[close + 1] == '/') {
            std::size_t d = close + 2;
            if (d >= e || text[d] != '(' || matching_paren(text, d) != e - 1)
                throw ParseError("denominator must be parenthesized", 1, d + 1);
            const MultiPoly num = parse_shifted(text.substr(b + 1, close - b - 1), b + 1, nvars, field);
            const MultiPoly den = parse_shifted(text.substr(d + 1, e - d - 2), d + 1, nvars, field);
            if (den.is_zero()) throw ParseError("zero denominator", 1, d + 1);
            return RationalFunction(num, den);
        }
    }
    return RationalFunction(parse_poly(text, nvars, field));
}

Scalar parse_scalar(std::string_view text, const FieldSpec* field) {
    const MultiPoly p = Parser(text, 0, field, false).parse();
    return p.constant_term();
}

std::vector<mpq_class> parse_univariate_t(std::string_view text) {
    const MultiPoly p = Parser(text, 1, FieldSpec::rationals(), true).parse();
    std::vector<mpq_class> out(std::max(p.total_degree() + 1, 1), mpq_class(0));
    for (const auto& [e, c] : p.terms()) out[e[0]] = *c.as_rational();
    return out;
}

const FieldSpec* parse_field(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(text[e - 1]))) --e;
    const std::string_view trimmed = text.substr(b, e - b);
    if (trimmed == "Q") return FieldSpec::rationals();
    return FieldSpec::extension(parse_univariate_t(trimmed));
}

} // namespace twistcert
