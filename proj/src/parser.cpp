#include "regsep/algebra/parser.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <optional>

namespace regsep::algebra {

namespace {

class Parser {
public:
    Parser(const std::string& text, const std::vector<std::string>& variables)
        : text_(text), variables_(variables) {}

    Poly run() {
        const int n = static_cast<int>(variables_.size());
        if (n < 1) throw Error("parse_poly: variable list must not be empty");
        Poly p = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return p;
    }

private:
    Poly parse_expr() {
        skip_ws();
        bool negate = false;
        if (peek() == '+' || peek() == '-') {
            negate = (peek() == '-');
            ++pos_;
        }
        Poly acc = parse_term();
        if (negate) acc = -acc;
        for (;;) {
            skip_ws();
            const char c = peek();
            if (c != '+' && c != '-') break;
            ++pos_;
            Poly t = parse_term();
            if (c == '+')
                acc += t;
            else
                acc -= t;
        }
        return acc;
    }

    Poly parse_term() {
        Poly acc = parse_factor();
        for (;;) {
            skip_ws();
            if (peek() != '*') break;
            ++pos_;
            acc *= parse_factor();
        }
        return acc;
    }

    Poly parse_factor() {
        Poly base = parse_base();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            const int e = parse_exponent();
            base = base.pow(e);
        }
        return base;
    }

    Poly parse_base() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            Poly inner = parse_expr();
            skip_ws();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return inner;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_variable();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        fail("expected variable, number or '('");
    }

    Poly parse_variable() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name = text_.substr(start, pos_ - start);
        for (std::size_t i = 0; i < variables_.size(); ++i) {
            if (variables_[i] == name)
                return Poly::variable(static_cast<int>(variables_.size()), static_cast<int>(i));
        }
        throw ParseError(start, "unknown variable name '" + name + "'");
    }

    // number := float ('i')? | float ('+'|'-') float 'i'
    Poly parse_number() {
        const int n = static_cast<int>(variables_.size());
        const double first = parse_float();
        if (peek() == 'i' && !is_ident_continuation(pos_ + 1)) {
            ++pos_;
            return Poly::constant(n, Complex(0.0, first));
        }
        // Tentative complex-literal continuation: sign, float, 'i', with no
        // interior whitespace ("3+4i" is one number, "3 + 4i" is a sum).
        const std::size_t save = pos_;
        if (peek() == '+' || peek() == '-') {
            const double sign = (peek() == '-') ? -1.0 : 1.0;
            ++pos_;
            if (pos_ < text_.size() &&
                (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.')) {
                const double second = parse_float();
                if (peek() == 'i' && !is_ident_continuation(pos_ + 1)) {
                    ++pos_;
                    return Poly::constant(n, Complex(first, sign * second));
                }
            }
            pos_ = save;  // not a complex literal; '+'/'-' belongs to the expr
        }
        return Poly::constant(n, Complex(first));
    }

    // float := digits ['.' digits] [('e'|'E') sign? digits] | '.' digits ...
    double parse_float() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (peek() == '.') {
            ++pos_;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        }
        if (pos_ == start || (pos_ == start + 1 && text_[start] == '.'))
            fail("expected a number");
        if (peek() == 'e' || peek() == 'E') {
            std::size_t probe = pos_ + 1;
            if (probe < text_.size() && (text_[probe] == '+' || text_[probe] == '-')) ++probe;
            std::size_t digits = probe;
            while (digits < text_.size() && std::isdigit(static_cast<unsigned char>(text_[digits]))) ++digits;
            if (digits > probe) pos_ = digits;  // exponent only when digits follow
        }
        double value = 0.0;
        const auto res = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (res.ec != std::errc()) fail("malformed number");
        return value;
    }

    int parse_exponent() {
        skip_ws();
        const std::size_t at = pos_;
        if (peek() == '-') throw ParseError(at, "negative exponent");
        if (peek() == '+') ++pos_;
        if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])))
            fail("expected a non-negative integer exponent");
        long value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + (text_[pos_] - '0');
            if (value > 1'000'000) throw ParseError(at, "exponent too large");
            ++pos_;
        }
        if (peek() == '.') throw ParseError(at, "non-integer exponent");
        return static_cast<int>(value);
    }

    bool is_ident_continuation(std::size_t at) const {
        return at < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[at])) || text_[at] == '_');
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    [[noreturn]] void fail(const std::string& message) const { throw ParseError(pos_, message); }

    const std::string& text_;
    const std::vector<std::string>& variables_;
    std::size_t pos_ = 0;
};

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

// One printed monomial: magnitude * vars, magnitude 1 elided when variables
// are present. `imaginary` appends the 'i' suffix to the magnitude.
std::string format_term(double magnitude, bool imaginary, const MultiIndex& alpha,
                        const std::vector<std::string>& variables) {
    std::string vars;
    for (std::size_t v = 0; v < alpha.size(); ++v) {
        if (alpha[v] == 0) continue;
        if (!vars.empty()) vars += "*";
        vars += variables[v];
        if (alpha[v] > 1) vars += "^" + std::to_string(alpha[v]);
    }
    std::string num;
    if (magnitude != 1.0 || imaginary || vars.empty()) {
        num = format_double(magnitude);
        if (imaginary) num += "i";
    }
    if (num.empty()) return vars;
    if (vars.empty()) return num;
    return num + "*" + vars;
}

}  // namespace

Poly parse_poly(const std::string& text, const std::vector<std::string>& variables) {
    return Parser(text, variables).run();
}

std::string to_expression_string(const Poly& p, const std::vector<std::string>& variables) {
    if (static_cast<int>(variables.size()) != p.num_vars())
        throw DimensionError("to_expression_string: variable list length mismatch");
    if (p.is_zero()) return "0";

    // Complex coefficients print as separate real and imaginary terms; the
    // parser merges them back into one term.
    std::string out;
    auto append = [&out](double value, bool imaginary, const MultiIndex& alpha,
                         const std::vector<std::string>& vars) {
        if (value == 0.0) return;
        const bool negative = std::signbit(value);
        const double magnitude = std::abs(value);
        if (out.empty()) {
            if (negative) out += "-";
        } else {
            out += negative ? " - " : " + ";
        }
        out += format_term(magnitude, imaginary, alpha, vars);
    };
    for (const Term& t : p.terms()) {
        append(t.coef.real(), false, t.alpha, variables);
        append(t.coef.imag(), true, t.alpha, variables);
    }
    return out;
}

std::vector<std::string> default_variables(int n) {
    std::vector<std::string> names;
    names.reserve(n);
    for (int i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
    return names;
}

}  // namespace regsep::algebra
