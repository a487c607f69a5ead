#include "dynrmat/expr_parser.hpp"

#include <cctype>

#include "dynrmat/errors.hpp"

namespace dynrmat {

namespace {

class Parser {
public:
    Parser(const std::string& text, int max_vars) : text_(text), max_vars_(max_vars) {}

    ScalarExpr run() {
        skip_space();
        ScalarExpr e = expr();
        skip_space();
        if (pos_ != text_.size()) fail("unexpected trailing input");
        return e;
    }

private:
    ScalarExpr expr() {
        ScalarExpr e = term();
        for (;;) {
            skip_space();
            if (peek() == '+') {
                ++pos_;
                e = e + term();
            } else if (peek() == '-') {
                ++pos_;
                e = e - term();
            } else {
                return e;
            }
        }
    }

    ScalarExpr term() {
        ScalarExpr e = factor();
        for (;;) {
            skip_space();
            if (peek() == '*') {
                ++pos_;
                e = e * factor();
            } else if (peek() == '/') {
                ++pos_;
                e = e / factor();
            } else {
                return e;
            }
        }
    }

    ScalarExpr factor() {
        skip_space();
        if (peek() == '-') {
            ++pos_;
            return ScalarExpr(0) - factor();
        }
        return primary();
    }

    ScalarExpr primary() {
        skip_space();
        char c = peek();
        if (c == '(') {
            ++pos_;
            ScalarExpr e = expr();
            skip_space();
            if (peek() != ')') fail("expected ')'");
            ++pos_;
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t start = pos_;
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            return ScalarExpr::constant(Rational::parse(text_.substr(start, pos_ - start)));
        }
        if (c == 'l') {
            std::size_t start = pos_;
            ++pos_;
            if (!std::isdigit(static_cast<unsigned char>(peek()))) fail("expected coordinate index after 'l'");
            while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
            int idx = 0;
            try {
                idx = std::stoi(text_.substr(start + 1, pos_ - start - 1));
            } catch (...) {
                fail_at(start, "coordinate index out of range");
            }
            if (idx < 1) fail_at(start, "coordinate indices start at l1");
            if (max_vars_ >= 0 && idx > max_vars_)
                fail_at(start, "coordinate l" + std::to_string(idx) + " exceeds the declared count " +
                                   std::to_string(max_vars_));
            return ScalarExpr::variable(idx - 1);
        }
        if (c == '\0') fail("unexpected end of input");
        fail(std::string("unexpected character '") + c + "'");
        return ScalarExpr(0); // unreachable
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    [[noreturn]] void fail(const std::string& what) const { fail_at(pos_, what); }
    [[noreturn]] void fail_at(std::size_t pos, const std::string& what) const {
        throw ParseError(1, static_cast<int>(pos) + 1, what);
    }

    const std::string& text_;
    int max_vars_;
    std::size_t pos_ = 0;
};

} // namespace

ScalarExpr parse_expr(const std::string& text, int max_vars) { return Parser(text, max_vars).run(); }

} // namespace dynrmat
