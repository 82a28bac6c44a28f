#include "mongesym/error.hpp"
#include "mongesym/expr.hpp"

#include <cctype>

namespace mongesym {

namespace {

// expr     := ['+'|'-'] term (('+'|'-') term)*
// term     := factor ('*' factor)*
// factor   := base ('^' exponent)?
// base     := rational | coordinate | '(' expr ')' | 'exp' '(' expr ')' | 'ln' '(' expr ')'
// exponent := rational | '(' rational ')'
// rational := ['-'] digits ('/' digits)?
class Parser {
public:
    Parser(std::string_view text, Chart chart) : text_(text), chart_(chart) {}

    Expr parse_all()
    {
        Expr e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, pos_); }

    void skip_ws()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c)
    {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            if (pos_ >= text_.size()) fail(std::string("expected '") + c + "' but input ended");
            fail(std::string("expected '") + c + "'");
        }
    }

    bool at_digit()
    {
        skip_ws();
        return pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));
    }

    std::string digits()
    {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        if (start == pos_) fail("expected digits");
        return std::string(text_.substr(start, pos_ - start));
    }

    Rational literal()
    {
        skip_ws();
        std::size_t start = pos_;
        bool negative = false;
        if (pos_ < text_.size() && text_[pos_] == '-') {
            negative = true;
            ++pos_;
            skip_ws();
        }
        std::string num = digits();
        if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
            pos_ = start;
            fail("non-rational literal");
        }
        Rational q{Integer(num)};
        if (pos_ < text_.size() && text_[pos_] == '/') {
            ++pos_;
            std::size_t den_at = pos_;
            std::string den = digits();
            if (pos_ < text_.size() && (text_[pos_] == '.' || text_[pos_] == 'e' || text_[pos_] == 'E')) {
                pos_ = start;
                fail("non-rational literal");
            }
            Integer d(den);
            if (d == 0) {
                pos_ = den_at;
                fail("zero denominator");
            }
            q = Rational(Integer(num), d);
            q.canonicalize();
        }
        return negative ? Rational(-q) : q;
    }

    Expr parse_expr()
    {
        bool negative = false;
        if (accept('-'))
            negative = true;
        else
            accept('+');
        Expr e = parse_term();
        if (negative) e = -e;
        for (;;) {
            if (accept('+'))
                e += parse_term();
            else if (accept('-'))
                e -= parse_term();
            else
                return e;
        }
    }

    Expr parse_term()
    {
        Expr e = parse_factor();
        while (accept('*')) e = e * parse_factor();
        return e;
    }

    Expr parse_factor()
    {
        Expr b = parse_base();
        if (accept('^')) {
            Rational q;
            if (accept('(')) {
                q = literal();
                expect(')');
            } else {
                q = literal();
            }
            b = pow(b, q);
        }
        return b;
    }

    Expr parse_base()
    {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of input");
        if (at_digit()) return Expr::constant(chart_, literal());
        if (accept('(')) {
            Expr e = parse_expr();
            expect(')');
            return e;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string_view id = text_.substr(start, pos_ - start);
            if (id == "exp" || id == "ln") {
                expect('(');
                Expr arg = parse_expr();
                expect(')');
                return id == "exp" ? exp(arg) : ln(arg);
            }
            auto coord = coord_from_name(id);
            if (!coord || !contains(chart_, *coord)) {
                pos_ = start;
                fail("unknown identifier '" + std::string(id) + "'");
            }
            return Expr::variable(chart_, *coord);
        }
        fail("unexpected '" + std::string(1, c) + "'");
    }

    std::string_view text_;
    Chart chart_;
    std::size_t pos_ = 0;
};

} // namespace

Expr parse(std::string_view text, Chart chart)
{
    return Parser(text, chart).parse_all();
}

} // namespace mongesym
