#include "phasor/expr.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <sstream>

#include "phasor/errors.hpp"

namespace phasor {

namespace {

ExprPtr make(ExprKind kind, ExprPtr l, ExprPtr r = nullptr)
{
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->left = std::move(l);
    e->right = std::move(r);
    return e;
}

// Shortest text that reads back as the same double.
std::string format_real(double x)
{
    char buf[32];
    const auto r = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, r.ptr);
}

class Parser
{
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse()
    {
        auto e = expr();
        skip_space();
        if (pos_ != text_.size()) {
            fail("unexpected '" + std::string(1, text_[pos_]) + "'");
        }
        return e;
    }

private:
    ExprPtr expr()
    {
        auto e = term();
        while (accept('+')) {
            e = Expr::bundle(e, term());
        }
        return e;
    }

    ExprPtr term()
    {
        auto e = power();
        while (true) {
            if (accept('*')) {
                e = Expr::bind(e, power());
            } else if (accept('/')) {
                e = Expr::unbind(e, power());
            } else {
                return e;
            }
        }
    }

    ExprPtr power()
    {
        auto e = primary();
        while (accept('^')) {
            e = Expr::power(e, real());
        }
        return e;
    }

    ExprPtr primary()
    {
        skip_space();
        if (accept('(')) {
            auto e = expr();
            expect(')');
            return e;
        }
        const std::string name = identifier();
        if (name.empty()) {
            if (pos_ >= text_.size()) {
                fail("unexpected end of expression");
            }
            fail("expected a symbol, 'rho(', 'cleanup(' or '('");
        }
        skip_space();
        if (name == "rho" && peek('(')) {
            expect('(');
            auto child = expr();
            expect(',');
            const long k = integer();
            expect(')');
            return Expr::permute(child, k);
        }
        if (name == "cleanup" && peek('(')) {
            expect('(');
            auto child = expr();
            expect(')');
            return Expr::cleanup(child);
        }
        return Expr::symbol(name);
    }

    std::string identifier()
    {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (std::isalpha(uc(text_[pos_])) || text_[pos_] == '_')) {
            ++pos_;
            while (pos_ < text_.size() && (std::isalnum(uc(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
        }
        return std::string(text_.substr(start, pos_ - start));
    }

    double real()
    {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            ++pos_;
        }
        while (pos_ < text_.size() &&
                (std::isdigit(uc(text_[pos_])) || text_[pos_] == '.' || text_[pos_] == 'e' ||
                        text_[pos_] == 'E' ||
                        ((text_[pos_] == '-' || text_[pos_] == '+') &&
                                (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E')))) {
            ++pos_;
        }
        const std::string token(text_.substr(start, pos_ - start));
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(token, &used);
        } catch (const std::exception &) {
            used = 0;
        }
        if (token.empty() || used != token.size() || !std::isfinite(value)) {
            pos_ = start;
            fail("expected a real exponent");
        }
        return value;
    }

    long integer()
    {
        skip_space();
        const std::size_t start = pos_;
        if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) {
            ++pos_;
        }
        while (pos_ < text_.size() && std::isdigit(uc(text_[pos_]))) {
            ++pos_;
        }
        std::string_view token = text_.substr(start, pos_ - start);
        if (!token.empty() && token.front() == '+') {
            token.remove_prefix(1);
        }
        long value = 0;
        const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
        if (token.empty() || ec != std::errc{} || ptr != token.data() + token.size()) {
            pos_ = start;
            fail("expected an integer shift");
        }
        return value;
    }

    bool peek(char c)
    {
        skip_space();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept(char c)
    {
        if (peek(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c)
    {
        if (!accept(c)) {
            fail(std::string("expected '") + c + "'");
        }
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(uc(text_[pos_]))) {
            ++pos_;
        }
    }

    [[noreturn]] void fail(const std::string &what) const
    {
        throw ParseError(what + " at position " + std::to_string(pos_), pos_);
    }

    static unsigned char uc(char c) { return static_cast<unsigned char>(c); }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

ExprPtr Expr::symbol(std::string name)
{
    auto e = std::make_shared<Expr>();
    e->name = std::move(name);
    return e;
}

ExprPtr Expr::bind(ExprPtr l, ExprPtr r)
{
    return make(ExprKind::bind, std::move(l), std::move(r));
}

ExprPtr Expr::unbind(ExprPtr l, ExprPtr r)
{
    return make(ExprKind::unbind, std::move(l), std::move(r));
}

ExprPtr Expr::bundle(ExprPtr l, ExprPtr r)
{
    return make(ExprKind::bundle, std::move(l), std::move(r));
}

ExprPtr Expr::permute(ExprPtr child, long shift)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::permute;
    e->left = std::move(child);
    e->shift = shift;
    return e;
}

ExprPtr Expr::power(ExprPtr child, double alpha)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::power;
    e->left = std::move(child);
    e->alpha = alpha;
    return e;
}

ExprPtr Expr::cleanup(ExprPtr child, std::string vocabulary)
{
    auto e = std::make_shared<Expr>();
    e->kind = ExprKind::cleanup;
    e->left = std::move(child);
    e->name = std::move(vocabulary);
    return e;
}

std::string to_string(const Expr &e)
{
    switch (e.kind) {
    case ExprKind::symbol:
        return e.name;
    case ExprKind::bind:
        return "(" + to_string(*e.left) + " * " + to_string(*e.right) + ")";
    case ExprKind::unbind:
        return "(" + to_string(*e.left) + " / " + to_string(*e.right) + ")";
    case ExprKind::bundle:
        return "(" + to_string(*e.left) + " + " + to_string(*e.right) + ")";
    case ExprKind::permute:
        return "rho(" + to_string(*e.left) + ", " + std::to_string(e.shift) + ")";
    case ExprKind::power:
        return "(" + to_string(*e.left) + " ^ " + format_real(e.alpha) + ")";
    case ExprKind::cleanup:
        // Named vocabularies have no surface syntax; keep them distinct in
        // the canonical form anyway.
        return e.name.empty() ? "cleanup(" + to_string(*e.left) + ")"
                              : "cleanup[" + e.name + "](" + to_string(*e.left) + ")";
    }
    return {};
}

ExprPtr parse_expression(std::string_view text)
{
    return Parser(text).parse();
}

const Vocabulary &cleanup_vocabulary(const Expr &e, const Vocabulary &symbols,
        const CleanupVocabularies &cleanup)
{
    if (auto it = cleanup.find(e.name); it != cleanup.end()) {
        return it->second;
    }
    if (e.name.empty()) {
        return symbols;
    }
    throw ValidationError("unknown clean-up vocabulary '" + e.name + "'");
}

PhasorVector evaluate(const Expr &e, const Vocabulary &symbols, const CleanupVocabularies &cleanup)
{
    switch (e.kind) {
    case ExprKind::symbol: {
        const auto *v = symbols.find(e.name);
        if (v == nullptr) {
            throw ValidationError("unresolved symbol '" + e.name + "'");
        }
        return *v;
    }
    case ExprKind::bind:
        return bind(evaluate(*e.left, symbols, cleanup), evaluate(*e.right, symbols, cleanup));
    case ExprKind::unbind:
        return unbind(evaluate(*e.left, symbols, cleanup), evaluate(*e.right, symbols, cleanup));
    case ExprKind::bundle:
        return bundle({evaluate(*e.left, symbols, cleanup), evaluate(*e.right, symbols, cleanup)});
    case ExprKind::permute:
        return permute(evaluate(*e.left, symbols, cleanup), e.shift);
    case ExprKind::power:
        return fractional_power(evaluate(*e.left, symbols, cleanup), e.alpha);
    case ExprKind::cleanup: {
        const auto &vocab = cleanup_vocabulary(e, symbols, cleanup);
        const auto result = cleanup_oracle(evaluate(*e.left, symbols, cleanup), vocab);
        return vocab[result.index].vector;
    }
    }
    throw ValidationError("malformed expression");
}

} // namespace phasor
