#include <doctest.h>

#include "phasor/errors.hpp"
#include "phasor/expr.hpp"

using namespace phasor;

namespace {

std::string canon(std::string_view text) { return to_string(*parse_expression(text)); }

} // namespace

TEST_CASE("parser honours precedence and left associativity")
{
    CHECK(canon("A") == "A");
    CHECK(canon("A * B + C") == "((A * B) + C)");
    CHECK(canon("A + B * C") == "(A + (B * C))");
    CHECK(canon("A / B / C") == "((A / B) / C)");
    CHECK(canon("A * B / C") == "((A * B) / C)");
    CHECK(canon("A * X^1.85") == "(A * (X ^ 1.85))");
    CHECK(canon("X^2^0.5") == "((X ^ 2) ^ 0.5)");
    CHECK(canon("(A + B) * C") == "((A + B) * C)");
    CHECK(canon("A + B + C") == "((A + B) + C)");
}

TEST_CASE("parser reads exponents, rotations and clean-ups")
{
    const auto p = parse_expression("X^-0.65");
    CHECK(p->kind == ExprKind::power);
    CHECK(p->alpha == -0.65);
    const auto r = parse_expression("rho(f / s, -1)");
    CHECK(r->kind == ExprKind::permute);
    CHECK(r->shift == -1);
    CHECK(parse_expression("cleanup(A + B)")->kind == ExprKind::cleanup);
    CHECK(canon("X^1e-1") == "(X ^ 0.1)");
    CHECK(canon("X^-0.65") == "(X ^ -0.65)");
    CHECK(canon(" rho ( A , 3 ) ") == "rho(A, 3)");
}

TEST_CASE("canonical text reparses to the same tree")
{
    for (const char *text : {"cleanup(rho(f / s / a, -1))", "(R*S*X^1.85 + B*C*X^-0.65) / (R*S)",
                 "rho(A^0.3, 2) + B", "A_1 * b2"}) {
        const auto once = canon(text);
        CHECK(canon(once) == once);
    }
}

TEST_CASE("parse errors carry the offending position")
{
    auto position = [](std::string_view text) -> std::size_t {
        try {
            (void)parse_expression(text);
        } catch (const ParseError &e) {
            return e.position();
        }
        return std::string_view::npos;
    };
    CHECK(position("A * (B") == 6);
    CHECK(position("A +") == 3);
    CHECK(position("A $ B") == 2);
    CHECK(position("rho(A, 1.5)") == 8);
    CHECK(position("X^") == 2);
    CHECK(position("") == 0);
    CHECK(position("A B") == 2);
}

TEST_CASE("evaluate follows the oracle operations")
{
    const auto v = Vocabulary::random(32, 8, {"A", "B", "X"});
    const auto &a = v.at("A");
    const auto &b = v.at("B");
    CHECK(evaluate(*parse_expression("A * B"), v) == bind(a, b));
    CHECK(evaluate(*parse_expression("A / B"), v) == unbind(a, b));
    CHECK(evaluate(*parse_expression("A + B"), v) == bundle({a, b}));
    CHECK(evaluate(*parse_expression("rho(A, 2)"), v) == permute(a, 2));
    CHECK(evaluate(*parse_expression("X^1.5"), v) == fractional_power(v.at("X"), 1.5));
    CHECK(max_phase_deviation(evaluate(*parse_expression("A * B / B"), v), a) < 1e-12);
    CHECK(evaluate(*parse_expression("cleanup(A + B)"), v) == a);
    CHECK_THROWS_AS(evaluate(*parse_expression("A * Q"), v), ValidationError);
}

TEST_CASE("named clean-up vocabularies resolve separately")
{
    const auto symbols = Vocabulary::random(32, 1, {"q"});
    CleanupVocabularies named;
    named.emplace("states", Vocabulary::random(32, 2, {"S1", "S2"}));
    const auto e = Expr::cleanup(Expr::symbol("q"), "states");
    CHECK(to_string(*e) == "cleanup[states](q)");
    CHECK(&cleanup_vocabulary(*e, symbols, named) == &named.at("states"));
    CHECK_THROWS_AS((void)cleanup_vocabulary(*Expr::cleanup(Expr::symbol("q"), "other"), symbols, named),
            ValidationError);
}
