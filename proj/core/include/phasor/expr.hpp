#pragma once

// VSA expression trees and their text syntax.
//
//   expr    := term ('+' term)*                     bundle
//   term    := power (('*' | '/') power)*           bind / unbind
//   power   := primary ('^' real)*                  fractional power
//   primary := ident | 'rho' '(' expr ',' int ')' | 'cleanup' '(' expr ')'
//            | '(' expr ')'
//
// All binary operators are left-associative.

#include <map>
#include <memory>
#include <string>
#include <string_view>

#include "phasor/fhrr.hpp"
#include "phasor/vocabulary.hpp"

namespace phasor {

enum class ExprKind
{
    symbol,
    bind,
    unbind,
    bundle,
    permute,
    power,
    cleanup,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr
{
    ExprKind kind = ExprKind::symbol;
    std::string name;       // symbol name, or clean-up vocabulary ("" = default)
    ExprPtr left;           // operand of unary nodes
    ExprPtr right;
    long shift = 0;         // permute
    double alpha = 1.0;     // power

    static ExprPtr symbol(std::string name);
    static ExprPtr bind(ExprPtr l, ExprPtr r);
    static ExprPtr unbind(ExprPtr l, ExprPtr r);
    static ExprPtr bundle(ExprPtr l, ExprPtr r);
    static ExprPtr permute(ExprPtr child, long shift);
    static ExprPtr power(ExprPtr child, double alpha);
    static ExprPtr cleanup(ExprPtr child, std::string vocabulary = {});
};

/// Canonical, fully parenthesized text; equal strings mean structurally
/// equal trees. Reparses to the same tree.
std::string to_string(const Expr &e);

/// Throws ParseError carrying the byte offset of the problem.
ExprPtr parse_expression(std::string_view text);

/// Named clean-up vocabularies; the empty name is the default.
using CleanupVocabularies = std::map<std::string, Vocabulary, std::less<>>;

/// Exact oracle evaluation. Symbols resolve in `symbols`; a clean-up node
/// returns the winning entry of its vocabulary (the default falls back to
/// `symbols` when not given). Throws ValidationError on unresolved names.
PhasorVector evaluate(const Expr &e, const Vocabulary &symbols,
        const CleanupVocabularies &cleanup = {});

/// The clean-up vocabulary a node refers to.
const Vocabulary &cleanup_vocabulary(const Expr &e, const Vocabulary &symbols,
        const CleanupVocabularies &cleanup);

} // namespace phasor
