#pragma once

#include <cctype>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "eqdesign/errors.hpp"

namespace eqdesign {

/// Syntax error with the offending position in the formula text.
class ParseError : public InputError {
public:
    ParseError(const std::string& what, size_t position)
        : InputError(what + " at position " + std::to_string(position)), position_(position) {}
    size_t position() const { return position_; }

private:
    size_t position_;
};

/// Boolean combination of atomic propositions: atoms, negation, conjunction,
/// disjunction, implication and the constants. Immutable; nodes are shared.
class Formula {
public:
    enum class Kind { True, False, Atom, Not, And, Or, Implies };

    static Formula constant(bool v) { return Formula(std::make_shared<Node>(v ? Kind::True : Kind::False)); }
    static Formula atom(std::string name) {
        auto n = std::make_shared<Node>(Kind::Atom);
        n->name = std::move(name);
        return Formula(std::move(n));
    }
    static Formula negation(Formula f) { return unary(Kind::Not, std::move(f)); }
    static Formula conjunction(Formula a, Formula b) { return binary(Kind::And, std::move(a), std::move(b)); }
    static Formula disjunction(Formula a, Formula b) { return binary(Kind::Or, std::move(a), std::move(b)); }
    static Formula implication(Formula a, Formula b) { return binary(Kind::Implies, std::move(a), std::move(b)); }

    Kind kind() const { return node_->kind; }
    const std::string& atom_name() const { return node_->name; }
    Formula left() const { return Formula(node_->left); }
    Formula right() const { return Formula(node_->right); }

    bool evaluate(const std::function<bool(const std::string&)>& atom_true) const {
        switch (node_->kind) {
        case Kind::True: return true;
        case Kind::False: return false;
        case Kind::Atom: return atom_true(node_->name);
        case Kind::Not: return !left().evaluate(atom_true);
        case Kind::And: return left().evaluate(atom_true) && right().evaluate(atom_true);
        case Kind::Or: return left().evaluate(atom_true) || right().evaluate(atom_true);
        case Kind::Implies: return !left().evaluate(atom_true) || right().evaluate(atom_true);
        }
        throw InternalError("unhandled formula kind");
    }

    void collect_atoms(std::vector<std::string>& out) const {
        switch (node_->kind) {
        case Kind::Atom:
            out.push_back(node_->name);
            return;
        case Kind::Not:
            left().collect_atoms(out);
            return;
        case Kind::And:
        case Kind::Or:
        case Kind::Implies:
            left().collect_atoms(out);
            right().collect_atoms(out);
            return;
        default:
            return;
        }
    }

    std::string str() const {
        switch (node_->kind) {
        case Kind::True: return "true";
        case Kind::False: return "false";
        case Kind::Atom: return node_->name;
        case Kind::Not: return "!" + wrap(left(), 3);
        case Kind::And: return wrap(left(), 2) + " & " + wrap(right(), 2);
        case Kind::Or: return wrap(left(), 1) + " | " + wrap(right(), 1);
        case Kind::Implies: return wrap(left(), 1) + " -> " + wrap(right(), 0);
        }
        throw InternalError("unhandled formula kind");
    }

private:
    struct Node {
        explicit Node(Kind k) : kind(k) {}
        Kind kind;
        std::string name;
        std::shared_ptr<const Node> left, right;
    };

    explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

    static Formula unary(Kind k, Formula a) {
        auto n = std::make_shared<Node>(k);
        n->left = a.node_;
        return Formula(std::move(n));
    }
    static Formula binary(Kind k, Formula a, Formula b) {
        auto n = std::make_shared<Node>(k);
        n->left = a.node_;
        n->right = b.node_;
        return Formula(std::move(n));
    }

    static int precedence(Kind k) {
        switch (k) {
        case Kind::Implies: return 0;
        case Kind::Or: return 1;
        case Kind::And: return 2;
        case Kind::Not: return 3;
        default: return 4;
        }
    }

    static std::string wrap(const Formula& f, int min_prec) {
        std::string s = f.str();
        if (precedence(f.kind()) < min_prec)
            return "(" + s + ")";
        return s;
    }

    std::shared_ptr<const Node> node_;
};

namespace detail {

/// Recursive-descent parser. Precedence ! > & > | > ->, with -> right
/// associative. Atoms are identifiers; `true` and `false` are keywords.
class FormulaParser {
public:
    explicit FormulaParser(std::string_view text) : text_(text) {}

    Formula parse() {
        Formula f = parse_implies();
        skip_ws();
        if (pos_ != text_.size())
            throw ParseError("unexpected trailing input", pos_);
        return f;
    }

private:
    Formula parse_implies() {
        Formula lhs = parse_or();
        skip_ws();
        if (match("->"))
            return Formula::implication(std::move(lhs), parse_implies());
        return lhs;
    }

    Formula parse_or() {
        Formula f = parse_and();
        while (true) {
            skip_ws();
            // do not consume the '-' of '->'
            if (peek() == '|' ) {
                ++pos_;
                f = Formula::disjunction(std::move(f), parse_and());
            } else {
                return f;
            }
        }
    }

    Formula parse_and() {
        Formula f = parse_unary();
        while (true) {
            skip_ws();
            if (peek() == '&') {
                ++pos_;
                f = Formula::conjunction(std::move(f), parse_unary());
            } else {
                return f;
            }
        }
    }

    Formula parse_unary() {
        skip_ws();
        if (peek() == '!') {
            ++pos_;
            return Formula::negation(parse_unary());
        }
        if (peek() == '(') {
            size_t open = pos_++;
            Formula f = parse_implies();
            skip_ws();
            if (peek() != ')')
                throw ParseError("unbalanced parenthesis opened", open);
            ++pos_;
            return f;
        }
        if (std::isalpha(static_cast<unsigned char>(peek())) || peek() == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "true")
                return Formula::constant(true);
            if (name == "false")
                return Formula::constant(false);
            return Formula::atom(std::move(name));
        }
        if (pos_ == text_.size())
            throw ParseError("unexpected end of formula", pos_);
        throw ParseError(std::string("unknown token '") + peek() + "'", pos_);
    }

    char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

    bool match(std::string_view s) {
        if (text_.substr(pos_, s.size()) == s) {
            pos_ += s.size();
            return true;
        }
        return false;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
};

} // namespace detail

inline Formula parse_formula(std::string_view text) {
    return detail::FormulaParser(text).parse();
}

} // namespace eqdesign
