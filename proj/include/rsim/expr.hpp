#pragma once
// Condition expressions used by FSM transition guards, RTG edge guards, and
// always-assertions. Precedence: ! > comparison > && > ||, left-associative.
// Evaluation yields 0 or 1; comparisons are unsigned.

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <string_view>

#include "rsim/diag.hpp"

namespace rsim {

struct ExprNode;
using ExprNodePtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Op { Lit, Var, Not, And, Or, Eq, Ne, Lt, Le, Gt, Ge };
    Op op;
    uint64_t lit = 0;
    std::string var;
    ExprNodePtr lhs, rhs;
};

inline bool exprNodesEqual(const ExprNodePtr& a, const ExprNodePtr& b) {
    if (!a || !b) return !a && !b;
    if (a->op != b->op || a->lit != b->lit || a->var != b->var) return false;
    return exprNodesEqual(a->lhs, b->lhs) && exprNodesEqual(a->rhs, b->rhs);
}

// Immutable AST plus the source text it was parsed from. The text is kept so
// emitters and graph labels can show the expression exactly as written;
// equality is structural.
struct Expr {
    ExprNodePtr root;
    std::string text;

    bool operator==(const Expr& other) const { return exprNodesEqual(root, other.root); }
};

template <typename Fn>
void forEachVar(const ExprNodePtr& n, Fn&& fn) {
    if (!n) return;
    if (n->op == ExprNode::Op::Var) fn(n->var);
    forEachVar(n->lhs, fn);
    forEachVar(n->rhs, fn);
}

template <typename Fn>
void forEachVar(const Expr& e, Fn&& fn) {
    forEachVar(e.root, fn);
}

namespace detail {

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) { next(); }

    ExprNodePtr parse() {
        ExprNodePtr e = parseOr();
        if (tok_ != Tok::End) fail("unexpected token");
        return e;
    }

private:
    enum class Tok { End, Num, Ident, Not, AndAnd, OrOr, Eq, Ne, Lt, Le, Gt, Ge, LParen, RParen };

    static constexpr int kMaxDepth = 100;

    [[noreturn]] void fail(const std::string& msg) const {
        throw Error(Err::ExprSyntax, msg + " at offset " + std::to_string(tokPos_),
                    SourcePos{1, static_cast<int>(tokPos_) + 1});
    }

    static bool identStart(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool identChar(char c) {
        return identStart(c) || (c >= '0' && c <= '9') || c == '.';
    }

    void next() {
        while (pos_ < text_.size() && (text_[pos_] == ' ' || text_[pos_] == '\t' ||
                                       text_[pos_] == '\r' || text_[pos_] == '\n')) {
            ++pos_;
        }
        tokPos_ = pos_;
        if (pos_ >= text_.size()) {
            tok_ = Tok::End;
            return;
        }
        char c = text_[pos_];
        if (identStart(c)) {
            size_t start = pos_;
            while (pos_ < text_.size() && identChar(text_[pos_])) ++pos_;
            ident_ = std::string(text_.substr(start, pos_ - start));
            tok_ = Tok::Ident;
            return;
        }
        if (c >= '0' && c <= '9') {
            parseNumber();
            return;
        }
        ++pos_;
        switch (c) {
        case '(': tok_ = Tok::LParen; return;
        case ')': tok_ = Tok::RParen; return;
        case '!':
            if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; tok_ = Tok::Ne; }
            else tok_ = Tok::Not;
            return;
        case '=':
            if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; tok_ = Tok::Eq; return; }
            fail("expected '=='");
        case '<':
            if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; tok_ = Tok::Le; }
            else tok_ = Tok::Lt;
            return;
        case '>':
            if (pos_ < text_.size() && text_[pos_] == '=') { ++pos_; tok_ = Tok::Ge; }
            else tok_ = Tok::Gt;
            return;
        case '&':
            if (pos_ < text_.size() && text_[pos_] == '&') { ++pos_; tok_ = Tok::AndAnd; return; }
            fail("expected '&&'");
        case '|':
            if (pos_ < text_.size() && text_[pos_] == '|') { ++pos_; tok_ = Tok::OrOr; return; }
            fail("expected '||'");
        default:
            fail("unexpected character");
        }
    }

    void parseNumber() {
        size_t start = pos_;
        int base = 10;
        if (text_[pos_] == '0' && pos_ + 1 < text_.size() &&
            (text_[pos_ + 1] == 'x' || text_[pos_ + 1] == 'X')) {
            base = 16;
            pos_ += 2;
            if (pos_ >= text_.size() || !isHex(text_[pos_])) fail("malformed hex literal");
        }
        uint64_t v = 0;
        bool overflow = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            int digit;
            if (c >= '0' && c <= '9') digit = c - '0';
            else if (base == 16 && c >= 'a' && c <= 'f') digit = c - 'a' + 10;
            else if (base == 16 && c >= 'A' && c <= 'F') digit = c - 'A' + 10;
            else break;
            uint64_t nv = v * static_cast<uint64_t>(base) + static_cast<uint64_t>(digit);
            if (nv < v || (base == 10 && v > (~0ull - static_cast<uint64_t>(digit)) / 10)) overflow = true;
            v = nv;
            ++pos_;
        }
        if (pos_ < text_.size() && identChar(text_[pos_])) {
            tokPos_ = start;
            fail("malformed numeric literal");
        }
        if (overflow) {
            tokPos_ = start;
            fail("numeric literal overflows 64 bits");
        }
        num_ = v;
        tok_ = Tok::Num;
    }

    static bool isHex(char c) {
        return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f') || (c >= 'A' && c <= 'F');
    }

    static ExprNodePtr mk(ExprNode::Op op, ExprNodePtr l = nullptr, ExprNodePtr r = nullptr) {
        auto n = std::make_shared<ExprNode>();
        n->op = op;
        n->lhs = std::move(l);
        n->rhs = std::move(r);
        return n;
    }

    static ExprNodePtr mkLit(uint64_t v) {
        auto n = std::make_shared<ExprNode>();
        n->op = ExprNode::Op::Lit;
        n->lit = v;
        return n;
    }

    static ExprNodePtr mkVar(std::string name) {
        auto n = std::make_shared<ExprNode>();
        n->op = ExprNode::Op::Var;
        n->var = std::move(name);
        return n;
    }

    ExprNodePtr parseOr() {
        ExprNodePtr e = parseAnd();
        while (tok_ == Tok::OrOr) {
            next();
            e = mk(ExprNode::Op::Or, e, parseAnd());
        }
        return e;
    }

    ExprNodePtr parseAnd() {
        ExprNodePtr e = parseCmp();
        while (tok_ == Tok::AndAnd) {
            next();
            e = mk(ExprNode::Op::And, e, parseCmp());
        }
        return e;
    }

    ExprNodePtr parseCmp() {
        ExprNodePtr e = parseUnary();
        while (true) {
            ExprNode::Op op;
            switch (tok_) {
            case Tok::Eq: op = ExprNode::Op::Eq; break;
            case Tok::Ne: op = ExprNode::Op::Ne; break;
            case Tok::Lt: op = ExprNode::Op::Lt; break;
            case Tok::Le: op = ExprNode::Op::Le; break;
            case Tok::Gt: op = ExprNode::Op::Gt; break;
            case Tok::Ge: op = ExprNode::Op::Ge; break;
            default: return e;
            }
            next();
            e = mk(op, e, parseUnary());
        }
    }

    ExprNodePtr parseUnary() {
        if (++depth_ > kMaxDepth) fail("expression too deeply nested");
        ExprNodePtr result;
        if (tok_ == Tok::Not) {
            next();
            result = mk(ExprNode::Op::Not, parseUnary());
        } else {
            result = parsePrimary();
        }
        --depth_;
        return result;
    }

    ExprNodePtr parsePrimary() {
        switch (tok_) {
        case Tok::Num: {
            ExprNodePtr n = mkLit(num_);
            next();
            return n;
        }
        case Tok::Ident: {
            ExprNodePtr n = mkVar(ident_);
            next();
            return n;
        }
        case Tok::LParen: {
            next();
            ExprNodePtr e = parseOr();
            if (tok_ != Tok::RParen) fail("expected ')'");
            next();
            return e;
        }
        default:
            fail("expected literal, variable, or '('");
        }
    }

    std::string_view text_;
    size_t pos_ = 0;
    size_t tokPos_ = 0;
    Tok tok_ = Tok::End;
    uint64_t num_ = 0;
    std::string ident_;
    int depth_ = 0;
};

}  // namespace detail

inline Expr parseExpr(std::string_view text) {
    detail::ExprParser p(text);
    Expr e;
    e.root = p.parse();
    e.text = std::string(text);
    return e;
}

// Tree-walk evaluation; `lookup` maps variable names to their current values.
// Logical operands are truthy when nonzero; the result is always 0 or 1.
inline uint64_t evalExpr(const ExprNodePtr& n,
                         const std::function<uint64_t(const std::string&)>& lookup) {
    using Op = ExprNode::Op;
    switch (n->op) {
    case Op::Lit: return n->lit;
    case Op::Var: return lookup(n->var);
    case Op::Not: return evalExpr(n->lhs, lookup) == 0 ? 1 : 0;
    case Op::And: return (evalExpr(n->lhs, lookup) != 0 && evalExpr(n->rhs, lookup) != 0) ? 1 : 0;
    case Op::Or: return (evalExpr(n->lhs, lookup) != 0 || evalExpr(n->rhs, lookup) != 0) ? 1 : 0;
    case Op::Eq: return evalExpr(n->lhs, lookup) == evalExpr(n->rhs, lookup) ? 1 : 0;
    case Op::Ne: return evalExpr(n->lhs, lookup) != evalExpr(n->rhs, lookup) ? 1 : 0;
    case Op::Lt: return evalExpr(n->lhs, lookup) < evalExpr(n->rhs, lookup) ? 1 : 0;
    case Op::Le: return evalExpr(n->lhs, lookup) <= evalExpr(n->rhs, lookup) ? 1 : 0;
    case Op::Gt: return evalExpr(n->lhs, lookup) > evalExpr(n->rhs, lookup) ? 1 : 0;
    case Op::Ge: return evalExpr(n->lhs, lookup) >= evalExpr(n->rhs, lookup) ? 1 : 0;
    }
    return 0;
}

inline uint64_t evalExpr(const Expr& e,
                         const std::function<uint64_t(const std::string&)>& lookup) {
    uint64_t v = evalExpr(e.root, lookup);
    return v != 0 ? 1 : 0;
}

}  // namespace rsim
