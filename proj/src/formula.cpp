#include "qlab/formula.hpp"

#include <algorithm>
#include <cctype>

namespace qlab {

FormulaPool::NodeKey FormulaPool::key_of(const FormulaNode& n) {
    NodeKey k;
    k.a = ((std::uint64_t)n.conn << 56) | ((std::uint64_t)n.atom << 48) |
          ((std::uint64_t)n.lhs.kind << 40) | ((std::uint64_t)n.rhs.kind << 33) |
          (std::uint64_t)n.var;
    if (n.conn == Conn::Atom)
        k.b = ((std::uint64_t)n.lhs.id << 32) | n.rhs.id;
    else
        k.b = ((std::uint64_t)n.child0 << 32) | n.child1;
    return k;
}

FormulaId FormulaPool::intern(FormulaNode n) {
    auto key = key_of(n);
    auto it = cons_.find(key);
    if (it != cons_.end()) return it->second;
    FormulaId id = (FormulaId)nodes_.size();
    nodes_.push_back(n);
    cons_.emplace(key, id);
    return id;
}

FormulaId FormulaPool::bot() { return intern(FormulaNode{}); }

FormulaId FormulaPool::top() {
    FormulaNode n;
    n.conn = Conn::Top;
    return intern(n);
}

FormulaId FormulaPool::atom(AtomKind k, Term l, Term r) {
    FormulaNode n;
    n.conn = Conn::Atom;
    n.atom = k;
    n.lhs = l;
    n.rhs = r;
    if (l.kind == Term::Kind::Var) n.free_mask |= 1ull << l.id;
    if (r.kind == Term::Kind::Var) n.free_mask |= 1ull << r.id;
    return intern(n);
}

namespace {
std::uint16_t up_depth(const FormulaNode& a) { return (std::uint16_t)(a.depth + 1); }
std::uint16_t up_depth(const FormulaNode& a, const FormulaNode& b) {
    return (std::uint16_t)(std::max(a.depth, b.depth) + 1);
}
}  // namespace

FormulaId FormulaPool::strong(FormulaId a, FormulaId b) {
    FormulaNode n;
    n.conn = Conn::Strong;
    n.child0 = a;
    n.child1 = b;
    n.depth = up_depth(nodes_[a], nodes_[b]);
    n.free_mask = nodes_[a].free_mask | nodes_[b].free_mask;
    return intern(n);
}

FormulaId FormulaPool::weak(FormulaId a, FormulaId b) {
    FormulaNode n;
    n.conn = Conn::Weak;
    n.child0 = a;
    n.child1 = b;
    n.depth = up_depth(nodes_[a], nodes_[b]);
    n.free_mask = nodes_[a].free_mask | nodes_[b].free_mask;
    return intern(n);
}

FormulaId FormulaPool::disj(FormulaId a, FormulaId b) {
    FormulaNode n;
    n.conn = Conn::Or;
    n.child0 = a;
    n.child1 = b;
    n.depth = up_depth(nodes_[a], nodes_[b]);
    n.free_mask = nodes_[a].free_mask | nodes_[b].free_mask;
    return intern(n);
}

FormulaId FormulaPool::imp(FormulaId a, FormulaId b) {
    FormulaNode n;
    n.conn = Conn::Imp;
    n.child0 = a;
    n.child1 = b;
    n.depth = up_depth(nodes_[a], nodes_[b]);
    n.free_mask = nodes_[a].free_mask | nodes_[b].free_mask;
    return intern(n);
}

FormulaId FormulaPool::neg(FormulaId a) {
    FormulaNode n;
    n.conn = Conn::Neg;
    n.child0 = a;
    n.depth = up_depth(nodes_[a]);
    n.free_mask = nodes_[a].free_mask;
    return intern(n);
}

FormulaId FormulaPool::equiv(FormulaId a, FormulaId b) {
    FormulaNode n;
    n.conn = Conn::Equiv;
    n.child0 = a;
    n.child1 = b;
    n.depth = up_depth(nodes_[a], nodes_[b]);
    n.free_mask = nodes_[a].free_mask | nodes_[b].free_mask;
    return intern(n);
}

FormulaId FormulaPool::forall(VarId v, FormulaId body) {
    FormulaNode n;
    n.conn = Conn::Forall;
    n.var = v;
    n.child0 = body;
    n.depth = up_depth(nodes_[body]);
    n.free_mask = nodes_[body].free_mask & ~(1ull << v);
    return intern(n);
}

FormulaId FormulaPool::exists(VarId v, FormulaId body) {
    FormulaNode n;
    n.conn = Conn::Exists;
    n.var = v;
    n.child0 = body;
    n.depth = up_depth(nodes_[body]);
    n.free_mask = nodes_[body].free_mask & ~(1ull << v);
    return intern(n);
}

VarId FormulaPool::var_id(std::string_view name) {
    auto it = var_ids_.find(std::string(name));
    if (it != var_ids_.end()) return it->second;
    if (var_names_.size() >= 64)
        throw std::runtime_error("formula pool supports at most 64 distinct variables");
    VarId id = (VarId)var_names_.size();
    var_names_.emplace_back(name);
    var_ids_.emplace(var_names_.back(), id);
    return id;
}

VarId FormulaPool::fresh_var(const std::string& base) {
    std::string name = base;
    while (var_ids_.count(name)) name += "'";
    return var_id(name);
}

std::vector<VarId> FormulaPool::free_vars(FormulaId f) const {
    std::vector<VarId> out;
    std::uint64_t m = nodes_[f].free_mask;
    for (VarId v = 0; m; ++v, m >>= 1)
        if (m & 1) out.push_back(v);
    return out;
}

// ---------------------------------------------------------------------------
// printing

namespace {
// binding levels, loosest first; quantifiers scope to the end of their group
constexpr int kEquiv = 1, kImp = 2, kOr = 3, kWeak = 4, kStrong = 5, kNeg = 6, kAtom = 7;
}  // namespace

std::string FormulaPool::print_prec(FormulaId f, int min_level) const {
    const FormulaNode& n = nodes_[f];
    auto term_str = [&](const Term& t) {
        return t.kind == Term::Kind::Var ? var_names_[t.id] : "#" + std::to_string(t.id);
    };
    auto wrap = [&](int level, const std::string& s) {
        return level < min_level ? "(" + s + ")" : s;
    };
    switch (n.conn) {
        case Conn::Bot: return "bot";
        case Conn::Top: return "top";
        case Conn::Atom: {
            const char* rel = n.atom == AtomKind::Mem ? " in " : n.atom == AtomKind::Eq ? " = " : " sub ";
            return term_str(n.lhs) + rel + term_str(n.rhs);
        }
        case Conn::Neg: {
            const FormulaNode& c = nodes_[n.child0];
            if (c.conn == Conn::Bot || c.conn == Conn::Top || c.conn == Conn::Neg)
                return wrap(kNeg, "~" + print_prec(n.child0, kNeg));
            return wrap(kNeg, "~(" + print_prec(n.child0, 0) + ")");
        }
        case Conn::Strong:
            return wrap(kStrong, print_prec(n.child0, kStrong) + " & " + print_prec(n.child1, kStrong + 1));
        case Conn::Weak:
            return wrap(kWeak, print_prec(n.child0, kWeak) + " /\\ " + print_prec(n.child1, kWeak + 1));
        case Conn::Or:
            return wrap(kOr, print_prec(n.child0, kOr) + " \\/ " + print_prec(n.child1, kOr + 1));
        case Conn::Imp:
            return wrap(kImp, print_prec(n.child0, kImp + 1) + " -> " + print_prec(n.child1, kImp));
        case Conn::Equiv:
            return wrap(kEquiv, print_prec(n.child0, kEquiv + 1) + " == " + print_prec(n.child1, kEquiv));
        case Conn::Forall:
        case Conn::Exists: {
            std::string s = (n.conn == Conn::Forall ? "A " : "E ") + var_names_[n.var] + ". " +
                            print_prec(n.child0, 0);
            return min_level > 0 ? "(" + s + ")" : s;
        }
    }
    return "?";
}

std::string FormulaPool::print(FormulaId f) const { return print_prec(f, 0); }

// ---------------------------------------------------------------------------
// parsing

namespace {

enum class Tok {
    End, LParen, RParen, Tilde, Amp, WeakAnd, OrOr, Arrow, EqEq, Eq, Dot,
    In, Sub, Bot, Top, Ident, Const
};

struct Token {
    Tok kind;
    std::size_t pos;
    std::string text;   // Ident
    std::uint32_t num;  // Const
};

class Lexer {
public:
    explicit Lexer(std::string_view s) : s_(s) { advance(); }
    const Token& peek(int k = 0) {
        while ((int)buf_.size() <= k) buf_.push_back(lex());
        return buf_[k];
    }
    Token next() {
        Token t = peek();
        buf_.erase(buf_.begin());
        return t;
    }

private:
    void advance() {}
    Token lex() {
        while (i_ < s_.size() && (s_[i_] == ' ' || s_[i_] == '\t' || s_[i_] == '\r')) ++i_;
        std::size_t pos = i_;
        if (i_ >= s_.size()) return {Tok::End, pos, "", 0};
        char c = s_[i_];
        auto one = [&](Tok k) { ++i_; return Token{k, pos, "", 0}; };
        switch (c) {
            case '(': return one(Tok::LParen);
            case ')': return one(Tok::RParen);
            case '~': return one(Tok::Tilde);
            case '&': return one(Tok::Amp);
            case '.': return one(Tok::Dot);
            case '/':
                if (i_ + 1 < s_.size() && s_[i_ + 1] == '\\') { i_ += 2; return {Tok::WeakAnd, pos, "", 0}; }
                throw ParseError(pos, "expected '/\\'");
            case '\\':
                if (i_ + 1 < s_.size() && s_[i_ + 1] == '/') { i_ += 2; return {Tok::OrOr, pos, "", 0}; }
                throw ParseError(pos, "expected '\\/'");
            case '-':
                if (i_ + 1 < s_.size() && s_[i_ + 1] == '>') { i_ += 2; return {Tok::Arrow, pos, "", 0}; }
                throw ParseError(pos, "expected '->'");
            case '=':
                if (i_ + 1 < s_.size() && s_[i_ + 1] == '=') { i_ += 2; return {Tok::EqEq, pos, "", 0}; }
                ++i_;
                return {Tok::Eq, pos, "", 0};
            case '#': {
                ++i_;
                if (i_ >= s_.size() || !std::isdigit((unsigned char)s_[i_]))
                    throw ParseError(pos, "expected digits after '#'");
                std::uint32_t v = 0;
                while (i_ < s_.size() && std::isdigit((unsigned char)s_[i_]))
                    v = v * 10 + (std::uint32_t)(s_[i_++] - '0');
                return {Tok::Const, pos, "", v};
            }
            default: break;
        }
        if (std::isalpha((unsigned char)c) || c == '_') {
            std::size_t j = i_;
            while (j < s_.size() && (std::isalnum((unsigned char)s_[j]) || s_[j] == '_' || s_[j] == '\''))
                ++j;
            std::string word(s_.substr(i_, j - i_));
            i_ = j;
            if (word == "in") return {Tok::In, pos, "", 0};
            if (word == "sub") return {Tok::Sub, pos, "", 0};
            if (word == "bot") return {Tok::Bot, pos, "", 0};
            if (word == "top") return {Tok::Top, pos, "", 0};
            return {Tok::Ident, pos, std::move(word), 0};
        }
        throw ParseError(pos, std::string("unexpected character '") + c + "'");
    }

    std::string_view s_;
    std::size_t i_ = 0;
    std::vector<Token> buf_;
};

class Parser {
public:
    Parser(FormulaPool& pool, std::string_view text) : pool_(pool), lex_(text) {}

    FormulaId run() {
        FormulaId f = formula();
        if (lex_.peek().kind != Tok::End)
            throw ParseError(lex_.peek().pos, "trailing input after formula");
        return f;
    }

private:
    FormulaId formula() { return equiv_level(); }

    FormulaId equiv_level() {
        FormulaId a = imp_level();
        if (lex_.peek().kind == Tok::EqEq) {
            lex_.next();
            return pool_.equiv(a, equiv_level());
        }
        return a;
    }

    FormulaId imp_level() {
        FormulaId a = or_level();
        if (lex_.peek().kind == Tok::Arrow) {
            lex_.next();
            return pool_.imp(a, imp_level());
        }
        return a;
    }

    FormulaId or_level() {
        FormulaId a = weak_level();
        while (lex_.peek().kind == Tok::OrOr) {
            lex_.next();
            a = pool_.disj(a, weak_level());
        }
        return a;
    }

    FormulaId weak_level() {
        FormulaId a = strong_level();
        while (lex_.peek().kind == Tok::WeakAnd) {
            lex_.next();
            a = pool_.weak(a, strong_level());
        }
        return a;
    }

    FormulaId strong_level() {
        FormulaId a = unary();
        while (lex_.peek().kind == Tok::Amp) {
            lex_.next();
            a = pool_.strong(a, unary());
        }
        return a;
    }

    FormulaId unary() {
        const Token& t = lex_.peek();
        if (t.kind == Tok::Tilde) {
            lex_.next();
            return pool_.neg(unary());
        }
        // quantifier: 'A'/'E' variable '.'; scope runs to the end of the group
        if (t.kind == Tok::Ident && (t.text == "A" || t.text == "E") &&
            lex_.peek(1).kind == Tok::Ident && lex_.peek(2).kind == Tok::Dot) {
            bool universal = t.text == "A";
            lex_.next();
            VarId v = pool_.var_id(lex_.next().text);
            lex_.next();  // '.'
            FormulaId body = formula();
            return universal ? pool_.forall(v, body) : pool_.exists(v, body);
        }
        return atom_or_group();
    }

    FormulaId atom_or_group() {
        Token t = lex_.next();
        switch (t.kind) {
            case Tok::LParen: {
                FormulaId f = formula();
                Token close = lex_.next();
                if (close.kind != Tok::RParen) throw ParseError(close.pos, "expected ')'");
                return f;
            }
            case Tok::Bot: return pool_.bot();
            case Tok::Top: return pool_.top();
            case Tok::Ident:
            case Tok::Const: {
                Term lhs = t.kind == Tok::Ident ? Term::var(pool_.var_id(t.text))
                                                : Term::constant(t.num);
                Token rel = lex_.next();
                AtomKind kind;
                if (rel.kind == Tok::In) kind = AtomKind::Mem;
                else if (rel.kind == Tok::Eq) kind = AtomKind::Eq;
                else if (rel.kind == Tok::Sub) kind = AtomKind::Sub;
                else throw ParseError(rel.pos, "expected 'in', '=' or 'sub' after term");
                Token rt = lex_.next();
                Term rhs;
                if (rt.kind == Tok::Ident) rhs = Term::var(pool_.var_id(rt.text));
                else if (rt.kind == Tok::Const) rhs = Term::constant(rt.num);
                else throw ParseError(rt.pos, "expected a term");
                return pool_.atom(kind, lhs, rhs);
            }
            default:
                throw ParseError(t.pos, "expected a formula");
        }
    }

    FormulaPool& pool_;
    Lexer lex_;
};

}  // namespace

FormulaId FormulaPool::parse(std::string_view text) {
    Parser p(*this, text);
    return p.run();
}

// ---------------------------------------------------------------------------
// substitution

FormulaId FormulaPool::substitute(FormulaId f, VarId v, Term t) {
    const FormulaNode n = nodes_[f];  // copy: interning may reallocate nodes_
    if (!(n.free_mask & (1ull << v))) return f;
    switch (n.conn) {
        case Conn::Bot:
        case Conn::Top:
            return f;
        case Conn::Atom: {
            Term l = n.lhs, r = n.rhs;
            if (l.kind == Term::Kind::Var && l.id == v) l = t;
            if (r.kind == Term::Kind::Var && r.id == v) r = t;
            return atom(n.atom, l, r);
        }
        case Conn::Neg:
            return neg(substitute(n.child0, v, t));
        case Conn::Strong:
            return strong(substitute(n.child0, v, t), substitute(n.child1, v, t));
        case Conn::Weak:
            return weak(substitute(n.child0, v, t), substitute(n.child1, v, t));
        case Conn::Or:
            return disj(substitute(n.child0, v, t), substitute(n.child1, v, t));
        case Conn::Imp:
            return imp(substitute(n.child0, v, t), substitute(n.child1, v, t));
        case Conn::Equiv:
            return equiv(substitute(n.child0, v, t), substitute(n.child1, v, t));
        case Conn::Forall:
        case Conn::Exists: {
            // n.var != v here, else v would not be free
            FormulaId body = n.child0;
            VarId bound = n.var;
            if (t.kind == Term::Kind::Var && t.id == bound) {
                VarId renamed = fresh_var(var_name(bound));
                body = substitute(body, bound, Term::var(renamed));
                bound = renamed;
            }
            body = substitute(body, v, t);
            return n.conn == Conn::Forall ? forall(bound, body) : exists(bound, body);
        }
    }
    return f;
}

int FormulaPool::count_free_occurrences(FormulaId f, VarId v) const {
    const FormulaNode& n = nodes_[f];
    if (!(n.free_mask & (1ull << v))) return 0;
    switch (n.conn) {
        case Conn::Bot:
        case Conn::Top:
            return 0;
        case Conn::Atom: {
            int c = 0;
            if (n.lhs.kind == Term::Kind::Var && n.lhs.id == v) ++c;
            if (n.rhs.kind == Term::Kind::Var && n.rhs.id == v) ++c;
            return c;
        }
        case Conn::Neg:
            return count_free_occurrences(n.child0, v);
        case Conn::Forall:
        case Conn::Exists:
            return n.var == v ? 0 : count_free_occurrences(n.child0, v);
        default:
            return count_free_occurrences(n.child0, v) + count_free_occurrences(n.child1, v);
    }
}

}  // namespace qlab
