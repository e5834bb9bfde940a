#include "qlab/hfset.hpp"

#include <algorithm>
#include <stdexcept>

namespace qlab {

HFSet::HFSet(std::vector<HFSet> children) : children_(std::move(children)) {
    std::sort(children_.begin(), children_.end());
    children_.erase(std::unique(children_.begin(), children_.end()), children_.end());
}

int HFSet::rank() const {
    int r = 0;
    for (const auto& c : children_) r = std::max(r, c.rank() + 1);
    return r;
}

std::strong_ordering HFSet::operator<=>(const HFSet& o) const {
    std::size_t n = std::min(children_.size(), o.children_.size());
    for (std::size_t i = 0; i < n; ++i)
        if (auto c = children_[i] <=> o.children_[i]; c != 0) return c;
    return children_.size() <=> o.children_.size();
}

bool HFSet::contains(const HFSet& x) const {
    return std::binary_search(children_.begin(), children_.end(), x);
}

bool HFSet::subset_of(const HFSet& o) const {
    for (const auto& c : children_)
        if (!o.contains(c)) return false;
    return true;
}

std::string HFSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < children_.size(); ++i) {
        if (i) s += ",";
        s += children_[i].to_string();
    }
    return s + "}";
}

std::vector<HFSet> HFSet::universe_up_to_rank(int r) {
    std::vector<HFSet> level{HFSet{}};
    for (int k = 0; k < r; ++k) {
        // all subsets of the previous level
        std::vector<HFSet> next;
        std::size_t n = level.size();
        if (n > 20) throw std::runtime_error("HF universe too large to materialize");
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
            std::vector<HFSet> children;
            for (std::size_t i = 0; i < n; ++i)
                if (mask & (1u << i)) children.push_back(level[i]);
            next.emplace_back(std::move(children));
        }
        std::sort(next.begin(), next.end());
        next.erase(std::unique(next.begin(), next.end()), next.end());
        level = std::move(next);
    }
    return level;
}

bool classical_eval(const FormulaPool& pool, FormulaId f,
                    const std::vector<HFSet>& universe, HFEnv& env) {
    const FormulaNode& n = pool.node(f);
    auto resolve = [&](const Term& t) -> const HFSet& {
        if (t.kind == Term::Kind::Var) {
            if (t.id >= env.slots.size() || env.slots[t.id] == nullptr)
                throw std::runtime_error("unbound variable '" + pool.var_name(t.id) +
                                         "' in classical evaluation");
            return *env.slots[t.id];
        }
        if (t.id >= universe.size())
            throw std::runtime_error("constant #" + std::to_string(t.id) +
                                     " outside the classical universe");
        return universe[t.id];
    };
    switch (n.conn) {
        case Conn::Bot: return false;
        case Conn::Top: return true;
        case Conn::Atom: {
            const HFSet& l = resolve(n.lhs);
            const HFSet& r = resolve(n.rhs);
            switch (n.atom) {
                case AtomKind::Mem: return r.contains(l);
                case AtomKind::Eq: return l == r;
                case AtomKind::Sub: return l.subset_of(r);
            }
            return false;
        }
        case Conn::Strong:
        case Conn::Weak:
            return classical_eval(pool, n.child0, universe, env) &&
                   classical_eval(pool, n.child1, universe, env);
        case Conn::Or:
            return classical_eval(pool, n.child0, universe, env) ||
                   classical_eval(pool, n.child1, universe, env);
        case Conn::Imp:
            return !classical_eval(pool, n.child0, universe, env) ||
                   classical_eval(pool, n.child1, universe, env);
        case Conn::Equiv:
            return classical_eval(pool, n.child0, universe, env) ==
                   classical_eval(pool, n.child1, universe, env);
        case Conn::Neg:
            return !classical_eval(pool, n.child0, universe, env);
        case Conn::Forall: {
            for (const auto& s : universe) {
                env.bind(n.var, s);
                if (!classical_eval(pool, n.child0, universe, env)) {
                    env.slots[n.var] = nullptr;
                    return false;
                }
            }
            if (n.var < env.slots.size()) env.slots[n.var] = nullptr;
            return true;
        }
        case Conn::Exists: {
            for (const auto& s : universe) {
                env.bind(n.var, s);
                if (classical_eval(pool, n.child0, universe, env)) {
                    env.slots[n.var] = nullptr;
                    return true;
                }
            }
            if (n.var < env.slots.size()) env.slots[n.var] = nullptr;
            return false;
        }
    }
    return false;
}

}  // namespace qlab
