#include "qlab/universe.hpp"

#include <algorithm>
#include <cstdlib>

#ifdef QLAB_HAVE_OPENMP
#include <omp.h>
#endif

namespace qlab {

std::uint64_t Universe::default_budget() {
    if (const char* env = std::getenv("QLAB_BUDGET")) {
        char* end = nullptr;
        unsigned long long v = std::strtoull(env, &end, 10);
        if (end && *end == '\0' && v > 0) return v;
    }
    return 4096;
}

Universe::Universe(Quantale q, std::uint64_t element_budget)
    : q_(std::move(q)), budget_(element_budget) {
    if (q_.size() >= kUnset)
        throw std::invalid_argument("quantale too large for the valuation cache");
}

ElemId Universe::intern(std::vector<std::pair<ElemId, QVal>> entries) {
    std::sort(entries.begin(), entries.end());
    std::string key;
    key.reserve(entries.size() * 8);
    std::uint32_t rank = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
        auto [child, val] = entries[i];
        if (child >= elems_.size())
            throw std::invalid_argument("entry key references an element not yet interned");
        if (i > 0 && entries[i - 1].first == child)
            throw std::invalid_argument("entry keys must be distinct (entries form a function)");
        if (val >= q_.size()) throw std::out_of_range("entry value outside the quantale");
        rank = std::max(rank, elems_[child].rank);
        for (int b = 0; b < 4; ++b) key.push_back((char)((child >> (8 * b)) & 0xff));
        for (int b = 0; b < 4; ++b) key.push_back((char)((val >> (8 * b)) & 0xff));
    }
    auto it = intern_.find(key);
    if (it != intern_.end()) return it->second;
    if (elems_.size() >= budget_)
        throw BudgetError(elems_.size() + 1,
                          "element budget of " + std::to_string(budget_) + " exhausted");
    ElemId id = (ElemId)elems_.size();
    elems_.push_back(VElem{std::move(entries), rank + 1});
    intern_.emplace(std::move(key), id);
    return id;
}

void Universe::grow_cache(std::size_t need) {
    if (need <= cache_dim_) return;
    std::size_t dim = std::max<std::size_t>(64, cache_dim_);
    while (dim < need) dim *= 2;
    for (auto& c : cache_) {
        std::vector<std::uint16_t> grown(dim * dim, kUnset);
        for (std::size_t i = 0; i < cache_dim_; ++i)
            std::copy_n(c.begin() + (std::ptrdiff_t)(i * cache_dim_), cache_dim_,
                        grown.begin() + (std::ptrdiff_t)(i * dim));
        c = std::move(grown);
    }
    cache_dim_ = dim;
}

QVal Universe::atomic(Rel r, ElemId f, ElemId g) {
    if (f >= elems_.size() || g >= elems_.size())
        throw EvalError("atomic valuation of an element that is not interned");
    if (f < cache_dim_ && g < cache_dim_) {
        std::uint16_t v = cache_[r][f * cache_dim_ + g];
        if (v != kUnset) return v;
    }
#ifdef QLAB_HAVE_OPENMP
    if (omp_in_parallel())
        throw std::logic_error("atomic cache miss inside a parallel region; "
                               "call precompute_atomics() first");
#endif
    grow_cache(elems_.size());
    QVal v = compute_atomic(r, f, g);
    cache_[r][f * cache_dim_ + g] = (std::uint16_t)v;
    return v;
}

QVal Universe::compute_atomic(Rel r, ElemId f, ElemId g) {
    // recursion descends the well-founded relation on rank sums
    const bool meet_eq = r >= kSubMeet;
    const Rel rel_sub = meet_eq ? kSubMeet : kSub;
    const Rel rel_eq = meet_eq ? kEqMeet : kEq;
    const Rel rel_mem = meet_eq ? kMemMeet : kMem;
    switch (r) {
        case kSub:
        case kSubMeet: {
            QVal acc = q_.top();  // empty infimum
            for (auto [x, fx] : elems_[f].entries) {
                acc = q_.meet(acc, q_.residuum(fx, atomic(rel_mem, x, g)));
                if (acc == q_.bottom()) break;
            }
            return acc;
        }
        case kEq:
            return q_.product(atomic(kSub, f, g), atomic(kSub, g, f));
        case kEqMeet:
            return q_.meet(atomic(kSubMeet, f, g), atomic(kSubMeet, g, f));
        case kMem:
        case kMemMeet: {
            QVal acc = q_.bottom();  // empty supremum
            for (auto [x, gx] : elems_[g].entries) {
                acc = q_.join(acc, q_.product(gx, atomic(rel_eq, x, f)));
                if (acc == q_.top()) break;
            }
            return acc;
        }
        default:
            return q_.bottom();
    }
}

QVal Universe::val_sub(ElemId f, ElemId g) { return atomic(kSub, f, g); }
QVal Universe::val_eq(ElemId f, ElemId g) { return atomic(kEq, f, g); }
QVal Universe::val_mem(ElemId f, ElemId g) { return atomic(kMem, f, g); }
QVal Universe::val_eq_meet_variant(ElemId f, ElemId g) { return atomic(kEqMeet, f, g); }

void Universe::precompute_atomics() {
    grow_cache(elems_.size());
    for (ElemId f = 0; f < elems_.size(); ++f)
        for (ElemId g = 0; g < elems_.size(); ++g) {
            val_sub(f, g);
            val_eq(f, g);
            val_mem(f, g);
            val_eq_meet_variant(f, g);
        }
}

void Universe::clear_atomic_caches() {
    for (auto& c : cache_) c.assign(cache_dim_ * cache_dim_, kUnset);
}

QVal Universe::eval(std::span<const ElemId> carrier, const FormulaPool& pool, FormulaId f,
                    EvalEnv& env) {
    const FormulaNode& n = pool.node(f);
    auto resolve = [&](const Term& t) -> ElemId {
        if (t.kind == Term::Kind::Var) {
            if (!env.is_bound(t.id))
                throw EvalError("unbound variable '" + pool.var_name(t.id) + "'");
            return env.slot[t.id];
        }
        if (t.id >= elems_.size())
            throw EvalError("constant #" + std::to_string(t.id) + " is not interned");
        return t.id;
    };
    switch (n.conn) {
        case Conn::Bot: return q_.bottom();
        case Conn::Top: return q_.top();
        case Conn::Atom: {
            ElemId l = resolve(n.lhs), r = resolve(n.rhs);
            switch (n.atom) {
                case AtomKind::Mem: return val_mem(l, r);
                case AtomKind::Eq: return val_eq(l, r);
                case AtomKind::Sub: return val_sub(l, r);
            }
            return q_.bottom();
        }
        case Conn::Strong:
            return q_.product(eval(carrier, pool, n.child0, env), eval(carrier, pool, n.child1, env));
        case Conn::Weak:
            return q_.meet(eval(carrier, pool, n.child0, env), eval(carrier, pool, n.child1, env));
        case Conn::Or:
            return q_.join(eval(carrier, pool, n.child0, env), eval(carrier, pool, n.child1, env));
        case Conn::Imp:
            return q_.residuum(eval(carrier, pool, n.child0, env),
                               eval(carrier, pool, n.child1, env));
        case Conn::Equiv:
            return q_.equiv(eval(carrier, pool, n.child0, env), eval(carrier, pool, n.child1, env));
        case Conn::Neg:
            return q_.neg(eval(carrier, pool, n.child0, env));
        case Conn::Forall: {
            QVal acc = q_.top();  // empty infimum
            bool was_bound = n.var < env.bound.size() && env.bound[n.var];
            ElemId saved = was_bound ? env.slot[n.var] : 0;
            for (ElemId c : carrier) {
                env.bind(n.var, c);
                acc = q_.meet(acc, eval(carrier, pool, n.child0, env));
                if (acc == q_.bottom()) break;
            }
            if (was_bound) env.slot[n.var] = saved;
            else if (n.var < env.bound.size()) env.bound[n.var] = 0;
            return acc;
        }
        case Conn::Exists: {
            QVal acc = q_.bottom();  // empty supremum
            bool was_bound = n.var < env.bound.size() && env.bound[n.var];
            ElemId saved = was_bound ? env.slot[n.var] : 0;
            for (ElemId c : carrier) {
                env.bind(n.var, c);
                acc = q_.join(acc, eval(carrier, pool, n.child0, env));
                if (acc == q_.top()) break;
            }
            if (was_bound) env.slot[n.var] = saved;
            else if (n.var < env.bound.size()) env.bound[n.var] = 0;
            return acc;
        }
    }
    return q_.bottom();
}

ElemId Universe::hat(const HFSet& x) {
    auto it = hat_cache_.find(x);
    if (it != hat_cache_.end()) return it->second;
    std::vector<std::pair<ElemId, QVal>> entries;
    entries.reserve(x.children().size());
    for (const HFSet& y : x.children()) entries.emplace_back(hat(y), q_.top());
    ElemId id = intern(std::move(entries));
    hat_cache_.emplace(x, id);
    return id;
}

std::string Universe::dump_elem(ElemId e) const {
    const VElem& v = elem(e);
    std::string s = std::to_string(e) + " " + std::to_string(v.rank) + " {";
    for (std::size_t i = 0; i < v.entries.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v.entries[i].first) + ":" + q_.label(v.entries[i].second);
    }
    return s + "}";
}

}  // namespace qlab
