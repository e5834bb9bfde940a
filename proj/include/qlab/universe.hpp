#pragma once

#include <map>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "qlab/formula.hpp"
#include "qlab/hfset.hpp"
#include "qlab/quantale.hpp"

namespace qlab {

struct BudgetError : std::runtime_error {
    std::uint64_t requested;
    BudgetError(std::uint64_t req, const std::string& what)
        : std::runtime_error(what), requested(req) {}
};

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An element of V^Q: a function from earlier elements to quantale values.
struct VElem {
    std::vector<std::pair<ElemId, QVal>> entries;  // sorted by child id, keys distinct
    std::uint32_t rank = 1;                        // empty function has rank 1
};

struct EvalEnv {
    std::vector<ElemId> slot;
    std::vector<std::uint8_t> bound;
    void bind(VarId v, ElemId e) {
        if (slot.size() <= v) {
            slot.resize(v + 1, 0);
            bound.resize(v + 1, 0);
        }
        slot[v] = e;
        bound[v] = 1;
    }
    bool is_bound(VarId v) const { return v < bound.size() && bound[v]; }
};

/// The ambient universe for one quantale: an intern table of V^Q elements
/// plus write-once caches for the three atomic valuations. Element ids are
/// assigned in interning order, so identical construction sequences produce
/// identical ids. Valuation is pure apart from the caches; precompute_atomics
/// fills them for every interned pair, after which evaluation is read-only
/// and safe to share across threads (a cache miss inside an OpenMP parallel
/// region is rejected instead of racing).
class Universe {
public:
    explicit Universe(Quantale q, std::uint64_t element_budget = default_budget());

    const Quantale& quantale() const { return q_; }
    std::uint64_t budget() const { return budget_; }

    /// Entries must reference earlier elements; repeated keys are invalid.
    ElemId intern(std::vector<std::pair<ElemId, QVal>> entries);
    ElemId empty_elem() { return intern({}); }
    const VElem& elem(ElemId e) const { return elems_.at(e); }
    std::size_t size() const { return elems_.size(); }

    QVal val_sub(ElemId f, ElemId g);  // [[f sub g]]
    QVal val_eq(ElemId f, ElemId g);   // [[f = g]]
    QVal val_mem(ElemId f, ElemId g);  // [[f in g]]

    /// Diagnostic variant where equality combines the two inclusions with the
    /// meet instead of the product (the combination the two-valuedness proof
    /// manipulates). Kept in separate caches.
    QVal val_eq_meet_variant(ElemId f, ElemId g);

    void precompute_atomics();
    void clear_atomic_caches();

    /// Compound valuation over an explicit quantifier carrier.
    QVal eval(std::span<const ElemId> carrier, const FormulaPool& pool, FormulaId f,
              EvalEnv& env);

    /// Canonical embedding of a hereditarily finite set: every membership
    /// weight is top. Injective on canonical HF sets via interning.
    ElemId hat(const HFSet& x);

    /// `id rank {child:label,...}` with quantale labels for the values.
    std::string dump_elem(ElemId e) const;

    static std::uint64_t default_budget();

private:
    enum Rel : int { kSub = 0, kEq = 1, kMem = 2, kSubMeet = 3, kEqMeet = 4, kMemMeet = 5 };
    QVal atomic(Rel r, ElemId f, ElemId g);
    QVal compute_atomic(Rel r, ElemId f, ElemId g);
    void grow_cache(std::size_t need);

    Quantale q_;
    std::uint64_t budget_;
    std::vector<VElem> elems_;
    std::unordered_map<std::string, ElemId> intern_;
    std::map<HFSet, ElemId> hat_cache_;

    static constexpr std::uint16_t kUnset = 0xffff;
    std::size_t cache_dim_ = 0;
    std::vector<std::uint16_t> cache_[6];
};

}  // namespace qlab
