#pragma once

#include <compare>
#include <string>
#include <vector>

#include "qlab/formula.hpp"

namespace qlab {

/// A hereditarily finite set in canonical form: children are kept sorted and
/// duplicate-free under the recursive lexicographic order, so extensional
/// equality is structural equality.
class HFSet {
public:
    HFSet() = default;
    explicit HFSet(std::vector<HFSet> children);

    const std::vector<HFSet>& children() const { return children_; }
    bool empty() const { return children_.empty(); }
    int rank() const;  // rank({}) = 0

    bool operator==(const HFSet& o) const { return children_ == o.children_; }
    std::strong_ordering operator<=>(const HFSet& o) const;

    bool contains(const HFSet& x) const;    // x in this
    bool subset_of(const HFSet& o) const;

    std::string to_string() const;  // {{},{{}}} notation

    /// Every hereditarily finite set of rank <= r, sorted canonically.
    static std::vector<HFSet> universe_up_to_rank(int r);

private:
    std::vector<HFSet> children_;
};

/// Variable assignment for classical evaluation over HF sets.
struct HFEnv {
    std::vector<const HFSet*> slots;  // indexed by VarId; null = unbound
    void bind(VarId v, const HFSet& s) {
        if (slots.size() <= v) slots.resize(v + 1, nullptr);
        slots[v] = &s;
    }
};

/// Classical two-valued evaluation of a formula over the structure
/// (universe, in): both conjunctions mean "and", quantifiers range over
/// `universe`, Const terms index into `universe`. This is the independent
/// oracle side of the hat-transfer checks; it never touches quantale
/// machinery.
bool classical_eval(const FormulaPool& pool, FormulaId f,
                    const std::vector<HFSet>& universe, HFEnv& env);

}  // namespace qlab
