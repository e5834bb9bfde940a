#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace qlab {

using FormulaId = std::uint32_t;
using VarId = std::uint32_t;
using ElemId = std::uint32_t;

inline constexpr FormulaId kNoFormula = 0xffffffff;

enum class Conn : std::uint8_t {
    Bot, Top, Atom, Strong, Weak, Or, Imp, Neg, Equiv, Forall, Exists
};

enum class AtomKind : std::uint8_t { Mem, Eq, Sub };

struct Term {
    enum class Kind : std::uint8_t { Var, Const };
    Kind kind = Kind::Var;
    std::uint32_t id = 0;  // VarId or ElemId

    static Term var(VarId v) { return {Kind::Var, v}; }
    static Term constant(ElemId e) { return {Kind::Const, e}; }
    bool operator==(const Term&) const = default;
};

/// One node of a hash-consed formula DAG. Structural equality of formulas is
/// id equality; children are always ids of earlier nodes.
struct FormulaNode {
    Conn conn = Conn::Bot;
    AtomKind atom = AtomKind::Mem;
    Term lhs, rhs;             // atoms
    FormulaId child0 = kNoFormula, child1 = kNoFormula;
    VarId var = 0;             // quantifiers
    std::uint16_t depth = 0;   // connective nesting depth; atoms and constants are 0
    std::uint64_t free_mask = 0;  // bit i set iff variable id i occurs free
};

struct ParseError : std::runtime_error {
    std::size_t position;  // byte offset into the input
    ParseError(std::size_t pos, const std::string& msg)
        : std::runtime_error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
};

/// Owns formula nodes and the variable symbol table. Construction functions
/// intern structurally, so building the same formula twice yields the same id.
/// At most 64 distinct variable names per pool (the free-variable bitmask).
class FormulaPool {
public:
    FormulaId bot();
    FormulaId top();
    FormulaId atom(AtomKind k, Term l, Term r);
    FormulaId strong(FormulaId a, FormulaId b);
    FormulaId weak(FormulaId a, FormulaId b);
    FormulaId disj(FormulaId a, FormulaId b);
    FormulaId imp(FormulaId a, FormulaId b);
    FormulaId neg(FormulaId a);
    FormulaId equiv(FormulaId a, FormulaId b);
    FormulaId forall(VarId v, FormulaId body);
    FormulaId exists(VarId v, FormulaId body);

    VarId var_id(std::string_view name);
    const std::string& var_name(VarId v) const { return var_names_.at(v); }
    std::size_t var_count() const { return var_names_.size(); }

    const FormulaNode& node(FormulaId f) const { return nodes_[f]; }
    std::size_t size() const { return nodes_.size(); }

    int depth(FormulaId f) const { return nodes_[f].depth; }
    std::uint64_t free_mask(FormulaId f) const { return nodes_[f].free_mask; }
    std::vector<VarId> free_vars(FormulaId f) const;
    bool is_sentence(FormulaId f) const { return nodes_[f].free_mask == 0; }

    /// Concrete syntax. Round-trips: parse(print(f)) == f.
    std::string print(FormulaId f) const;
    FormulaId parse(std::string_view text);

    /// Capture-avoiding substitution of `t` for free occurrences of `v`.
    FormulaId substitute(FormulaId f, VarId v, Term t);
    /// Number of free occurrences of `v` (atom arguments counted separately).
    int count_free_occurrences(FormulaId f, VarId v) const;

private:
    FormulaId intern(FormulaNode n);
    std::string print_prec(FormulaId f, int min_level) const;
    VarId fresh_var(const std::string& base);

    struct NodeKey {
        std::uint64_t a, b;
        bool operator==(const NodeKey&) const = default;
    };
    struct NodeKeyHash {
        std::size_t operator()(const NodeKey& k) const {
            std::uint64_t h = k.a * 0x9e3779b97f4a7c15ull ^ (k.b + 0x7f4a7c15u);
            h ^= h >> 29;
            return (std::size_t)(h * 0xbf58476d1ce4e5b9ull);
        }
    };
    static NodeKey key_of(const FormulaNode& n);

    std::vector<FormulaNode> nodes_;
    std::unordered_map<NodeKey, FormulaId, NodeKeyHash> cons_;
    std::vector<std::string> var_names_;
    std::unordered_map<std::string, VarId, std::hash<std::string>, std::equal_to<>> var_ids_;
};

}  // namespace qlab
