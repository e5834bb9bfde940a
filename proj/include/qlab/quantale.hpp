#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "qlab/report.hpp"

namespace qlab {

/// Index of a carrier element within one quantale. Operations bounds-check
/// their arguments; an index from a larger carrier is rejected.
using QVal = std::uint32_t;

struct ValidationError : std::runtime_error {
    std::string axiom;              // machine-readable axiom id, e.g. "product.commutative"
    std::vector<QVal> witness;      // carrier indices certifying the violation
    ValidationError(std::string ax, std::vector<QVal> wit, const std::string& what)
        : std::runtime_error(what), axiom(std::move(ax)), witness(std::move(wit)) {}
};

/// A finite commutative integral quantale: a complete bounded lattice with a
/// commutative monoid product that has the top as unit and distributes over
/// arbitrary joins. The residuum x->y = sup{z : x*z <= y} is precomputed at
/// construction, as are meet and join, so all operations are table lookups.
/// A constructed Quantale is immutable and safe to share across threads.
class Quantale {
public:
    /// Validates every axiom exhaustively and precomputes derived tables.
    /// Throws ValidationError naming the violated axiom and a witness tuple.
    static Quantale from_tables(std::string name,
                                std::vector<std::string> labels,
                                const std::vector<std::vector<std::uint8_t>>& leq,
                                const std::vector<std::vector<QVal>>& product,
                                QVal bottom, QVal top);

    /// Carrier {0, 1/(n-1), ..., 1} with product max(x+y-1, 0).
    static Quantale lukasiewicz_chain(int n);
    /// Carrier {0, 1/(n-1), ..., 1} with product min(x, y).
    static Quantale godel_chain(int n);
    /// Powerset algebra of `atoms` generators; product is meet.
    static Quantale boolean_algebra(int atoms);
    /// Down-sets of a finite poset ordered by inclusion; product is meet.
    /// `below` lists pairs (a, b) meaning a <= b; reflexive-transitive closure
    /// is taken, and the result must be antisymmetric.
    static Quantale heyting_from_poset(int poset_size,
                                       const std::vector<std::pair<int, int>>& below);
    /// The n-element Heyting chain (down-sets of an (n-1)-chain).
    static Quantale heyting_chain(int n);

    /// "lukasiewicz:5", "godel:4", "boolean:2", "heyting:chain:3".
    /// Throws std::invalid_argument for unknown names.
    static Quantale from_name(const std::string& name);
    static Quantale from_json(const nlohmann::json& j, std::string name);
    nlohmann::json to_json() const;

    std::size_t size() const { return labels_.size(); }
    const std::string& name() const { return name_; }
    const std::string& label(QVal x) const { check(x); return labels_[x]; }
    std::optional<QVal> value_of_label(const std::string& label) const;

    QVal bottom() const { return bottom_; }
    QVal top() const { return top_; }
    bool leq(QVal x, QVal y) const { check(x); check(y); return leq_[x * n_ + y] != 0; }

    QVal meet(QVal x, QVal y) const { check(x); check(y); return meet_[x * n_ + y]; }
    QVal join(QVal x, QVal y) const { check(x); check(y); return join_[x * n_ + y]; }
    QVal product(QVal x, QVal y) const { check(x); check(y); return product_[x * n_ + y]; }
    QVal residuum(QVal x, QVal y) const { check(x); check(y); return residuum_[x * n_ + y]; }

    QVal neg(QVal x) const { return residuum(x, bottom_); }
    QVal equiv(QVal x, QVal y) const { return product(residuum(x, y), residuum(y, x)); }
    QVal power(QVal x, unsigned n) const;

    bool is_idempotent() const;
    bool two_valued(QVal x) const { return x == bottom_ || x == top_; }

    /// Exhaustive re-check of every construction invariant, reported instead
    /// of thrown. Used by the CLI validate command and the algebra suite.
    Report validate_report() const;

private:
    Quantale() = default;
    void check(QVal x) const {
        if (x >= n_) throw std::out_of_range("element " + std::to_string(x) +
                                             " is foreign to quantale " + name_);
    }

    std::string name_;
    std::vector<std::string> labels_;
    std::size_t n_ = 0;
    std::vector<std::uint8_t> leq_;
    std::vector<QVal> product_, meet_, join_, residuum_;
    QVal bottom_ = 0, top_ = 0;
};

/// Exhaustive checks of the derived-operation theorems: every universally
/// quantified item of the two quantale theorem lists, the {0,1}-closure
/// theorem, and the Boolean-subalgebra corollary. "Not in general" clauses
/// are scanned for witnesses and recorded as info either way. Also records
/// idempotency (with a counterexample when absent) and, on idempotent
/// quantales, the product-equals-meet collapse.
Report validate_theorem_suite(const Quantale& q);

/// Idempotency collapse check on its own (the folklore theorem).
Report check_heyting_collapse(const Quantale& q);

/// Independent recomputation of the residuum table: for each pair, collect
/// {z : x*z <= y} from the raw leq matrix and find its greatest element by
/// scan, never touching the join or residuum tables. Reports any mismatch.
Report check_residuum_oracle(const Quantale& q);

}  // namespace qlab
