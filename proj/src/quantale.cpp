#include "qlab/quantale.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>

namespace qlab {
namespace {

std::string fraction_label(int num, int den) {
    if (num == 0) return "0";
    if (num == den) return "1";
    int g = std::gcd(num, den);
    return std::to_string(num / g) + "/" + std::to_string(den / g);
}

struct AxiomFailure {
    std::string axiom;
    std::vector<QVal> witness;
    std::string message;
};

/// Shared between construction (throwing) and validate_report (recording).
class Checker {
public:
    Checker(std::size_t n, const std::vector<std::uint8_t>& leq,
            const std::vector<QVal>& product, QVal bottom, QVal top,
            const std::vector<std::string>& labels)
        : n_(n), leq_(leq), product_(product), bottom_(bottom), top_(top), labels_(labels) {}

    const std::vector<AxiomFailure>& failures() const { return failures_; }

    bool leq(QVal x, QVal y) const { return leq_[x * n_ + y] != 0; }
    QVal prod(QVal x, QVal y) const { return product_[x * n_ + y]; }
    const std::string& lab(QVal x) const { return labels_[x]; }

    void fail(std::string axiom, std::vector<QVal> wit, std::string msg) {
        failures_.push_back({std::move(axiom), std::move(wit), std::move(msg)});
    }

    void check_order() {
        for (QVal x = 0; x < n_; ++x)
            if (!leq(x, x)) return fail("order.reflexive", {x}, lab(x) + " is not <= itself");
        for (QVal x = 0; x < n_; ++x)
            for (QVal y = 0; y < n_; ++y)
                if (x != y && leq(x, y) && leq(y, x))
                    return fail("order.antisymmetric", {x, y},
                                lab(x) + " and " + lab(y) + " are mutually <=");
        for (QVal x = 0; x < n_; ++x)
            for (QVal y = 0; y < n_; ++y) {
                if (!leq(x, y)) continue;
                for (QVal z = 0; z < n_; ++z)
                    if (leq(y, z) && !leq(x, z))
                        return fail("order.transitive", {x, y, z},
                                    lab(x) + " <= " + lab(y) + " <= " + lab(z) +
                                        " but not " + lab(x) + " <= " + lab(z));
            }
    }

    void check_bounds() {
        for (QVal x = 0; x < n_; ++x) {
            if (!leq(bottom_, x))
                return fail("order.bottom", {x}, "bottom is not below " + lab(x));
            if (!leq(x, top_))
                return fail("order.top", {x}, lab(x) + " is not below top");
        }
    }

    /// Greatest lower bound by scan over the raw order; nullopt if missing.
    std::optional<QVal> glb(QVal x, QVal y) const {
        std::optional<QVal> best;
        for (QVal z = 0; z < n_; ++z) {
            if (!leq(z, x) || !leq(z, y)) continue;
            if (!best || leq(*best, z)) {
                // candidate must dominate every lower bound seen so far
                bool greatest = true;
                for (QVal w = 0; w < n_; ++w)
                    if (leq(w, x) && leq(w, y) && !leq(w, z)) { greatest = false; break; }
                if (greatest) best = z;
            }
        }
        return best;
    }

    std::optional<QVal> lub(QVal x, QVal y) const {
        std::optional<QVal> best;
        for (QVal z = 0; z < n_; ++z) {
            if (!leq(x, z) || !leq(y, z)) continue;
            bool least = true;
            for (QVal w = 0; w < n_; ++w)
                if (leq(x, w) && leq(y, w) && !leq(z, w)) { least = false; break; }
            if (least) best = z;
        }
        return best;
    }

    bool build_lattice(std::vector<QVal>& meet, std::vector<QVal>& join) {
        meet.assign(n_ * n_, 0);
        join.assign(n_ * n_, 0);
        for (QVal x = 0; x < n_; ++x)
            for (QVal y = 0; y < n_; ++y) {
                auto m = glb(x, y);
                if (!m) {
                    fail("lattice.meet", {x, y},
                         "no greatest lower bound of " + lab(x) + ", " + lab(y));
                    return false;
                }
                auto j = lub(x, y);
                if (!j) {
                    fail("lattice.join", {x, y},
                         "no least upper bound of " + lab(x) + ", " + lab(y));
                    return false;
                }
                meet[x * n_ + y] = *m;
                join[x * n_ + y] = *j;
            }
        return true;
    }

    void check_monoid() {
        for (QVal x = 0; x < n_; ++x)
            for (QVal y = 0; y < n_; ++y)
                if (prod(x, y) != prod(y, x))
                    return fail("product.commutative", {x, y},
                                lab(x) + "*" + lab(y) + " = " + lab(prod(x, y)) + " but " +
                                    lab(y) + "*" + lab(x) + " = " + lab(prod(y, x)));
        for (QVal x = 0; x < n_; ++x)
            if (prod(x, top_) != x)
                return fail("product.unit", {x},
                            lab(x) + "*1 = " + lab(prod(x, top_)) + " != " + lab(x));
        for (QVal x = 0; x < n_; ++x)
            for (QVal y = 0; y < n_; ++y)
                for (QVal z = 0; z < n_; ++z)
                    if (prod(prod(x, y), z) != prod(x, prod(y, z)))
                        return fail("product.associative", {x, y, z},
                                    "(" + lab(x) + "*" + lab(y) + ")*" + lab(z) + " != " +
                                        lab(x) + "*(" + lab(y) + "*" + lab(z) + ")");
    }

    /// x * sup(S) = sup{x*s} for subsets S given by bit masks over the join
    /// table (which is already certified to give least upper bounds).
    void check_distributivity(const std::vector<QVal>& join) {
        auto fold_join = [&](const std::vector<QVal>& elems) {
            QVal acc = bottom_;  // empty supremum
            for (QVal e : elems) acc = join[acc * n_ + e];
            return acc;
        };
        auto check_subset = [&](const std::vector<QVal>& elems) -> bool {
            QVal sup = fold_join(elems);
            for (QVal x = 0; x < n_; ++x) {
                std::vector<QVal> mapped;
                mapped.reserve(elems.size());
                for (QVal e : elems) mapped.push_back(prod(x, e));
                if (prod(x, sup) != fold_join(mapped)) {
                    std::vector<QVal> wit{x};
                    wit.insert(wit.end(), elems.begin(), elems.end());
                    std::ostringstream msg;
                    msg << lab(x) << " * sup(S) != sup(" << lab(x) << "*S) for S = {";
                    for (std::size_t i = 0; i < elems.size(); ++i)
                        msg << (i ? "," : "") << lab(elems[i]);
                    msg << "}";
                    fail("product.join_distributive", std::move(wit), msg.str());
                    return false;
                }
            }
            return true;
        };

        if (n_ <= 12) {
            for (std::uint32_t mask = 0; mask < (1u << n_); ++mask) {
                std::vector<QVal> elems;
                for (QVal e = 0; e < n_; ++e)
                    if (mask & (1u << e)) elems.push_back(e);
                if (!check_subset(elems)) return;
            }
        } else {
            for (QVal a = 0; a < n_; ++a)
                for (QVal b = 0; b < n_; ++b)
                    if (!check_subset({a, b})) return;
            std::mt19937 rng(0x51ab);  // fixed seed: validation must be deterministic
            std::uniform_int_distribution<int> size_dist(1, (int)n_);
            std::uniform_int_distribution<QVal> elem_dist(0, (QVal)n_ - 1);
            for (int trial = 0; trial < 10000; ++trial) {
                std::vector<QVal> elems(size_dist(rng));
                for (auto& e : elems) e = elem_dist(rng);
                if (!check_subset(elems)) return;
            }
        }
    }

    std::vector<QVal> build_residuum(const std::vector<QVal>& join) {
        std::vector<QVal> res(n_ * n_, 0);
        for (QVal x = 0; x < n_; ++x)
            for (QVal y = 0; y < n_; ++y) {
                QVal acc = bottom_;
                for (QVal z = 0; z < n_; ++z)
                    if (leq(prod(x, z), y)) acc = join[acc * n_ + z];
                res[x * n_ + y] = acc;
            }
        return res;
    }

    void check_adjunction(const std::vector<QVal>& res) {
        for (QVal x = 0; x < n_; ++x)
            for (QVal y = 0; y < n_; ++y)
                for (QVal z = 0; z < n_; ++z) {
                    bool lhs = leq(prod(x, z), y);
                    bool rhs = leq(z, res[x * n_ + y]);
                    if (lhs != rhs)
                        return fail("residuum.adjunction", {x, y, z},
                                    lab(x) + "*" + lab(z) + " <= " + lab(y) + " is " +
                                        (lhs ? "true" : "false") + " but " + lab(z) +
                                        " <= " + lab(x) + "->" + lab(y) + " is " +
                                        (rhs ? "true" : "false"));
                }
    }

private:
    std::size_t n_;
    const std::vector<std::uint8_t>& leq_;
    const std::vector<QVal>& product_;
    QVal bottom_, top_;
    const std::vector<std::string>& labels_;
    std::vector<AxiomFailure> failures_;
};

}  // namespace

Quantale Quantale::from_tables(std::string name,
                               std::vector<std::string> labels,
                               const std::vector<std::vector<std::uint8_t>>& leq,
                               const std::vector<std::vector<QVal>>& product,
                               QVal bottom, QVal top) {
    const std::size_t n = labels.size();
    auto shape_error = [&](const std::string& what) {
        throw ValidationError("shape", {}, "quantale '" + name + "': " + what);
    };
    if (n == 0) shape_error("empty carrier");
    if (leq.size() != n || product.size() != n) shape_error("table row count != carrier size");
    for (const auto& row : leq)
        if (row.size() != n) shape_error("leq is not square");
    for (const auto& row : product) {
        if (row.size() != n) shape_error("product is not square");
        for (QVal v : row)
            if (v >= n) shape_error("product entry out of range");
    }
    if (bottom >= n || top >= n) shape_error("bottom/top out of range");

    Quantale q;
    q.name_ = std::move(name);
    q.labels_ = std::move(labels);
    q.n_ = n;
    q.bottom_ = bottom;
    q.top_ = top;
    q.leq_.resize(n * n);
    q.product_.resize(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            q.leq_[i * n + j] = leq[i][j] ? 1 : 0;
            q.product_[i * n + j] = product[i][j];
        }

    Checker c(n, q.leq_, q.product_, bottom, top, q.labels_);
    c.check_order();
    c.check_bounds();
    if (c.failures().empty()) c.build_lattice(q.meet_, q.join_);
    if (c.failures().empty()) c.check_monoid();
    if (c.failures().empty()) c.check_distributivity(q.join_);
    if (c.failures().empty()) {
        q.residuum_ = c.build_residuum(q.join_);
        c.check_adjunction(q.residuum_);
    }
    if (!c.failures().empty()) {
        const auto& f = c.failures().front();
        throw ValidationError(f.axiom, f.witness, "quantale '" + q.name_ + "': " + f.message);
    }
    return q;
}

Report Quantale::validate_report() const {
    Report rep;
    rep.command = "validate";
    rep.quantale = name_;

    std::vector<std::vector<std::uint8_t>> leq_rows(n_, std::vector<std::uint8_t>(n_));
    std::vector<std::vector<QVal>> prod_rows(n_, std::vector<QVal>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t j = 0; j < n_; ++j) {
            leq_rows[i][j] = leq_[i * n_ + j];
            prod_rows[i][j] = product_[i * n_ + j];
        }
    Checker c(n_, leq_, product_, bottom_, top_, labels_);
    c.check_order();
    c.check_bounds();
    std::vector<QVal> meet, join;
    if (c.failures().empty() && c.build_lattice(meet, join)) {
        c.check_monoid();
        if (c.failures().empty()) c.check_distributivity(join);
        if (c.failures().empty()) c.check_adjunction(residuum_);
    }
    if (c.failures().empty()) {
        rep.add("axioms", CheckStatus::pass).note = "order, lattice, monoid, distributivity, adjunction";
    } else {
        for (const auto& f : c.failures()) {
            auto& rec = rep.add("axiom." + f.axiom, CheckStatus::fail);
            rec.witnesses.push_back(f.message);
        }
    }
    return rep;
}

Quantale Quantale::lukasiewicz_chain(int n) {
    if (n < 2) throw std::invalid_argument("lukasiewicz chain needs n >= 2");
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = fraction_label(i, n - 1);
    std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n));
    std::vector<std::vector<QVal>> prod(n, std::vector<QVal>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            leq[i][j] = i <= j;
            prod[i][j] = (QVal)std::max(i + j - (n - 1), 0);
        }
    return from_tables("lukasiewicz:" + std::to_string(n), std::move(labels), leq, prod, 0,
                       (QVal)(n - 1));
}

Quantale Quantale::godel_chain(int n) {
    if (n < 2) throw std::invalid_argument("godel chain needs n >= 2");
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = fraction_label(i, n - 1);
    std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n));
    std::vector<std::vector<QVal>> prod(n, std::vector<QVal>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            leq[i][j] = i <= j;
            prod[i][j] = (QVal)std::min(i, j);
        }
    return from_tables("godel:" + std::to_string(n), std::move(labels), leq, prod, 0,
                       (QVal)(n - 1));
}

Quantale Quantale::boolean_algebra(int atoms) {
    if (atoms < 1) throw std::invalid_argument("boolean algebra needs at least one atom");
    if (atoms > 10) throw std::invalid_argument("boolean algebra capped at 10 atoms");
    const std::uint32_t n = 1u << atoms;
    std::vector<std::string> labels(n);
    for (std::uint32_t m = 0; m < n; ++m) {
        if (m == 0) labels[m] = "0";
        else if (m == n - 1) labels[m] = "1";
        else {
            std::string s;
            for (int a = 0; a < atoms; ++a)
                if (m & (1u << a)) s += (char)('a' + a);
            labels[m] = s;
        }
    }
    std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n));
    std::vector<std::vector<QVal>> prod(n, std::vector<QVal>(n));
    for (std::uint32_t x = 0; x < n; ++x)
        for (std::uint32_t y = 0; y < n; ++y) {
            leq[x][y] = (x & y) == x;
            prod[x][y] = x & y;
        }
    return from_tables("boolean:" + std::to_string(atoms), std::move(labels), leq, prod, 0, n - 1);
}

Quantale Quantale::heyting_from_poset(int poset_size,
                                      const std::vector<std::pair<int, int>>& below) {
    if (poset_size < 0 || poset_size > 20)
        throw std::invalid_argument("poset size out of supported range");
    const int p = poset_size;
    // reflexive-transitive closure of the given relation
    std::vector<std::vector<std::uint8_t>> rel(p, std::vector<std::uint8_t>(p, 0));
    for (int i = 0; i < p; ++i) rel[i][i] = 1;
    for (auto [a, b] : below) {
        if (a < 0 || a >= p || b < 0 || b >= p)
            throw ValidationError("poset.range", {}, "poset relation references missing element");
        rel[a][b] = 1;
    }
    for (int k = 0; k < p; ++k)
        for (int i = 0; i < p; ++i)
            for (int j = 0; j < p; ++j)
                if (rel[i][k] && rel[k][j]) rel[i][j] = 1;
    for (int i = 0; i < p; ++i)
        for (int j = 0; j < p; ++j)
            if (i != j && rel[i][j] && rel[j][i])
                throw ValidationError("poset.antisymmetric", {(QVal)i, (QVal)j},
                                      "poset relation has a cycle through " + std::to_string(i) +
                                          " and " + std::to_string(j));

    // carrier: all down-closed subsets, in increasing bitmask order
    std::vector<std::uint32_t> downsets;
    for (std::uint32_t mask = 0; mask < (1u << p); ++mask) {
        bool closed = true;
        for (int i = 0; i < p && closed; ++i) {
            if (!(mask & (1u << i))) continue;
            for (int j = 0; j < p; ++j)
                if (rel[j][i] && !(mask & (1u << j))) { closed = false; break; }
        }
        if (closed) downsets.push_back(mask);
    }
    const std::size_t n = downsets.size();
    std::vector<std::string> labels(n);
    std::vector<int> index_of(1u << p, -1);
    for (std::size_t i = 0; i < n; ++i) {
        index_of[downsets[i]] = (int)i;
        std::uint32_t m = downsets[i];
        if (m == 0) labels[i] = "{}";
        else {
            std::string s = "{";
            bool first = true;
            for (int a = 0; a < p; ++a)
                if (m & (1u << a)) {
                    if (!first) s += ",";
                    s += "p" + std::to_string(a);
                    first = false;
                }
            labels[i] = s + "}";
        }
    }
    std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n));
    std::vector<std::vector<QVal>> prod(n, std::vector<QVal>(n));
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            leq[x][y] = (downsets[x] & downsets[y]) == downsets[x];
            prod[x][y] = (QVal)index_of[downsets[x] & downsets[y]];
        }
    QVal top = (QVal)index_of[(1u << p) - 1];
    return from_tables("heyting:poset:" + std::to_string(p), std::move(labels), leq, prod,
                       (QVal)index_of[0], top);
}

Quantale Quantale::heyting_chain(int n) {
    if (n < 2) throw std::invalid_argument("heyting chain needs n >= 2");
    // down-sets of an (n-1)-chain form the n-chain; build directly with
    // readable labels instead of brace notation
    std::vector<std::string> labels(n);
    labels[0] = "0";
    labels[n - 1] = "1";
    for (int i = 1; i + 1 < n; ++i) labels[i] = "h" + std::to_string(i);
    std::vector<std::vector<std::uint8_t>> leq(n, std::vector<std::uint8_t>(n));
    std::vector<std::vector<QVal>> prod(n, std::vector<QVal>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            leq[i][j] = i <= j;
            prod[i][j] = (QVal)std::min(i, j);
        }
    return from_tables("heyting:chain:" + std::to_string(n), std::move(labels), leq, prod, 0,
                       (QVal)(n - 1));
}

Quantale Quantale::from_name(const std::string& name) {
    auto parse_int = [&](const std::string& s) {
        std::size_t pos = 0;
        int v = std::stoi(s, &pos);
        if (pos != s.size()) throw std::invalid_argument("bad number in quantale name: " + name);
        return v;
    };
    auto colon = name.find(':');
    if (colon == std::string::npos)
        throw std::invalid_argument("unknown quantale name: " + name);
    std::string kind = name.substr(0, colon);
    std::string rest = name.substr(colon + 1);
    if (kind == "lukasiewicz") return lukasiewicz_chain(parse_int(rest));
    if (kind == "godel") return godel_chain(parse_int(rest));
    if (kind == "boolean") return boolean_algebra(parse_int(rest));
    if (kind == "heyting") {
        auto colon2 = rest.find(':');
        if (colon2 != std::string::npos && rest.substr(0, colon2) == "chain")
            return heyting_chain(parse_int(rest.substr(colon2 + 1)));
    }
    throw std::invalid_argument("unknown quantale name: " + name);
}

Quantale Quantale::from_json(const nlohmann::json& j, std::string name) {
    auto labels = j.at("labels").get<std::vector<std::string>>();
    auto leq = j.at("leq").get<std::vector<std::vector<std::uint8_t>>>();
    auto product = j.at("product").get<std::vector<std::vector<QVal>>>();
    QVal bottom = j.at("bottom").get<QVal>();
    QVal top = j.at("top").get<QVal>();
    return from_tables(std::move(name), std::move(labels), leq, product, bottom, top);
}

nlohmann::json Quantale::to_json() const {
    nlohmann::json j;
    j["labels"] = labels_;
    std::vector<std::vector<std::uint8_t>> leq_rows(n_, std::vector<std::uint8_t>(n_));
    std::vector<std::vector<QVal>> prod_rows(n_, std::vector<QVal>(n_));
    for (std::size_t i = 0; i < n_; ++i)
        for (std::size_t k = 0; k < n_; ++k) {
            leq_rows[i][k] = leq_[i * n_ + k];
            prod_rows[i][k] = product_[i * n_ + k];
        }
    j["leq"] = leq_rows;
    j["product"] = prod_rows;
    j["bottom"] = bottom_;
    j["top"] = top_;
    return j;
}

std::optional<QVal> Quantale::value_of_label(const std::string& label) const {
    for (QVal i = 0; i < n_; ++i)
        if (labels_[i] == label) return i;
    return std::nullopt;
}

QVal Quantale::power(QVal x, unsigned n) const {
    check(x);
    QVal acc = top_;  // x^0 = 1
    for (unsigned i = 0; i < n; ++i) acc = product(acc, x);
    return acc;
}

bool Quantale::is_idempotent() const {
    for (QVal x = 0; x < n_; ++x)
        if (product(x, x) != x) return false;
    return true;
}

namespace {

/// Runs `pred` over all elements/pairs/triples and records pass or the first
/// few failing witnesses.
template <typename Pred>
void check_all1(Report& rep, const Quantale& q, const std::string& name, Pred pred) {
    auto& rec = rep.add(name, CheckStatus::pass);
    WitnessSink sink(rec);
    for (QVal x = 0; x < q.size(); ++x)
        if (!pred(x)) {
            rec.status = CheckStatus::fail;
            sink.offer("x=" + q.label(x));
        }
}

template <typename Pred>
void check_all2(Report& rep, const Quantale& q, const std::string& name, Pred pred) {
    auto& rec = rep.add(name, CheckStatus::pass);
    WitnessSink sink(rec);
    for (QVal x = 0; x < q.size(); ++x)
        for (QVal y = 0; y < q.size(); ++y)
            if (!pred(x, y)) {
                rec.status = CheckStatus::fail;
                sink.offer("x=" + q.label(x) + ", y=" + q.label(y));
            }
}

template <typename Pred>
void check_all3(Report& rep, const Quantale& q, const std::string& name, Pred pred) {
    auto& rec = rep.add(name, CheckStatus::pass);
    WitnessSink sink(rec);
    for (QVal x = 0; x < q.size(); ++x)
        for (QVal y = 0; y < q.size(); ++y)
            for (QVal z = 0; z < q.size(); ++z)
                if (!pred(x, y, z)) {
                    rec.status = CheckStatus::fail;
                    sink.offer("x=" + q.label(x) + ", y=" + q.label(y) + ", z=" + q.label(z));
                }
}

/// Scans for a witness of a "but in general it is not true" clause and
/// records the result as info: present quantales are not wrong either way,
/// the witness list just documents where the general law breaks.
template <typename Pred>
void scan_witness(Report& rep, const Quantale& q, const std::string& name, Pred violates,
                  const std::string& describe_prefix) {
    auto& rec = rep.add(name, CheckStatus::info);
    WitnessSink sink(rec);
    for (QVal x = 0; x < q.size(); ++x)
        if (violates(x)) sink.offer(describe_prefix + q.label(x));
    if (rec.witnesses.empty()) rec.note = "no witness";
}

}  // namespace

Report validate_theorem_suite(const Quantale& q) {
    Report rep;
    rep.command = "theorem-suite";
    rep.quantale = q.name();
    const QVal bot = q.bottom(), top = q.top();

    // first theorem list (residuum laws)
    check_all2(rep, q, "thm.residuum.1_order_iff_top",
               [&](QVal x, QVal y) { return q.leq(x, y) == (q.residuum(x, y) == top); });
    check_all2(rep, q, "thm.residuum.2_modus_ponens",
               [&](QVal x, QVal y) { return q.leq(q.product(x, q.residuum(x, y)), y); });
    check_all1(rep, q, "thm.residuum.3_top_implies",
               [&](QVal y) { return q.residuum(top, y) == y; });
    check_all1(rep, q, "thm.residuum.4_bottom_absorbs",
               [&](QVal x) { return q.product(x, bot) == bot && q.product(bot, x) == bot; });
    check_all1(rep, q, "thm.residuum.5_bottom_implies",
               [&](QVal y) { return q.residuum(bot, y) == top; });
    check_all3(rep, q, "thm.residuum.6_product_monotone", [&](QVal x, QVal y, QVal z) {
        return !q.leq(x, y) || q.leq(q.product(x, z), q.product(y, z));
    });
    check_all2(rep, q, "thm.residuum.7_product_below_meet",
               [&](QVal x, QVal y) { return q.leq(q.product(x, y), q.meet(x, y)); });
    check_all3(rep, q, "thm.residuum.8_antitone_left", [&](QVal x, QVal y, QVal z) {
        return !q.leq(x, y) || q.leq(q.residuum(y, z), q.residuum(x, z));
    });
    check_all3(rep, q, "thm.residuum.9_monotone_right", [&](QVal x, QVal y, QVal z) {
        return !q.leq(x, y) || q.leq(q.residuum(z, x), q.residuum(z, y));
    });
    check_all3(rep, q, "thm.residuum.10_currying", [&](QVal x, QVal y, QVal z) {
        return q.residuum(q.product(x, y), z) == q.residuum(x, q.residuum(y, z));
    });

    // second theorem list (negation laws, positive halves)
    check_all1(rep, q, "thm.negation.1_contradiction",
               [&](QVal x) { return q.product(x, q.neg(x)) == bot; });
    check_all1(rep, q, "thm.negation.2_double_neg_intro",
               [&](QVal x) { return q.leq(x, q.neg(q.neg(x))); });
    check_all2(rep, q, "thm.negation.3_de_morgan",
               [&](QVal x, QVal y) { return q.neg(q.join(x, y)) == q.product(q.neg(x), q.neg(y)); });
    check_all2(rep, q, "thm.negation.4_neg_antitone", [&](QVal x, QVal y) {
        return !q.leq(x, y) ||
               (q.leq(q.neg(y), q.neg(x)) && q.leq(q.neg(q.neg(x)), q.neg(q.neg(y))));
    });
    {
        auto& rec = rep.add("thm.negation.5_bounds", CheckStatus::pass);
        if (q.neg(bot) != top || q.neg(top) != bot) {
            rec.status = CheckStatus::fail;
            rec.witnesses.push_back("~0=" + q.label(q.neg(bot)) + ", ~1=" + q.label(q.neg(top)));
        }
    }
    check_all2(rep, q, "thm.negation.6_equiv_iff_equal",
               [&](QVal x, QVal y) { return (x == y) == (q.equiv(x, y) == top); });
    check_all2(rep, q, "thm.negation.7_double_neg_product", [&](QVal x, QVal y) {
        return q.leq(q.product(q.neg(q.neg(x)), q.neg(q.neg(y))), q.neg(q.neg(q.product(x, y))));
    });
    check_all1(rep, q, "thm.negation.8_triple_neg",
               [&](QVal x) { return q.neg(q.neg(q.neg(x))) == q.neg(x); });

    // "not in general" clauses: record whether this carrier witnesses them
    scan_witness(rep, q, "witness.excluded_middle_fails",
                 [&](QVal x) { return q.join(x, q.neg(x)) != top; }, "x=");
    scan_witness(rep, q, "witness.double_neg_elim_fails",
                 [&](QVal x) { return !q.leq(q.neg(q.neg(x)), x); }, "x=");
    {
        auto& rec = rep.add("witness.de_morgan_dual_fails", CheckStatus::info);
        WitnessSink sink(rec);
        for (QVal x = 0; x < q.size(); ++x)
            for (QVal y = 0; y < q.size(); ++y)
                if (q.neg(q.product(x, y)) != q.join(q.neg(x), q.neg(y)))
                    sink.offer("x=" + q.label(x) + ", y=" + q.label(y));
        if (rec.witnesses.empty()) rec.note = "no witness";
    }
    {
        auto& rec = rep.add("witness.not_idempotent", CheckStatus::info);
        WitnessSink sink(rec);
        for (QVal x = 0; x < q.size(); ++x)
            if (q.product(x, x) != x)
                sink.offer("x=" + q.label(x) + ": x*x = " + q.label(q.product(x, x)) +
                           " != " + q.label(x));
        if (rec.witnesses.empty()) rec.note = "no witness (idempotent)";
    }

    // {0,1}-closure theorem
    {
        auto& rec = rep.add("thm.two_element_closure", CheckStatus::pass);
        WitnessSink sink(rec);
        const QVal pair[2] = {bot, top};
        for (QVal x : pair)
            for (QVal y : pair) {
                auto in2 = [&](QVal v) { return v == bot || v == top; };
                if (!in2(q.residuum(x, y)) || !in2(q.meet(x, y)) || !in2(q.join(x, y)) ||
                    !in2(q.product(x, y)) || !in2(q.neg(x))) {
                    rec.status = CheckStatus::fail;
                    sink.offer("x=" + q.label(x) + ", y=" + q.label(y));
                }
            }
    }

    // corollary: {0,1} is a Boolean subalgebra where the product is the meet
    {
        auto& rec = rep.add("cor.boolean_subalgebra", CheckStatus::pass);
        WitnessSink sink(rec);
        const QVal pair[2] = {bot, top};
        for (QVal x : pair) {
            if (q.meet(x, q.neg(x)) != bot || q.join(x, q.neg(x)) != top) {
                rec.status = CheckStatus::fail;
                sink.offer("complement fails at x=" + q.label(x));
            }
            for (QVal y : pair)
                if (q.product(x, y) != q.meet(x, y)) {
                    rec.status = CheckStatus::fail;
                    sink.offer("product != meet at x=" + q.label(x) + ", y=" + q.label(y));
                }
        }
    }

    rep.append(check_heyting_collapse(q));
    return rep;
}

Report check_heyting_collapse(const Quantale& q) {
    Report rep;
    rep.command = "heyting-collapse";
    rep.quantale = q.name();
    if (!q.is_idempotent()) {
        rep.add("thm.idempotent_collapse", CheckStatus::info).note =
            "not idempotent; collapse theorem does not apply";
        return rep;
    }
    auto& rec = rep.add("thm.idempotent_collapse", CheckStatus::pass);
    WitnessSink sink(rec);
    for (QVal x = 0; x < q.size(); ++x)
        for (QVal y = 0; y < q.size(); ++y)
            if (q.product(x, y) != q.meet(x, y)) {
                rec.status = CheckStatus::fail;
                sink.offer("x=" + q.label(x) + ", y=" + q.label(y));
            }
    if (rec.status == CheckStatus::pass) rec.note = "idempotent: product = meet on all pairs";
    return rep;
}

Report check_residuum_oracle(const Quantale& q) {
    Report rep;
    rep.command = "residuum-oracle";
    rep.quantale = q.name();
    auto& rec = rep.add("residuum.oracle", CheckStatus::pass);
    WitnessSink sink(rec);
    for (QVal x = 0; x < q.size(); ++x)
        for (QVal y = 0; y < q.size(); ++y) {
            // greatest element of {z : x*z <= y}, found by scan alone
            std::vector<QVal> candidates;
            for (QVal z = 0; z < q.size(); ++z)
                if (q.leq(q.product(x, z), y)) candidates.push_back(z);
            std::optional<QVal> greatest;
            for (QVal c : candidates) {
                bool dominates = true;
                for (QVal d : candidates)
                    if (!q.leq(d, c)) { dominates = false; break; }
                if (dominates) { greatest = c; break; }
            }
            if (!greatest || *greatest != q.residuum(x, y)) {
                rec.status = CheckStatus::fail;
                sink.offer("x=" + q.label(x) + ", y=" + q.label(y) + ": table says " +
                           q.label(q.residuum(x, y)) +
                           (greatest ? ", oracle says " + q.label(*greatest)
                                     : ", oracle found no greatest element"));
            }
        }
    return rep;
}

}  // namespace qlab
