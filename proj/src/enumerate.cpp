#include "qlab/enumerate.hpp"

#include <stdexcept>
#include <unordered_set>

namespace qlab {

namespace {

constexpr int kPoolVars = 3;

class Generator {
public:
    Generator(FormulaPool& pool, const EnumOptions& opts) : pool_(pool), opts_(opts) {
        if (opts.max_depth < 0 || opts.max_params < 0)
            throw std::invalid_argument("enumeration bounds must be nonnegative");
        if (opts.max_params > 8)
            throw std::invalid_argument("enumeration supports at most 8 parameters");
        subject_ = pool.var_id("x");
        for (int i = 0; i < opts.max_params; ++i)
            params_.push_back(pool.var_id("y" + std::to_string(i + 1)));
        for (int i = 0; i < kPoolVars; ++i)
            qvars_.push_back(pool.var_id("q" + std::to_string(i + 1)));
        // exact[d][k]: bodies of exact depth d whose scope is the subject,
        // all parameters, and the first k pool variables
        exact_.resize(opts.max_depth + 1);
        for (auto& row : exact_) row.resize(kPoolVars + 1);
        done_.resize(opts.max_depth + 1);
        for (auto& row : done_) row.assign(kPoolVars + 1, false);
    }

    TemplateSet run() {
        TemplateSet out;
        out.opts = opts_;
        out.subject = subject_;
        out.param_vars = params_;
        out.pool_vars = qvars_;

        std::uint64_t param_bits = 0;
        for (VarId y : params_) param_bits |= 1ull << y;
        std::uint64_t allowed = (1ull << subject_) | param_bits;

        std::unordered_set<FormulaId> seen;
        out.depth_offsets.push_back(0);
        for (int d = 0; d <= opts_.max_depth; ++d) {
            for (FormulaId f : layer(d, 0)) {
                std::uint64_t m = pool_.free_mask(f);
                if (m & ~allowed) continue;  // stray bound variable: cannot happen
                if (!seen.insert(f).second) continue;
                int n_params = prefix_params(m);
                if (n_params < 0) continue;  // gapped parameter use
                out.templates.push_back({f, n_params});
            }
            out.depth_offsets.push_back(out.templates.size());
        }
        return out;
    }

private:
    /// -1 when the used parameters are not a gap-free prefix y1..yj.
    int prefix_params(std::uint64_t mask) const {
        int highest = 0;
        for (int i = 0; i < (int)params_.size(); ++i)
            if (mask & (1ull << params_[i])) highest = i + 1;
        for (int i = 0; i < highest; ++i)
            if (!(mask & (1ull << params_[i]))) return -1;
        return highest;
    }

    const std::vector<FormulaId>& layer(int d, int k) {
        if (done_[d][k]) return exact_[d][k];
        std::vector<FormulaId>& out = exact_[d][k];
        if (d == 0) {
            out.push_back(pool_.bot());
            out.push_back(pool_.top());
            std::vector<VarId> scope;
            scope.push_back(subject_);
            scope.insert(scope.end(), params_.begin(), params_.end());
            scope.insert(scope.end(), qvars_.begin(), qvars_.begin() + k);
            for (AtomKind kind : {AtomKind::Mem, AtomKind::Eq})
                for (VarId l : scope)
                    for (VarId r : scope)
                        out.push_back(pool_.atom(kind, Term::var(l), Term::var(r)));
        } else {
            for (FormulaId f : layer(d - 1, k)) out.push_back(pool_.neg(f));
            std::vector<FormulaId> upto;
            for (int e = 0; e < d; ++e)
                upto.insert(upto.end(), layer(e, k).begin(), layer(e, k).end());
            auto binary_layer = [&](auto make) {
                for (FormulaId a : upto)
                    for (FormulaId b : upto) {
                        int da = pool_.depth(a), db = pool_.depth(b);
                        if (std::max(da, db) != d - 1) continue;
                        out.push_back(make(a, b));
                    }
            };
            if (opts_.include_strong)
                binary_layer([&](FormulaId a, FormulaId b) { return pool_.strong(a, b); });
            binary_layer([&](FormulaId a, FormulaId b) { return pool_.weak(a, b); });
            binary_layer([&](FormulaId a, FormulaId b) { return pool_.disj(a, b); });
            binary_layer([&](FormulaId a, FormulaId b) { return pool_.imp(a, b); });
            if (k < kPoolVars) {
                VarId q = qvars_[k];
                for (FormulaId f : layer(d - 1, k + 1)) out.push_back(pool_.forall(q, f));
                for (FormulaId f : layer(d - 1, k + 1)) out.push_back(pool_.exists(q, f));
            }
        }
        done_[d][k] = true;
        return exact_[d][k];
    }

    FormulaPool& pool_;
    EnumOptions opts_;
    VarId subject_;
    std::vector<VarId> params_;
    std::vector<VarId> qvars_;
    std::vector<std::vector<std::vector<FormulaId>>> exact_;
    std::vector<std::vector<bool>> done_;
};

}  // namespace

TemplateSet enumerate_templates(FormulaPool& pool, const EnumOptions& opts) {
    Generator g(pool, opts);
    return g.run();
}

std::uint64_t count_enumeration_upper_bound(const EnumOptions& opts) {
    const int binary_ops = opts.include_strong ? 4 : 3;
    const std::uint64_t cap = ~0ull >> 8;
    auto sat_add = [&](std::uint64_t a, std::uint64_t b) { return std::min(cap, a + b); };
    auto sat_mul = [&](std::uint64_t a, std::uint64_t b) {
        return (b != 0 && a > cap / b) ? cap : a * b;
    };
    // exact[d][k] mirrors Generator::layer sizes
    std::vector<std::vector<std::uint64_t>> exact(opts.max_depth + 1,
                                                  std::vector<std::uint64_t>(kPoolVars + 1, 0));
    for (int k = 0; k <= kPoolVars; ++k) {
        std::uint64_t scope = 1 + (std::uint64_t)opts.max_params + k;
        exact[0][k] = 2 + 2 * scope * scope;
    }
    for (int d = 1; d <= opts.max_depth; ++d)
        for (int k = 0; k <= kPoolVars; ++k) {
            std::uint64_t upto = 0, upto_prev = 0;
            for (int e = 0; e < d; ++e) {
                if (e < d - 1) upto_prev = sat_add(upto_prev, exact[e][k]);
                upto = sat_add(upto, exact[e][k]);
            }
            std::uint64_t pairs = sat_mul(upto, upto) - sat_mul(upto_prev, upto_prev);
            std::uint64_t total = exact[d - 1][k];  // negations
            total = sat_add(total, sat_mul((std::uint64_t)binary_ops, pairs));
            if (k < kPoolVars) total = sat_add(total, sat_mul(2, exact[d - 1][k + 1]));
            exact[d][k] = total;
        }
    std::uint64_t sum = 0;
    for (int d = 0; d <= opts.max_depth; ++d) sum = sat_add(sum, exact[d][0]);
    return sum;
}

}  // namespace qlab
