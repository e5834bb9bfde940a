#pragma once

#include <cstdint>
#include <vector>

#include "qlab/formula.hpp"

namespace qlab {

struct EnumOptions {
    int max_depth = 2;
    int max_params = 1;
    /// When false, the strong conjunction is left out of enumeration and only
    /// {/\, \/, ->, ~, A, E} are combined (the intuitionistic comparison set).
    bool include_strong = true;

    bool operator==(const EnumOptions&) const = default;
};

/// A definability formula phi(x, y1..yk): a body whose free variables are
/// contained in {subject} U {first n_params parameter variables}.
struct FormulaTemplate {
    FormulaId body;
    int n_params;
};

struct TemplateSet {
    EnumOptions opts;
    VarId subject = 0;
    std::vector<VarId> param_vars;  // y1..y{max_params}
    std::vector<VarId> pool_vars;   // bound-variable pool q1..q3
    /// Depth-major, duplicate-free, deterministic stream.
    std::vector<FormulaTemplate> templates;
    /// templates[depth_offsets[d] .. depth_offsets[d+1]) have exact depth d.
    std::vector<std::size_t> depth_offsets;
};

/// Enumerates every membership/equality template over the subject, the
/// parameter variables and a fixed pool of three quantifiable names, closed
/// under the residuated connectives, up to the requested nesting depth.
/// Bodies are deduplicated structurally; parameter variables must be used as
/// a gap-free prefix y1..yj (gapped uses are renamings of earlier templates).
TemplateSet enumerate_templates(FormulaPool& pool, const EnumOptions& opts);

/// Upper bound on the enumeration size for the given options, via the same
/// recurrence the generator follows but without materializing formulas.
/// Used to refuse saturation steps that would explode.
std::uint64_t count_enumeration_upper_bound(const EnumOptions& opts);

}  // namespace qlab
