#pragma once

#include <string>
#include <utility>
#include <vector>

#include "strudiag/matching.hpp"
#include "strudiag/model.hpp"
#include "strudiag/mso.hpp"

namespace strudiag {

enum class CausalKind { Algebraic, Integral, Derivative };

const char* to_string(CausalKind c);

struct SequenceStep {
    std::string equation;
    std::string variable;
    CausalKind causality = CausalKind::Algebraic;
};

/// Oriented residual recipe for one MSO: the unmatched equation is the
/// analytical redundancy relation, the steps solve one unknown each in
/// dependency order, and blocks of size > 1 are reported as algebraic
/// loops instead of being linearized. `order` records the interleaving of
/// steps and loops for rendering: (is_loop, index into steps/loops).
struct ComputationalSequence {
    std::string residual_equation;
    std::vector<SequenceStep> steps;
    std::vector<FineBlocks::Block> loops;
    std::vector<std::pair<bool, std::size_t>> order;

    bool loop_free() const { return loops.empty(); }
};

/// Orients `mso` around the chosen residual equation. Pre: the residual is
/// a member and the remaining square system admits a complete matching.
ComputationalSequence orient(const StructuralModel& model, const MSOSet& mso,
                             const std::string& residual_equation);

/// True iff some residual choice makes every block a singleton.
bool is_loop_free(const StructuralModel& model, const MSOSet& mso);

/// Unknowns reachable from the known variable by an alternated chain under
/// the canonical maximum matching, in registry order.
std::vector<std::string> reachability(const StructuralModel& model, const std::string& known_name);

/// Canonical residual choice used by reports: the first member equation
/// whose orientation is loop-free, else the first orientable one.
std::string canonical_residual(const StructuralModel& model, const MSOSet& mso);

}  // namespace strudiag
