#pragma once

#include <string>
#include <vector>

namespace strudiag {

/// One verdict of the built-in regression suite over the battery reference
/// analyses (single-cell tables, pack decompositions, placement families).
struct ReferenceCheck {
    std::string name;
    bool passed = false;
    std::string detail;  // populated on failure
};

/// Fast checks (single-cell tables, decompositions, residual sequences,
/// small pack placements). `include_slow` adds the large pack placement and
/// traditional-set analyses.
std::vector<ReferenceCheck> run_reference_checks(bool include_slow);

}  // namespace strudiag
