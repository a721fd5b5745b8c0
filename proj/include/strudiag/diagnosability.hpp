#pragma once

#include <string>
#include <vector>

#include "strudiag/model.hpp"

namespace strudiag {

/// Per-fault classification. A detectable fault is uniquely isolable (UI)
/// when it is isolable from every other detectable fault, not isolable (NI)
/// when it is isolable from none of them, and isolable (I) otherwise. NA
/// marks faults of uninstalled sensors kept as placeholder columns.
enum class FaultLabel { NA, ND, DetectableNotIsolable, DetectableIsolable, DetectableUniquelyIsolable };

const char* to_string(FaultLabel l);

struct FaultAnalysis {
    std::vector<std::string> faults;  // universe order
    std::vector<char> in_model;
    std::vector<char> detectable;
    /// isolability[i][j]: fault i isolable from fault j (diagonal false;
    /// rows of undetectable faults are all false; entries involving NA
    /// placeholders are false and rendered NA in reports).
    std::vector<std::vector<char>> isolability;
    std::vector<FaultLabel> labels;

    std::size_t index_of(const std::string& fault) const;
    FaultLabel label_of(const std::string& fault) const { return labels[index_of(fault)]; }
};

/// Faults whose carrying equation lies in the over-determined part, in
/// model registration order.
std::vector<std::string> detectable_faults(const StructuralModel& model);

/// True iff the equation carrying `fi` stays in the over-determined part
/// after removing the equation carrying `fj`. Throws on unknown fault ids
/// or fi == fj.
bool isolable(const StructuralModel& model, const std::string& fi, const std::string& fj);

/// Full detectability/isolability matrix over `fault_universe`. Universe
/// entries absent from the model are labeled NA. An empty universe defaults
/// to the model's faults in registration order.
FaultAnalysis fault_analysis(const StructuralModel& model,
                             std::vector<std::string> fault_universe = {});

}  // namespace strudiag
