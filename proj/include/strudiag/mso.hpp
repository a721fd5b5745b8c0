#pragma once

#include <string>
#include <vector>

#include "strudiag/model.hpp"

namespace strudiag {

/// A minimal structurally over-determined equation set: redundancy exactly
/// one, equal to its own over-determined part, no over-determined proper
/// subset. `faults` lists the faults its equations carry.
struct MSOSet {
    std::vector<std::string> equations;  // model order
    std::vector<std::string> faults;     // model registration order
};

/// Rows are MSOs, columns faults; entry 1 iff the MSO contains the fault's
/// equation. A fault is detectable iff its column is nonzero.
struct FaultSignatureMatrix {
    std::vector<std::string> mso_labels;
    std::vector<std::string> faults;
    std::vector<std::vector<char>> entries;

    /// fi isolable from fj: some row marks fi but not fj.
    bool signature_isolable(std::size_t i, std::size_t j) const;
};

/// Equation ids of the over-determined part, in model order.
std::vector<std::string> overdetermined_part(const StructuralModel& model);

/// All MSO sets, in lexicographic order of their equation-id tuples.
/// Top-down removal over PSO sets with equivalence-class lumping and
/// visited-set deduplication.
std::vector<MSOSet> enumerate_msos(const StructuralModel& model);

/// Signature matrix of the given MSOs; columns follow `fault_universe`, or
/// the model's fault registration order when empty.
FaultSignatureMatrix fault_signature_matrix(const StructuralModel& model,
                                            const std::vector<MSOSet>& msos,
                                            std::vector<std::string> fault_universe = {});

}  // namespace strudiag
