#pragma once

#include <string>
#include <vector>

#include "strudiag/causality.hpp"
#include "strudiag/diagnosability.hpp"
#include "strudiag/matching.hpp"
#include "strudiag/model.hpp"
#include "strudiag/mso.hpp"

namespace strudiag {

/// Model file format: JSON with fields
///   {description, equations: [{id, kind, unknowns: [{name, diff}],
///    knowns: [name], faults: [name]}]}
std::string serialize_model(const StructuralModel& model);
StructuralModel parse_model(const std::string& text);
StructuralModel parse_model_file(const std::string& path);
void write_model_file(const StructuralModel& model, const std::string& path);

/// CSV with a header row of variable names and equation ids in the first
/// column; comma-separated, LF line endings.
std::string incidence_csv(const IncidenceMatrix& m);

/// CSV with fault ids as header row and column; cells 1 (isolable),
/// 0 (not isolable / diagonal) or NA.
std::string isolability_csv(const FaultAnalysis& fa);

/// Matrix rendering with X marking non-isolable pairs (and the diagonal).
std::string isolability_text(const FaultAnalysis& fa);

/// One "fault: label" line per universe entry.
std::string fault_labels_text(const FaultAnalysis& fa);

std::string dm_report(const StructuralModel& model, const DMDecomposition& dm);

/// Ordered "(equation -> variable [causality])" lines, loops rendered as
/// "{e_a, e_b} simultaneous", final line "ARR: e_k".
std::string sequence_report(const ComputationalSequence& seq);

std::string mso_report(const StructuralModel& model, const std::vector<MSOSet>& msos,
                       const FaultSignatureMatrix& fsm);

/// Structured (JSON) renderings.
std::string dm_json(const DMDecomposition& dm);
std::string fault_analysis_json(const FaultAnalysis& fa);
std::string msos_json(const std::vector<MSOSet>& msos, const FaultSignatureMatrix& fsm);
std::string sequence_json(const ComputationalSequence& seq);

}  // namespace strudiag
