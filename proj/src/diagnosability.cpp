#include "strudiag/diagnosability.hpp"

#include <algorithm>
#include <stdexcept>

#include "graph_engine.hpp"

namespace strudiag {

using detail::Graph;
using detail::MatchingEngine;
using detail::NameIndex;

const char* to_string(FaultLabel l) {
    switch (l) {
        case FaultLabel::NA: return "NA";
        case FaultLabel::ND: return "ND";
        case FaultLabel::DetectableNotIsolable: return "D,NI";
        case FaultLabel::DetectableIsolable: return "D,I";
        case FaultLabel::DetectableUniquelyIsolable: return "D,UI";
    }
    return "?";
}

std::size_t FaultAnalysis::index_of(const std::string& fault) const {
    auto it = std::find(faults.begin(), faults.end(), fault);
    if (it == faults.end()) throw std::invalid_argument("fault not in analysis: " + fault);
    return static_cast<std::size_t>(it - faults.begin());
}

namespace {

std::vector<int> fault_rows(const StructuralModel& model, const NameIndex& names,
                            const std::string& fault) {
    std::vector<int> rows;
    for (const std::string& id : model.equations_of_fault(fault)) rows.push_back(names.row_of.at(id));
    return rows;
}

}  // namespace

std::vector<std::string> detectable_faults(const StructuralModel& model) {
    NameIndex names;
    Graph g = compile(model, names);
    MatchingEngine engine(g);
    engine.solve();
    std::vector<char> over_rows, over_cols;
    engine.over_determined(over_rows, over_cols);

    std::vector<std::string> out;
    for (const std::string& f : model.fault_names()) {
        for (int r : fault_rows(model, names, f)) {
            if (over_rows[static_cast<std::size_t>(r)]) {
                out.push_back(f);
                break;
            }
        }
    }
    return out;
}

bool isolable(const StructuralModel& model, const std::string& fi, const std::string& fj) {
    if (fi == fj) throw std::invalid_argument("isolable: faults must differ");
    auto check = [&](const std::string& f) {
        if (!model.has_variable(f) || model.variable(f).kind != VarKind::Fault)
            throw std::invalid_argument("isolable: unknown fault id: " + f);
    };
    check(fi);
    check(fj);

    NameIndex names;
    Graph g = compile(model, names);
    MatchingEngine engine(g);
    engine.solve();

    for (int r : fault_rows(model, names, fj)) engine.deactivate_row(r);
    std::vector<char> over_rows, over_cols;
    engine.over_determined(over_rows, over_cols);
    for (int r : fault_rows(model, names, fi))
        if (over_rows[static_cast<std::size_t>(r)]) return true;
    return false;
}

FaultAnalysis fault_analysis(const StructuralModel& model, std::vector<std::string> fault_universe) {
    if (fault_universe.empty()) fault_universe = model.fault_names();

    FaultAnalysis fa;
    fa.faults = std::move(fault_universe);
    const std::size_t n = fa.faults.size();
    fa.in_model.assign(n, 0);
    fa.detectable.assign(n, 0);
    fa.isolability.assign(n, std::vector<char>(n, 0));
    fa.labels.assign(n, FaultLabel::NA);

    NameIndex names;
    Graph g = compile(model, names);
    MatchingEngine engine(g);
    engine.solve();
    std::vector<char> over_rows, over_cols;
    engine.over_determined(over_rows, over_cols);

    std::vector<std::vector<int>> rows_of(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (model.has_variable(fa.faults[i]) && model.variable(fa.faults[i]).kind == VarKind::Fault) {
            fa.in_model[i] = 1;
            rows_of[i] = fault_rows(model, names, fa.faults[i]);
            for (int r : rows_of[i])
                if (over_rows[static_cast<std::size_t>(r)]) fa.detectable[i] = 1;
        }
    }

    // One removal per column fault; every row membership then read off the
    // reduced over-determined part.
    std::vector<char> reduced_rows, reduced_cols;
    for (std::size_t j_idx = 0; j_idx < n; ++j_idx) {
        if (!fa.in_model[j_idx]) continue;
        for (int r : rows_of[j_idx]) engine.deactivate_row(r);
        engine.over_determined(reduced_rows, reduced_cols);
        for (std::size_t i = 0; i < n; ++i) {
            if (i == j_idx || !fa.in_model[i]) continue;
            for (int r : rows_of[i]) {
                if (reduced_rows[static_cast<std::size_t>(r)]) {
                    fa.isolability[i][j_idx] = 1;
                    break;
                }
            }
        }
        for (int r : rows_of[j_idx]) engine.activate_row(r);
    }

    for (std::size_t i = 0; i < n; ++i) {
        if (!fa.in_model[i]) {
            fa.labels[i] = FaultLabel::NA;
            continue;
        }
        if (!fa.detectable[i]) {
            fa.labels[i] = FaultLabel::ND;
            continue;
        }
        bool from_all = true, from_none = true;
        bool has_other = false;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i || !fa.in_model[j] || !fa.detectable[j]) continue;
            has_other = true;
            if (fa.isolability[i][j])
                from_none = false;
            else
                from_all = false;
        }
        if (!has_other || from_all)
            fa.labels[i] = FaultLabel::DetectableUniquelyIsolable;
        else if (from_none)
            fa.labels[i] = FaultLabel::DetectableNotIsolable;
        else
            fa.labels[i] = FaultLabel::DetectableIsolable;
    }
    return fa;
}

}  // namespace strudiag
