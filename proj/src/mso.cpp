#include "strudiag/mso.hpp"

#include <algorithm>
#include <cstdint>
#include <unordered_set>

#include "graph_engine.hpp"

namespace strudiag {

using detail::Graph;
using detail::MatchingEngine;
using detail::NameIndex;

bool FaultSignatureMatrix::signature_isolable(std::size_t i, std::size_t j) const {
    for (const auto& row : entries)
        if (row[i] && !row[j]) return true;
    return false;
}

std::vector<std::string> overdetermined_part(const StructuralModel& model) {
    NameIndex names;
    Graph g = compile(model, names);
    MatchingEngine engine(g);
    engine.solve();
    std::vector<char> over_rows, over_cols;
    engine.over_determined(over_rows, over_cols);
    std::vector<std::string> out;
    for (int r = 0; r < g.n_rows; ++r)
        if (over_rows[static_cast<std::size_t>(r)]) out.push_back(names.row_ids[static_cast<std::size_t>(r)]);
    return out;
}

namespace {

struct RowSetHash {
    std::size_t operator()(const std::vector<std::uint64_t>& v) const {
        std::size_t h = 1469598103934665603ull;
        for (std::uint64_t w : v) {
            h ^= static_cast<std::size_t>(w);
            h *= 1099511628211ull;
        }
        return h;
    }
};

class MsoEnumerator {
public:
    MsoEnumerator(const Graph& g) : engine_(g), words_((static_cast<std::size_t>(g.n_rows) + 63) / 64) {}

    // Enumerates all MSOs inside the PSO set `rows` with surplus `s`.
    void run(const std::vector<int>& rows, int s) {
        recurse(rows, s);
    }

    std::vector<std::vector<int>> result;  // each sorted ascending

private:
    std::vector<std::uint64_t> key_of(const std::vector<int>& rows) const {
        std::vector<std::uint64_t> key(words_, 0);
        for (int r : rows) key[static_cast<std::size_t>(r) / 64] |= 1ull << (static_cast<std::size_t>(r) % 64);
        return key;
    }

    void recurse(const std::vector<int>& rows, int surplus) {
        if (!visited_.insert(key_of(rows)).second) return;
        if (surplus == 1) {
            result.push_back(rows);
            return;
        }
        // Equivalence classes of this PSO set: removing any member of a
        // class drops the whole class and nothing else.
        engine_.set_all_active(false);
        for (int r : rows) engine_.set_row_active(r, true);
        engine_.solve();

        std::vector<char> assigned(engine_.graph().n_rows, 0);
        std::vector<std::vector<int>> classes;
        std::vector<char> reduced_rows, reduced_cols;
        for (int r : rows) {
            if (assigned[static_cast<std::size_t>(r)]) continue;
            engine_.deactivate_row(r);
            engine_.over_determined(reduced_rows, reduced_cols);
            std::vector<int> cls;
            for (int r2 : rows) {
                if (r2 == r || !reduced_rows[static_cast<std::size_t>(r2)]) {
                    cls.push_back(r2);
                    assigned[static_cast<std::size_t>(r2)] = 1;
                }
            }
            engine_.activate_row(r);
            classes.push_back(std::move(cls));
        }

        for (const std::vector<int>& cls : classes) {
            std::vector<int> child;
            child.reserve(rows.size() - cls.size());
            std::size_t k = 0;
            for (int r : rows) {
                if (k < cls.size() && cls[k] == r) {
                    ++k;
                    continue;
                }
                child.push_back(r);
            }
            // Recursion resets the engine's activity; reactivate lazily in
            // the child call itself.
            recurse(child, surplus - 1);
        }
    }

    MatchingEngine engine_;
    std::size_t words_;
    std::unordered_set<std::vector<std::uint64_t>, RowSetHash> visited_;
};

}  // namespace

std::vector<MSOSet> enumerate_msos(const StructuralModel& model) {
    NameIndex names;
    Graph g = compile(model, names);
    MatchingEngine engine(g);
    engine.solve();
    std::vector<char> over_rows, over_cols;
    engine.over_determined(over_rows, over_cols);

    std::vector<int> m_plus;
    int over_col_count = 0;
    for (int r = 0; r < g.n_rows; ++r)
        if (over_rows[static_cast<std::size_t>(r)]) m_plus.push_back(r);
    for (int c = 0; c < g.n_cols; ++c)
        if (over_cols[static_cast<std::size_t>(c)]) ++over_col_count;
    int surplus = static_cast<int>(m_plus.size()) - over_col_count;
    if (surplus <= 0) return {};

    MsoEnumerator enumerator(g);
    enumerator.run(m_plus, surplus);

    std::vector<MSOSet> out;
    out.reserve(enumerator.result.size());
    for (const std::vector<int>& rows : enumerator.result) {
        MSOSet mso;
        for (int r : rows) mso.equations.push_back(names.row_ids[static_cast<std::size_t>(r)]);
        std::unordered_set<std::string> eqs(mso.equations.begin(), mso.equations.end());
        for (const std::string& f : model.fault_names()) {
            for (const std::string& id : model.equations_of_fault(f)) {
                if (eqs.count(id)) {
                    mso.faults.push_back(f);
                    break;
                }
            }
        }
        out.push_back(std::move(mso));
    }
    std::sort(out.begin(), out.end(),
              [](const MSOSet& a, const MSOSet& b) { return a.equations < b.equations; });
    return out;
}

FaultSignatureMatrix fault_signature_matrix(const StructuralModel& model,
                                            const std::vector<MSOSet>& msos,
                                            std::vector<std::string> fault_universe) {
    if (fault_universe.empty()) fault_universe = model.fault_names();
    FaultSignatureMatrix fsm;
    fsm.faults = std::move(fault_universe);
    for (std::size_t k = 0; k < msos.size(); ++k) {
        fsm.mso_labels.push_back("MSO" + std::to_string(k + 1));
        std::vector<char> row(fsm.faults.size(), 0);
        std::unordered_set<std::string> eqs(msos[k].equations.begin(), msos[k].equations.end());
        for (std::size_t c = 0; c < fsm.faults.size(); ++c) {
            if (!model.has_variable(fsm.faults[c])) continue;
            for (const std::string& id : model.equations_of_fault(fsm.faults[c])) {
                if (eqs.count(id)) {
                    row[c] = 1;
                    break;
                }
            }
        }
        fsm.entries.push_back(std::move(row));
    }
    return fsm;
}

}  // namespace strudiag
