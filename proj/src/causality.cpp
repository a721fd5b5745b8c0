#include "strudiag/causality.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "graph_engine.hpp"

namespace strudiag {

using detail::Graph;
using detail::NameIndex;

const char* to_string(CausalKind c) {
    switch (c) {
        case CausalKind::Algebraic: return "algebraic";
        case CausalKind::Integral: return "integral";
        case CausalKind::Derivative: return "derivative";
    }
    return "?";
}

namespace {

struct SliceOrientation {
    std::vector<int> rows;                    // slice rows
    std::vector<int> row_match;               // full-size, -1 outside slice
    std::vector<std::vector<int>> blocks;     // dependency order
};

// Perfect matching + fine blocks of mso \ {residual_row} over the unknowns
// touched by the whole MSO. Returns false if no complete matching exists.
bool orient_slice(const Graph& g, const std::vector<int>& mso_rows, int residual_row,
                  SliceOrientation& out) {
    std::vector<char> col_in(static_cast<std::size_t>(g.n_cols), 0);
    int n_cols = 0;
    for (int r : mso_rows) {
        for (int c : g.row_vars[static_cast<std::size_t>(r)]) {
            if (!col_in[static_cast<std::size_t>(c)]) {
                col_in[static_cast<std::size_t>(c)] = 1;
                ++n_cols;
            }
        }
    }
    out.rows.clear();
    for (int r : mso_rows)
        if (r != residual_row) out.rows.push_back(r);
    if (static_cast<int>(out.rows.size()) != n_cols) return false;

    std::vector<int> col_match(static_cast<std::size_t>(g.n_cols), -1);
    std::vector<int> visited(static_cast<std::size_t>(g.n_rows), 0);
    int stamp = 0;
    auto try_row = [&](auto&& self, int row) -> bool {
        for (int c : g.row_vars[static_cast<std::size_t>(row)]) {
            int owner = col_match[static_cast<std::size_t>(c)];
            if (owner == -1) {
                col_match[static_cast<std::size_t>(c)] = row;
                return true;
            }
            if (visited[static_cast<std::size_t>(owner)] == stamp) continue;
            visited[static_cast<std::size_t>(owner)] = stamp;
            if (self(self, owner)) {
                col_match[static_cast<std::size_t>(c)] = row;
                return true;
            }
        }
        return false;
    };
    int matched = 0;
    for (int r : out.rows) {
        ++stamp;
        visited[static_cast<std::size_t>(r)] = stamp;
        if (try_row(try_row, r)) ++matched;
    }
    if (matched != static_cast<int>(out.rows.size())) return false;

    out.row_match.assign(static_cast<std::size_t>(g.n_rows), -1);
    for (int c = 0; c < g.n_cols; ++c)
        if (col_match[static_cast<std::size_t>(c)] != -1)
            out.row_match[static_cast<std::size_t>(col_match[static_cast<std::size_t>(c)])] = c;
    out.blocks = detail::fine_block_rows(g, out.rows, out.row_match);
    return true;
}

std::vector<int> mso_row_indices(const NameIndex& names, const MSOSet& mso) {
    std::vector<int> rows;
    rows.reserve(mso.equations.size());
    for (const std::string& id : mso.equations) {
        auto it = names.row_of.find(id);
        if (it == names.row_of.end())
            throw std::invalid_argument("MSO references unknown equation: " + id);
        rows.push_back(it->second);
    }
    std::sort(rows.begin(), rows.end());
    return rows;
}

}  // namespace

ComputationalSequence orient(const StructuralModel& model, const MSOSet& mso,
                             const std::string& residual_equation) {
    NameIndex names;
    Graph g = compile(model, names);
    std::vector<int> rows = mso_row_indices(names, mso);

    auto res_it = names.row_of.find(residual_equation);
    if (res_it == names.row_of.end() ||
        std::find(mso.equations.begin(), mso.equations.end(), residual_equation) == mso.equations.end())
        throw std::invalid_argument("residual equation " + residual_equation + " is not in the MSO");

    SliceOrientation slice;
    if (!orient_slice(g, rows, res_it->second, slice))
        throw std::invalid_argument("residual choice " + residual_equation +
                                    " leaves no complete matching");

    ComputationalSequence seq;
    seq.residual_equation = residual_equation;
    for (const std::vector<int>& block : slice.blocks) {
        if (block.size() == 1) {
            int r = block.front();
            int c = slice.row_match[static_cast<std::size_t>(r)];
            SequenceStep step;
            step.equation = names.row_ids[static_cast<std::size_t>(r)];
            step.variable = names.col_names[static_cast<std::size_t>(c)];
            step.causality = CausalKind::Algebraic;
            for (const VarOccurrence& occ : model.equation(step.equation).unknowns)
                if (occ.name == step.variable && occ.differentiated)
                    step.causality = CausalKind::Integral;
            seq.order.emplace_back(false, seq.steps.size());
            seq.steps.push_back(std::move(step));
        } else {
            FineBlocks::Block loop;
            std::vector<int> cols;
            for (int r : block) {
                loop.equations.push_back(names.row_ids[static_cast<std::size_t>(r)]);
                cols.push_back(slice.row_match[static_cast<std::size_t>(r)]);
            }
            std::sort(cols.begin(), cols.end());
            for (int c : cols) loop.variables.push_back(names.col_names[static_cast<std::size_t>(c)]);
            seq.order.emplace_back(true, seq.loops.size());
            seq.loops.push_back(std::move(loop));
        }
    }
    return seq;
}

bool is_loop_free(const StructuralModel& model, const MSOSet& mso) {
    NameIndex names;
    Graph g = compile(model, names);
    std::vector<int> rows = mso_row_indices(names, mso);
    SliceOrientation slice;
    for (int residual : rows) {
        if (!orient_slice(g, rows, residual, slice)) continue;
        bool all_single = std::all_of(slice.blocks.begin(), slice.blocks.end(),
                                      [](const std::vector<int>& b) { return b.size() == 1; });
        if (all_single) return true;
    }
    return false;
}

std::string canonical_residual(const StructuralModel& model, const MSOSet& mso) {
    NameIndex names;
    Graph g = compile(model, names);
    std::vector<int> rows = mso_row_indices(names, mso);
    SliceOrientation slice;
    int fallback = -1;
    for (int residual : rows) {
        if (!orient_slice(g, rows, residual, slice)) continue;
        if (fallback == -1) fallback = residual;
        bool all_single = std::all_of(slice.blocks.begin(), slice.blocks.end(),
                                      [](const std::vector<int>& b) { return b.size() == 1; });
        if (all_single) return names.row_ids[static_cast<std::size_t>(residual)];
    }
    if (fallback == -1)
        throw std::invalid_argument("MSO admits no computational sequence for any residual choice");
    return names.row_ids[static_cast<std::size_t>(fallback)];
}

std::vector<std::string> reachability(const StructuralModel& model, const std::string& known_name) {
    if (model.equations().empty() && model.variables().empty()) return {};
    if (!model.has_variable(known_name) || model.variable(known_name).kind != VarKind::Known)
        throw std::invalid_argument("reachability: not a known variable: " + known_name);

    NameIndex names;
    Graph g = compile(model, names);

    // Canonical matching fixes the alternated-chain structure.
    Matching matching = maximum_matching(model);
    std::vector<int> row_match(static_cast<std::size_t>(g.n_rows), -1);
    std::unordered_map<int, int> col_owner;
    for (const auto& [eq, var] : matching.pairs) {
        int r = names.row_of.at(eq);
        int c = names.col_of.at(var);
        row_match[static_cast<std::size_t>(r)] = c;
        col_owner[c] = r;
    }

    std::vector<char> var_seen(static_cast<std::size_t>(g.n_cols), 0);
    std::vector<char> eq_seen(static_cast<std::size_t>(g.n_rows), 0);
    std::vector<int> eq_queue;

    for (const Equation& eq : model.equations()) {
        if (std::find(eq.knowns.begin(), eq.knowns.end(), known_name) != eq.knowns.end()) {
            int r = names.row_of.at(eq.id);
            if (!eq_seen[static_cast<std::size_t>(r)]) {
                eq_seen[static_cast<std::size_t>(r)] = 1;
                eq_queue.push_back(r);
            }
        }
    }

    for (std::size_t qi = 0; qi < eq_queue.size(); ++qi) {
        int r = eq_queue[qi];
        int c = row_match[static_cast<std::size_t>(r)];
        if (c == -1 || var_seen[static_cast<std::size_t>(c)]) continue;
        var_seen[static_cast<std::size_t>(c)] = 1;
        // Leave the variable along non-matching edges.
        for (int r2 : g.col_rows[static_cast<std::size_t>(c)]) {
            if (r2 == r) continue;
            if (row_match[static_cast<std::size_t>(r2)] == c) continue;
            if (!eq_seen[static_cast<std::size_t>(r2)]) {
                eq_seen[static_cast<std::size_t>(r2)] = 1;
                eq_queue.push_back(r2);
            }
        }
    }

    std::vector<std::string> out;
    for (int c = 0; c < g.n_cols; ++c)
        if (var_seen[static_cast<std::size_t>(c)]) out.push_back(names.col_names[static_cast<std::size_t>(c)]);
    return out;
}

}  // namespace strudiag
