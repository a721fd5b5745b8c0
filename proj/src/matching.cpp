#include "strudiag/matching.hpp"

#include <algorithm>
#include <cassert>
#include <set>
#include <unordered_set>

#include "graph_engine.hpp"

namespace strudiag {

using detail::Graph;
using detail::MatchingEngine;
using detail::NameIndex;

const char* to_string(Completeness c) {
    switch (c) {
        case Completeness::WrtEquations: return "wrt-equations";
        case Completeness::WrtUnknowns: return "wrt-unknowns";
        case Completeness::Both: return "both";
        case Completeness::Neither: return "neither";
    }
    return "?";
}

bool FineBlocks::loop_free() const {
    return std::all_of(blocks.begin(), blocks.end(),
                       [](const Block& b) { return b.size() == 1; });
}

namespace {

// Kuhn's algorithm over a row subset with an excluded-column mask.
// Deterministic ascending order; used for the canonical tie-break.
int restricted_max_matching(const Graph& g, const std::vector<int>& rows,
                            const std::vector<char>& col_banned) {
    std::vector<int> col_match(static_cast<std::size_t>(g.n_cols), -1);
    std::vector<char> row_in(static_cast<std::size_t>(g.n_rows), 0);
    for (int r : rows) row_in[static_cast<std::size_t>(r)] = 1;
    std::vector<int> visited(static_cast<std::size_t>(g.n_rows), 0);
    int stamp = 0;
    int matched = 0;

    auto try_row = [&](auto&& self, int row) -> bool {
        for (int c : g.row_vars[static_cast<std::size_t>(row)]) {
            if (col_banned[static_cast<std::size_t>(c)]) continue;
            int owner = col_match[static_cast<std::size_t>(c)];
            if (owner == row) continue;
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

    for (int r : rows) {
        ++stamp;
        visited[static_cast<std::size_t>(r)] = stamp;
        if (try_row(try_row, r)) ++matched;
    }
    (void)row_in;
    return matched;
}

}  // namespace

Matching maximum_matching(const StructuralModel& model) {
    NameIndex names;
    Graph g = compile(model, names);

    MatchingEngine engine(g);
    engine.solve();
    const int nu = engine.cardinality();

    // Fix pairs row by row, keeping completion to `nu` feasible.
    std::vector<char> used_col(static_cast<std::size_t>(g.n_cols), 0);
    std::vector<int> fixed(static_cast<std::size_t>(g.n_rows), -1);
    int fixed_count = 0;
    for (int r = 0; r < g.n_rows; ++r) {
        std::vector<int> rest;
        for (int rr = r + 1; rr < g.n_rows; ++rr) rest.push_back(rr);
        int chosen = -1;
        for (int c : g.row_vars[static_cast<std::size_t>(r)]) {
            if (used_col[static_cast<std::size_t>(c)]) continue;
            used_col[static_cast<std::size_t>(c)] = 1;
            int rest_nu = restricted_max_matching(g, rest, used_col);
            if (fixed_count + 1 + rest_nu == nu) {
                chosen = c;
                break;
            }
            used_col[static_cast<std::size_t>(c)] = 0;
        }
        if (chosen >= 0) {
            fixed[static_cast<std::size_t>(r)] = chosen;
            ++fixed_count;
        }
    }
    assert(fixed_count == nu);

    Matching m;
    for (int r = 0; r < g.n_rows; ++r) {
        if (fixed[static_cast<std::size_t>(r)] >= 0)
            m.pairs.emplace_back(names.row_ids[static_cast<std::size_t>(r)],
                                 names.col_names[static_cast<std::size_t>(fixed[static_cast<std::size_t>(r)])]);
    }
    bool all_eqs = static_cast<int>(m.pairs.size()) == g.n_rows;
    bool all_vars = static_cast<int>(m.pairs.size()) == g.n_cols;
    m.completeness = all_eqs && all_vars ? Completeness::Both
                     : all_eqs           ? Completeness::WrtEquations
                     : all_vars          ? Completeness::WrtUnknowns
                                         : Completeness::Neither;
    return m;
}

namespace {

struct DMWork {
    NameIndex names;
    Graph graph;
    std::vector<char> over_rows, over_cols, under_rows, under_cols;
};

void compute_parts(MatchingEngine& engine, DMWork& w) {
    engine.over_determined(w.over_rows, w.over_cols);
    engine.under_determined(w.under_rows, w.under_cols);
}

}  // namespace

DMDecomposition dm_decompose(const StructuralModel& model) {
    DMWork w;
    w.graph = compile(model, w.names);
    MatchingEngine engine(w.graph);
    engine.solve();
    compute_parts(engine, w);

    DMDecomposition dm;
    for (int r = 0; r < w.graph.n_rows; ++r) {
        const std::string& id = w.names.row_ids[static_cast<std::size_t>(r)];
        if (w.over_rows[static_cast<std::size_t>(r)])
            dm.over_equations.push_back(id);
        else if (w.under_rows[static_cast<std::size_t>(r)])
            dm.under_equations.push_back(id);
        else
            dm.just_equations.push_back(id);
    }
    for (int c = 0; c < w.graph.n_cols; ++c) {
        const std::string& name = w.names.col_names[static_cast<std::size_t>(c)];
        if (w.over_cols[static_cast<std::size_t>(c)])
            dm.over_unknowns.push_back(name);
        else if (w.under_cols[static_cast<std::size_t>(c)])
            dm.under_unknowns.push_back(name);
        else
            dm.just_unknowns.push_back(name);
    }
    dm.surplus = static_cast<int>(dm.over_equations.size()) -
                 static_cast<int>(dm.over_unknowns.size());
    dm.classes = equivalence_classes(model);
    return dm;
}

std::vector<std::vector<std::string>> equivalence_classes(const StructuralModel& model) {
    NameIndex names;
    Graph g = compile(model, names);
    MatchingEngine engine(g);
    engine.solve();

    std::vector<char> over_rows, over_cols;
    engine.over_determined(over_rows, over_cols);

    std::vector<int> m_plus;
    for (int r = 0; r < g.n_rows; ++r)
        if (over_rows[static_cast<std::size_t>(r)]) m_plus.push_back(r);

    // class(e) = {e} + equations expelled from the over-determined part by
    // removing e. The relation is an equivalence on M+; we form classes via
    // union-find and assert consistency in debug builds.
    std::vector<int> parent(static_cast<std::size_t>(g.n_rows));
    for (int r = 0; r < g.n_rows; ++r) parent[static_cast<std::size_t>(r)] = r;
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

    std::vector<char> reduced_rows, reduced_cols;
    for (int e : m_plus) {
        engine.deactivate_row(e);
        engine.over_determined(reduced_rows, reduced_cols);
        for (int e2 : m_plus) {
            if (e2 != e && !reduced_rows[static_cast<std::size_t>(e2)]) unite(e, e2);
        }
        engine.activate_row(e);
    }

    std::vector<std::vector<std::string>> classes;
    std::vector<int> rep_order;
    std::unordered_map<int, std::size_t> class_of_rep;
    for (int e : m_plus) {
        int rep = find(e);
        auto it = class_of_rep.find(rep);
        if (it == class_of_rep.end()) {
            class_of_rep[rep] = classes.size();
            classes.emplace_back();
            it = class_of_rep.find(rep);
        }
        classes[it->second].push_back(names.row_ids[static_cast<std::size_t>(e)]);
    }
    return classes;
}

FineBlocks fine_blocks(const StructuralModel& model, const std::vector<std::string>& equation_ids,
                       const std::vector<std::string>& variable_names) {
    if (equation_ids.size() != variable_names.size())
        throw std::invalid_argument("fine_blocks: slice is not square (" +
                                    std::to_string(equation_ids.size()) + " equations, " +
                                    std::to_string(variable_names.size()) + " variables)");

    NameIndex names;
    Graph g = compile(model, names);

    std::vector<int> rows;
    std::unordered_set<std::string> seen_eq;
    for (const std::string& id : equation_ids) {
        auto it = names.row_of.find(id);
        if (it == names.row_of.end()) throw std::invalid_argument("fine_blocks: no such equation: " + id);
        if (!seen_eq.insert(id).second)
            throw std::invalid_argument("fine_blocks: duplicate equation in slice: " + id);
        rows.push_back(it->second);
    }
    std::vector<char> col_allowed(static_cast<std::size_t>(g.n_cols), 0);
    std::unordered_set<std::string> seen_var;
    for (const std::string& v : variable_names) {
        auto it = names.col_of.find(v);
        if (it == names.col_of.end())
            throw std::invalid_argument("fine_blocks: no such unknown variable: " + v);
        if (!seen_var.insert(v).second)
            throw std::invalid_argument("fine_blocks: duplicate variable in slice: " + v);
        col_allowed[static_cast<std::size_t>(it->second)] = 1;
    }

    // Perfect matching on the slice (deterministic Kuhn).
    std::vector<int> col_match(static_cast<std::size_t>(g.n_cols), -1);
    std::vector<int> visited(static_cast<std::size_t>(g.n_rows), 0);
    std::vector<char> row_in(static_cast<std::size_t>(g.n_rows), 0);
    for (int r : rows) row_in[static_cast<std::size_t>(r)] = 1;
    int stamp = 0;
    auto try_row = [&](auto&& self, int row) -> bool {
        for (int c : g.row_vars[static_cast<std::size_t>(row)]) {
            if (!col_allowed[static_cast<std::size_t>(c)]) continue;
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
    for (int r : rows) {
        ++stamp;
        visited[static_cast<std::size_t>(r)] = stamp;
        if (try_row(try_row, r)) ++matched;
    }
    if (matched != static_cast<int>(rows.size()))
        throw std::invalid_argument("fine_blocks: slice is structurally singular");

    std::vector<int> row_match(static_cast<std::size_t>(g.n_rows), -1);
    for (int c = 0; c < g.n_cols; ++c)
        if (col_match[static_cast<std::size_t>(c)] != -1)
            row_match[static_cast<std::size_t>(col_match[static_cast<std::size_t>(c)])] = c;

    FineBlocks out;
    for (const std::vector<int>& block_rows : detail::fine_block_rows(g, rows, row_match)) {
        FineBlocks::Block b;
        std::vector<int> cols;
        for (int r : block_rows) {
            b.equations.push_back(names.row_ids[static_cast<std::size_t>(r)]);
            cols.push_back(row_match[static_cast<std::size_t>(r)]);
        }
        std::sort(cols.begin(), cols.end());
        for (int c : cols) b.variables.push_back(names.col_names[static_cast<std::size_t>(c)]);
        out.blocks.push_back(std::move(b));
    }
    return out;
}

}  // namespace strudiag
