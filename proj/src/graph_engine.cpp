#include "graph_engine.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <queue>

namespace strudiag::detail {

int Graph::add_row(const std::vector<int>& cols) {
    int row = n_rows++;
    std::vector<int> sorted = cols;
    std::sort(sorted.begin(), sorted.end());
    for (int c : sorted) {
        if (c >= n_cols) n_cols = c + 1;
    }
    if (static_cast<int>(col_rows.size()) < n_cols) col_rows.resize(static_cast<std::size_t>(n_cols));
    for (int c : sorted) col_rows[static_cast<std::size_t>(c)].push_back(row);
    row_vars.push_back(std::move(sorted));
    return row;
}

Graph compile(const StructuralModel& model, NameIndex& names) {
    names.row_ids.clear();
    names.col_names.clear();
    names.row_of.clear();
    names.col_of.clear();

    names.col_names = model.unknown_names();
    for (std::size_t c = 0; c < names.col_names.size(); ++c)
        names.col_of[names.col_names[c]] = static_cast<int>(c);

    Graph g;
    g.n_cols = static_cast<int>(names.col_names.size());
    g.col_rows.resize(names.col_names.size());
    for (const Equation& eq : model.equations()) {
        std::vector<int> cols;
        cols.reserve(eq.unknowns.size());
        for (const VarOccurrence& occ : eq.unknowns) cols.push_back(names.col_of.at(occ.name));
        names.row_of[eq.id] = static_cast<int>(names.row_ids.size());
        names.row_ids.push_back(eq.id);
        g.add_row(cols);
    }
    g.n_cols = static_cast<int>(names.col_names.size());
    if (static_cast<int>(g.col_rows.size()) < g.n_cols) g.col_rows.resize(static_cast<std::size_t>(g.n_cols));
    return g;
}

MatchingEngine::MatchingEngine(const Graph& g)
    : g_(&g),
      row_match_(static_cast<std::size_t>(g.n_rows), -1),
      col_match_(static_cast<std::size_t>(g.n_cols), -1),
      row_active_(static_cast<std::size_t>(g.n_rows), 1),
      visited_(static_cast<std::size_t>(g.n_rows), 0),
      n_active_(g.n_rows) {}

void MatchingEngine::set_all_active(bool active) {
    std::fill(row_active_.begin(), row_active_.end(), active ? 1 : 0);
    n_active_ = active ? g_->n_rows : 0;
}

void MatchingEngine::set_row_active(int row, bool active) {
    auto r = static_cast<std::size_t>(row);
    if (row_active_[r] == (active ? 1 : 0)) return;
    n_active_ += active ? 1 : -1;
    row_active_[r] = active ? 1 : 0;
}

bool MatchingEngine::try_augment_row(int row) {
    // Iterative DFS over rows; columns tried in ascending order.
    visited_[static_cast<std::size_t>(row)] = stamp_;
    struct Frame {
        int row;
        std::size_t next;
    };
    static thread_local std::vector<Frame> stack;
    static thread_local std::vector<int> path;  // cols taken, parallel to stack
    stack.clear();
    path.clear();
    stack.push_back({row, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const std::vector<int>& vars = g_->row_vars[static_cast<std::size_t>(f.row)];
        if (f.next >= vars.size()) {
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        int col = vars[f.next++];
        int owner = col_match_[static_cast<std::size_t>(col)];
        if (owner == -1) {
            // Augment along the path.
            path.push_back(col);
            for (std::size_t i = stack.size(); i-- > 0;) {
                int r = stack[i].row;
                int c = path[i];
                row_match_[static_cast<std::size_t>(r)] = c;
                col_match_[static_cast<std::size_t>(c)] = r;
            }
            return true;
        }
        if (visited_[static_cast<std::size_t>(owner)] != stamp_) {
            visited_[static_cast<std::size_t>(owner)] = stamp_;
            path.push_back(col);
            stack.push_back({owner, 0});
        }
    }
    return false;
}

bool MatchingEngine::try_augment_col(int col) {
    // Searches for an alternating path ending at free column `col`,
    // starting from some unmatched active row. Mirrors try_augment_row
    // from the column side.
    struct Frame {
        int col;
        std::size_t next;
    };
    static thread_local std::vector<Frame> stack;
    static thread_local std::vector<int> path;  // rows taken
    stack.clear();
    path.clear();
    stack.push_back({col, 0});
    while (!stack.empty()) {
        Frame& f = stack.back();
        const std::vector<int>& rows = g_->col_rows[static_cast<std::size_t>(f.col)];
        if (f.next >= rows.size()) {
            stack.pop_back();
            if (!path.empty()) path.pop_back();
            continue;
        }
        int row = rows[f.next++];
        if (!row_active_[static_cast<std::size_t>(row)]) continue;
        if (visited_[static_cast<std::size_t>(row)] == stamp_) continue;
        visited_[static_cast<std::size_t>(row)] = stamp_;
        int owned = row_match_[static_cast<std::size_t>(row)];
        if (owned == -1) {
            path.push_back(row);
            for (std::size_t i = stack.size(); i-- > 0;) {
                int c = stack[i].col;
                int r = path[i];
                row_match_[static_cast<std::size_t>(r)] = c;
                col_match_[static_cast<std::size_t>(c)] = r;
            }
            return true;
        }
        path.push_back(row);
        stack.push_back({owned, 0});
    }
    return false;
}

void MatchingEngine::solve() {
    std::fill(row_match_.begin(), row_match_.end(), -1);
    std::fill(col_match_.begin(), col_match_.end(), -1);
    nu_ = 0;
    for (int r = 0; r < g_->n_rows; ++r) {
        if (!row_active_[static_cast<std::size_t>(r)]) continue;
        ++stamp_;
        if (try_augment_row(r)) ++nu_;
    }
}

bool MatchingEngine::activate_row(int row) {
    auto r = static_cast<std::size_t>(row);
    assert(!row_active_[r]);
    row_active_[r] = 1;
    ++n_active_;
    ++stamp_;
    if (try_augment_row(row)) {
        ++nu_;
        return true;
    }
    return false;
}

bool MatchingEngine::deactivate_row(int row) {
    auto r = static_cast<std::size_t>(row);
    assert(row_active_[r]);
    row_active_[r] = 0;
    --n_active_;
    int col = row_match_[r];
    if (col == -1) return false;
    row_match_[r] = -1;
    col_match_[static_cast<std::size_t>(col)] = -1;
    --nu_;
    // The only column freed by the removal is `col`; any augmenting path in
    // the reduced graph must end there.
    ++stamp_;
    if (try_augment_col(col)) {
        ++nu_;
        return false;
    }
    return true;
}

void MatchingEngine::over_determined(std::vector<char>& row_out, std::vector<char>& col_out) const {
    row_out.assign(static_cast<std::size_t>(g_->n_rows), 0);
    col_out.assign(static_cast<std::size_t>(g_->n_cols), 0);
    static thread_local std::vector<int> queue;
    queue.clear();
    for (int r = 0; r < g_->n_rows; ++r) {
        if (row_active_[static_cast<std::size_t>(r)] && row_match_[static_cast<std::size_t>(r)] == -1) {
            row_out[static_cast<std::size_t>(r)] = 1;
            queue.push_back(r);
        }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int r = queue[qi];
        for (int c : g_->row_vars[static_cast<std::size_t>(r)]) {
            if (col_out[static_cast<std::size_t>(c)]) continue;
            col_out[static_cast<std::size_t>(c)] = 1;
            int owner = col_match_[static_cast<std::size_t>(c)];
            // A free column here would mean an augmenting path.
            assert(owner != -1);
            if (owner != -1 && !row_out[static_cast<std::size_t>(owner)]) {
                row_out[static_cast<std::size_t>(owner)] = 1;
                queue.push_back(owner);
            }
        }
    }
}

void MatchingEngine::under_determined(std::vector<char>& row_out, std::vector<char>& col_out) const {
    row_out.assign(static_cast<std::size_t>(g_->n_rows), 0);
    col_out.assign(static_cast<std::size_t>(g_->n_cols), 0);
    static thread_local std::vector<int> queue;
    queue.clear();
    for (int c = 0; c < g_->n_cols; ++c) {
        if (col_match_[static_cast<std::size_t>(c)] == -1) {
            col_out[static_cast<std::size_t>(c)] = 1;
            queue.push_back(c);
        }
    }
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
        int c = queue[qi];
        for (int r : g_->col_rows[static_cast<std::size_t>(c)]) {
            if (!row_active_[static_cast<std::size_t>(r)]) continue;
            if (row_out[static_cast<std::size_t>(r)]) continue;
            row_out[static_cast<std::size_t>(r)] = 1;
            int owned = row_match_[static_cast<std::size_t>(r)];
            assert(owned != -1);
            if (owned != -1 && !col_out[static_cast<std::size_t>(owned)]) {
                col_out[static_cast<std::size_t>(owned)] = 1;
                queue.push_back(owned);
            }
        }
    }
}

std::vector<std::vector<int>> fine_block_rows(const Graph& g, const std::vector<int>& rows,
                                              const std::vector<int>& row_match) {
    const int n = static_cast<int>(rows.size());
    std::vector<int> order(rows.begin(), rows.end());
    std::sort(order.begin(), order.end());

    std::unordered_map<int, int> local_of;  // graph row -> local index
    local_of.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) local_of[order[static_cast<std::size_t>(i)]] = i;
    std::unordered_map<int, int> owner_of_col;
    for (int r : order) owner_of_col[row_match[static_cast<std::size_t>(r)]] = local_of[r];

    // adj[i] -> rows that must be solved before row i.
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        int r = order[static_cast<std::size_t>(i)];
        int own = row_match[static_cast<std::size_t>(r)];
        for (int c : g.row_vars[static_cast<std::size_t>(r)]) {
            if (c == own) continue;
            auto it = owner_of_col.find(c);
            if (it != owner_of_col.end()) adj[static_cast<std::size_t>(i)].push_back(it->second);
        }
    }

    // Tarjan SCC.
    std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
        comp(static_cast<std::size_t>(n), -1);
    std::vector<char> on_stack(static_cast<std::size_t>(n), 0);
    std::vector<int> stack;
    int next_index = 0, n_comp = 0;
    std::function<void(int)> strongconnect = [&](int v) {
        index[static_cast<std::size_t>(v)] = low[static_cast<std::size_t>(v)] = next_index++;
        stack.push_back(v);
        on_stack[static_cast<std::size_t>(v)] = 1;
        for (int w : adj[static_cast<std::size_t>(v)]) {
            if (index[static_cast<std::size_t>(w)] == -1) {
                strongconnect(w);
                low[static_cast<std::size_t>(v)] =
                    std::min(low[static_cast<std::size_t>(v)], low[static_cast<std::size_t>(w)]);
            } else if (on_stack[static_cast<std::size_t>(w)]) {
                low[static_cast<std::size_t>(v)] =
                    std::min(low[static_cast<std::size_t>(v)], index[static_cast<std::size_t>(w)]);
            }
        }
        if (low[static_cast<std::size_t>(v)] == index[static_cast<std::size_t>(v)]) {
            while (true) {
                int w = stack.back();
                stack.pop_back();
                on_stack[static_cast<std::size_t>(w)] = 0;
                comp[static_cast<std::size_t>(w)] = n_comp;
                if (w == v) break;
            }
            ++n_comp;
        }
    };
    for (int v = 0; v < n; ++v)
        if (index[static_cast<std::size_t>(v)] == -1) strongconnect(v);

    // Condensation: component c depends on comp(w) for every dependency w
    // of its members. Kahn with a min-heap keyed by the smallest member row
    // gives a stable dependency-first order.
    std::vector<std::vector<int>> members(static_cast<std::size_t>(n_comp));
    for (int v = 0; v < n; ++v) members[static_cast<std::size_t>(comp[v])].push_back(v);
    std::vector<std::vector<int>> succs(static_cast<std::size_t>(n_comp));
    std::vector<int> dep_count(static_cast<std::size_t>(n_comp), 0);
    {
        std::vector<std::vector<int>> dep_sets(static_cast<std::size_t>(n_comp));
        for (int v = 0; v < n; ++v) {
            for (int w : adj[static_cast<std::size_t>(v)]) {
                int cv = comp[static_cast<std::size_t>(v)], cw = comp[static_cast<std::size_t>(w)];
                if (cv != cw) dep_sets[static_cast<std::size_t>(cv)].push_back(cw);
            }
        }
        for (int c = 0; c < n_comp; ++c) {
            auto& ds = dep_sets[static_cast<std::size_t>(c)];
            std::sort(ds.begin(), ds.end());
            ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
            dep_count[static_cast<std::size_t>(c)] = static_cast<int>(ds.size());
            for (int d : ds) succs[static_cast<std::size_t>(d)].push_back(c);
        }
    }

    auto smallest_row = [&](int c) { return order[static_cast<std::size_t>(members[static_cast<std::size_t>(c)].front())]; };
    std::priority_queue<std::pair<int, int>, std::vector<std::pair<int, int>>, std::greater<>> ready;
    for (int c = 0; c < n_comp; ++c)
        if (dep_count[static_cast<std::size_t>(c)] == 0) ready.push({smallest_row(c), c});

    std::vector<std::vector<int>> blocks;
    blocks.reserve(static_cast<std::size_t>(n_comp));
    while (!ready.empty()) {
        int c = ready.top().second;
        ready.pop();
        std::vector<int> block;
        for (int v : members[static_cast<std::size_t>(c)]) block.push_back(order[static_cast<std::size_t>(v)]);
        std::sort(block.begin(), block.end());
        blocks.push_back(std::move(block));
        for (int s : succs[static_cast<std::size_t>(c)])
            if (--dep_count[static_cast<std::size_t>(s)] == 0) ready.push({smallest_row(s), s});
    }
    assert(static_cast<int>(blocks.size()) == n_comp);
    return blocks;
}

}  // namespace strudiag::detail
