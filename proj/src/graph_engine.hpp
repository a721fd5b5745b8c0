#pragma once

// Index-level bipartite machinery shared by the analyses. Rows are
// equations, columns are unknown variables. Everything here works on a
// fixed compiled graph with an activity mask over rows, so sensor
// placement can toggle candidate sensor equations without rebuilding.

#include <string>
#include <unordered_map>
#include <vector>

#include "strudiag/model.hpp"

namespace strudiag::detail {

struct Graph {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<std::vector<int>> row_vars;  // per row: ascending col indices
    std::vector<std::vector<int>> col_rows;  // per col: ascending row indices

    int add_row(const std::vector<int>& cols);
};

struct NameIndex {
    std::vector<std::string> row_ids;
    std::vector<std::string> col_names;
    std::unordered_map<std::string, int> row_of;
    std::unordered_map<std::string, int> col_of;
};

/// Compiles the unknown-incidence structure of a model.
Graph compile(const StructuralModel& model, NameIndex& names);

/// Maximum bipartite matching over the active rows of a graph, maintained
/// incrementally under row activation/deactivation. Deterministic: Kuhn's
/// augmenting search visits rows and columns in ascending index order.
class MatchingEngine {
public:
    explicit MatchingEngine(const Graph& g);

    const Graph& graph() const { return *g_; }

    void set_all_active(bool active);
    void set_row_active(int row, bool active);  // no matching update; call solve()
    bool row_active(int row) const { return row_active_[static_cast<std::size_t>(row)] != 0; }

    /// Recomputes the matching from scratch.
    void solve();

    /// Activates an inactive row and restores maximality with one
    /// augmenting search. Returns true if the cardinality grew.
    bool activate_row(int row);

    /// Deactivates an active row and restores maximality. Returns true if
    /// the cardinality shrank.
    bool deactivate_row(int row);

    int cardinality() const { return nu_; }
    int active_rows() const { return n_active_; }
    int row_match(int row) const { return row_match_[static_cast<std::size_t>(row)]; }
    int col_match(int col) const { return col_match_[static_cast<std::size_t>(col)]; }

    /// Equations of the structurally over-determined part: rows reachable
    /// from unmatched active rows by alternating paths. Marks rows in
    /// `row_out` and columns in `col_out` (resized and zeroed here).
    void over_determined(std::vector<char>& row_out, std::vector<char>& col_out) const;

    /// Under-determined part: rows/columns reachable from unmatched columns.
    void under_determined(std::vector<char>& row_out, std::vector<char>& col_out) const;

private:
    bool try_augment_row(int row);
    bool try_augment_col(int col);

    const Graph* g_;
    std::vector<int> row_match_;
    std::vector<int> col_match_;
    std::vector<char> row_active_;
    std::vector<int> visited_;  // per-row stamp
    int stamp_ = 0;
    int nu_ = 0;
    int n_active_ = 0;
};

/// Strongly connected components of the solve-dependency graph of a square,
/// perfectly matched row set. `rows` lists the member rows; `row_match`
/// must assign each a distinct column. Returns blocks in a deterministic
/// dependency order (a block only depends on earlier blocks), each block's
/// rows sorted ascending.
std::vector<std::vector<int>> fine_block_rows(const Graph& g, const std::vector<int>& rows,
                                              const std::vector<int>& row_match);

}  // namespace strudiag::detail
