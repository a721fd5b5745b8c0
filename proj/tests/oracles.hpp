#pragma once

// Definition-level reference implementations used only by tests. Everything
// here is built on an exhaustive bitmask matching routine and stays
// independent of the library's incremental engine.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "strudiag/model.hpp"

namespace oracle {

/// Adjacency: one entry per equation, each a bitmask over variable indices.
/// Limited to 30 variables.
struct Bipartite {
    std::vector<std::uint32_t> eq_vars;
    int n_vars = 0;
};

Bipartite bipartite_of(const strudiag::StructuralModel& model);

/// Maximum matching cardinality by exhaustive search with memoization.
int max_matching(const Bipartite& g);

/// Max matching over a subset of equations (mask over equation indices).
int max_matching_subset(const Bipartite& g, std::uint64_t eq_mask);

/// Over-determined membership by definition: equation e is redundant iff
/// dropping it leaves the maximum matching unchanged.
std::vector<bool> over_determined_equations(const Bipartite& g);

/// Under-determined variable membership: variable x is undeterminable iff
/// dropping its column leaves the maximum matching unchanged.
std::vector<bool> under_determined_variables(const Bipartite& g);

/// Equivalence classes of the over-determined part by the remove-one
/// definition: e ~ e2 iff e2 leaves the over-determined part when e is
/// removed. Returns the partition as sorted equation-index lists, ordered
/// by smallest member.
std::vector<std::vector<int>> equivalence_classes(const Bipartite& g);

/// All MSO sets by scanning every equation subset for: surplus exactly 1,
/// equal to its own over-determined part, and no over-determined proper
/// subset. Equation count limited to 20.
std::vector<std::vector<int>> all_msos(const Bipartite& g);

/// Random structural model for property tests: up to `max_eqs` equations
/// over up to `max_vars` unknowns, every equation nonempty.
strudiag::StructuralModel random_model(std::mt19937& rng, int max_eqs = 12, int max_vars = 12,
                                       bool with_faults = false);

}  // namespace oracle

#include "strudiag/battery.hpp"
#include "strudiag/diagnosability.hpp"
#include "strudiag/placement.hpp"

namespace oracle {

/// True iff the model family reaches the goal with these sensors installed
/// via the public analysis path (fault_analysis over the default universe).
bool public_goal_achieved(const strudiag::PackSpec& spec,
                          const std::vector<strudiag::SensorLocation>& sensors,
                          const strudiag::PlacementGoal& goal);

/// Exhaustive cardinality-ordered subset enumeration over the candidates
/// (pack current duplicable once). Returns all achieving multisets of the
/// smallest achieving cardinality, as sorted location lists.
std::vector<std::vector<strudiag::SensorLocation>> exhaustive_minimal_sets(
    const strudiag::PackSpec& spec, const std::vector<strudiag::SensorLocation>& candidates,
    const strudiag::PlacementGoal& goal);

}  // namespace oracle
