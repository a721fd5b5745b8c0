#pragma once

#include <memory>
#include <string>
#include <vector>

#include "strudiag/battery.hpp"
#include "strudiag/model.hpp"

namespace strudiag {

enum class PlacementObjective { FullDetectability, FullIsolability };

const char* to_string(PlacementObjective o);

/// What a sensor set must achieve. The fault scope is every fault of the
/// bare model plus the faults of whichever sensors the set installs. For SP
/// packs `robust_esc` demands the objective for every possible external-
/// short module location.
struct PlacementGoal {
    PlacementObjective objective = PlacementObjective::FullIsolability;
    bool robust_esc = true;
};

/// One sensor multiset. Locations are kept sorted; the pack-current
/// position may appear twice.
struct SensorSet {
    std::vector<SensorLocation> sensors;

    int pack_current_count() const;
    int count_of(SensorKind kind) const;
    std::vector<std::string> tokens() const;

    bool operator==(const SensorSet&) const = default;
    bool operator<(const SensorSet& o) const { return sensors < o.sensors; }
};

struct PlacementResult {
    bool feasible = false;
    /// Cardinality-minimal goal-achieving sets (all of them).
    int cardinality = 0;
    long long choice_count = 0;
    std::vector<SensorSet> minimal_sets;

    /// Filled by optimal_sensor_sets: the goal-achieving sets of smallest
    /// cardinality whose faults are all coverable by loop-free residuals.
    int optimal_cardinality = 0;
    std::vector<SensorSet> loop_free_optimal_sets;
};

/// All cardinality-minimal sensor multisets over `candidates` achieving the
/// goal for the model family described by `spec`. The pack-current
/// location may be used up to twice; other locations at most once.
PlacementResult minimal_sensor_sets(const PackSpec& spec,
                                    const std::vector<SensorLocation>& candidates,
                                    const PlacementGoal& goal);

/// Same search over one fixed model (no ESC re-generation).
PlacementResult minimal_sensor_sets(const StructuralModel& model,
                                    const std::vector<SensorLocation>& candidates,
                                    const PlacementGoal& goal);

/// Goal-achieving sets of smallest cardinality that additionally admit a
/// family of loop-free residual generators isolating every fault in scope.
/// Starts at the minimal cardinality and widens until such sets exist.
PlacementResult optimal_sensor_sets(const PackSpec& spec,
                                    const std::vector<SensorLocation>& candidates,
                                    const PlacementGoal& goal);

/// Checks a minimal-set family against the closed-form structure for the
/// given pack: cardinality, pack-current sensor count, per-cell sensor-kind
/// choice structure, and family size.
bool verify_closed_form(Topology topology, int n, int m, const PlacementResult& result);

/// Reusable goal evaluator over a fixed candidate slot list; one instance
/// amortizes the model compilation across many candidate subsets (used by
/// exhaustive verification sweeps). Slot order: the pack-current location
/// twice (when offered), then the remaining candidates deduplicated.
class PlacementChecker {
public:
    PlacementChecker(const PackSpec& spec, const std::vector<SensorLocation>& candidates,
                     const PlacementGoal& goal);
    ~PlacementChecker();
    PlacementChecker(PlacementChecker&&) noexcept;
    PlacementChecker& operator=(PlacementChecker&&) noexcept;

    const std::vector<SensorLocation>& slots() const;
    /// Full goal over the given slot subset (indices into slots()).
    bool achieves(const std::vector<int>& slot_indices);

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

std::string placement_report(const PackSpec& spec, const PlacementGoal& goal,
                             const PlacementResult& result);

}  // namespace strudiag
