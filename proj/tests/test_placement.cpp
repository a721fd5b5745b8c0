#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "strudiag/placement.hpp"
#include "test_helpers.hpp"

using namespace strudiag;

namespace {

std::vector<std::vector<std::string>> token_sets(const std::vector<SensorSet>& sets) {
    std::vector<std::vector<std::string>> out;
    for (const SensorSet& s : sets) out.push_back(s.tokens());
    std::sort(out.begin(), out.end());
    return out;
}

const PlacementGoal kIsolability{PlacementObjective::FullIsolability, true};

}  // namespace

TEST_CASE("single cell minimal isolability sets") {
    PackSpec cell{Topology::SingleCell, 1, 1, true};
    PlacementResult r = minimal_sensor_sets(cell, cell_level_candidates(cell), kIsolability);
    REQUIRE(r.feasible);
    CHECK(r.cardinality == 4);
    CHECK(r.choice_count == 3);
    CHECK(token_sets(r.minimal_sets) ==
          std::vector<std::vector<std::string>>{{"I11", "T11", "IBP", "IBP"},
                                                {"I11", "V11", "IBP", "IBP"},
                                                {"V11", "T11", "IBP", "IBP"}});
}

TEST_CASE("single cell minimal sets match the exhaustive oracle") {
    PackSpec cell{Topology::SingleCell, 1, 1, true};
    auto expected = oracle::exhaustive_minimal_sets(cell, cell_level_candidates(cell), kIsolability);
    PlacementResult r = minimal_sensor_sets(cell, cell_level_candidates(cell), kIsolability);
    std::vector<std::vector<SensorLocation>> got;
    for (const SensorSet& s : r.minimal_sets) got.push_back(s.sensors);
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("2P1S minimal sets") {
    PackSpec spec{Topology::PS, 1, 2, true};
    PlacementResult r = minimal_sensor_sets(spec, cell_level_candidates(spec), kIsolability);
    REQUIRE(r.feasible);
    CHECK(r.cardinality == 4);
    CHECK(r.choice_count == 4);
    for (const SensorSet& s : r.minimal_sets) CHECK(s.pack_current_count() == 2);
    CHECK(verify_closed_form(Topology::PS, 1, 2, r));

    auto expected = oracle::exhaustive_minimal_sets(spec, cell_level_candidates(spec), kIsolability);
    std::vector<std::vector<SensorLocation>> got;
    for (const SensorSet& s : r.minimal_sets) got.push_back(s.sensors);
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("2S1P minimal sets") {
    PackSpec spec{Topology::SP, 2, 1, true, 1};
    PlacementResult r = minimal_sensor_sets(spec, cell_level_candidates(spec), kIsolability);
    REQUIRE(r.feasible);
    CHECK(r.cardinality == 4);
    CHECK(r.choice_count == 4);
    for (const SensorSet& s : r.minimal_sets) {
        CHECK(s.pack_current_count() == 2);
        CHECK(s.count_of(SensorKind::CellCurrent) == 0);
    }
    CHECK(verify_closed_form(Topology::SP, 2, 1, r));

    auto expected = oracle::exhaustive_minimal_sets(spec, cell_level_candidates(spec), kIsolability);
    std::vector<std::vector<SensorLocation>> got;
    for (const SensorSet& s : r.minimal_sets) got.push_back(s.sensors);
    std::sort(got.begin(), got.end());
    CHECK(got == expected);
}

TEST_CASE("minimality: removing any sensor breaks the goal") {
    PackSpec spec{Topology::PS, 1, 2, true};
    PlacementResult r = minimal_sensor_sets(spec, cell_level_candidates(spec), kIsolability);
    for (const SensorSet& s : r.minimal_sets) {
        for (std::size_t drop = 0; drop < s.sensors.size(); ++drop) {
            std::vector<SensorLocation> reduced;
            for (std::size_t i = 0; i < s.sensors.size(); ++i)
                if (i != drop) reduced.push_back(s.sensors[i]);
            CHECK_FALSE(oracle::public_goal_achieved(spec, reduced, kIsolability));
        }
    }
}

TEST_CASE("infeasible goal is reported") {
    PackSpec cell{Topology::SingleCell, 1, 1, true};
    std::vector<SensorLocation> only_temp = {{SensorKind::CellTemperature, 1, 1}};
    PlacementResult r = minimal_sensor_sets(cell, only_temp, kIsolability);
    CHECK_FALSE(r.feasible);
    CHECK(r.minimal_sets.empty());
}

TEST_CASE("detectability goal needs fewer sensors") {
    PackSpec cell{Topology::SingleCell, 1, 1, true};
    PlacementGoal detect{PlacementObjective::FullDetectability, true};
    PlacementResult r = minimal_sensor_sets(cell, cell_level_candidates(cell), detect);
    REQUIRE(r.feasible);
    CHECK(r.cardinality < 4);
    for (const SensorSet& s : r.minimal_sets)
        CHECK(oracle::public_goal_achieved(cell, s.sensors, detect));
}

TEST_CASE("single cell optimal sets are the loop-free minimal ones") {
    PackSpec cell{Topology::SingleCell, 1, 1, true};
    PlacementResult r = optimal_sensor_sets(cell, cell_level_candidates(cell), kIsolability);
    REQUIRE(r.feasible);
    CHECK(r.optimal_cardinality == r.cardinality);
    CHECK_FALSE(r.loop_free_optimal_sets.empty());
    auto sets = token_sets(r.loop_free_optimal_sets);
    CHECK(std::find(sets.begin(), sets.end(),
                    std::vector<std::string>{"I11", "V11", "IBP", "IBP"}) != sets.end());
}

TEST_CASE("2P1S optimal sets augment the current sensors with a voltage tap") {
    // With current sensors only, the external-short fault shares every
    // loop-free residual with the two current-sensor faults (the only
    // loop-free route to the cell voltage runs through the external-short
    // model plus the module balance, which drags both current readings
    // in). One voltage sensor separates them, at cardinality five.
    PackSpec spec{Topology::PS, 1, 2, true};
    PlacementResult r = optimal_sensor_sets(spec, cell_level_candidates(spec), kIsolability);
    REQUIRE(r.feasible);
    CHECK(r.cardinality == 4);
    CHECK(r.optimal_cardinality == 5);
    auto sets = token_sets(r.loop_free_optimal_sets);
    CHECK(std::find(sets.begin(), sets.end(),
                    std::vector<std::string>{"I11", "I12", "V11", "IBP", "IBP"}) != sets.end());
    for (const SensorSet& s : r.loop_free_optimal_sets) {
        CHECK(s.count_of(SensorKind::CellCurrent) == 2);
        CHECK(oracle::public_goal_achieved(spec, s.sensors, kIsolability));
    }
}
