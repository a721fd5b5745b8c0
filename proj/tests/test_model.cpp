#include <catch2/catch_amalgamated.hpp>

#include "strudiag/model.hpp"
#include "test_helpers.hpp"

using namespace strudiag;

TEST_CASE("new_model starts empty") {
    StructuralModel m = new_model("single cell");
    CHECK(m.equations().empty());
    CHECK(m.variables().empty());
    CHECK(new_model("").description().empty());
    CHECK(new_model("3P3S traditional").description() == "3P3S traditional");
}

TEST_CASE("add_equation builds incidence rows") {
    StructuralModel m = new_model("cell fragment");
    m.add_equation(Equation{"e1", EqKind::Ecm, {{"V_11", false}, {"V_oc_11", false}, {"I_11", false}}, {}, {}});
    m.add_equation(Equation{"e2", EqKind::SocDynamics, {{"I_11", false}, {"SoC_11", true}}, {}, {}});
    m.add_equation(Equation{"e3", EqKind::Ocv, {{"V_oc_11", false}, {"SoC_11", false}}, {}, {}});
    m.add_equation(Equation{"e4", EqKind::Thermal, {{"I_11", false}, {"T_11", true}}, {"Q_TMS_11"}, {}});

    IncidenceMatrix inc = m.incidence_matrix();
    REQUIRE(inc.cols == std::vector<std::string>{"V_11", "V_oc_11", "I_11", "SoC_11", "T_11"});
    CHECK(std::vector<int>(inc.entries.begin(), inc.entries.begin() + 5) ==
          std::vector<int>{1, 1, 1, 0, 0});
    CHECK(std::vector<int>(inc.entries.begin() + 5, inc.entries.begin() + 10) ==
          std::vector<int>{0, 0, 1, 1, 0});
    CHECK(inc.diff_at(1, 3) == 1);  // SoC differentiated in e2
    CHECK(inc.diff_at(1, 2) == 0);
}

TEST_CASE("add_equation rejects duplicates and kind conflicts") {
    StructuralModel m = new_model("");
    m.add_equation(Equation{"e1", EqKind::Other, {{"x", false}}, {}, {}});
    CHECK_THROWS_AS(m.add_equation(Equation{"e1", EqKind::Other, {{"y", false}}, {}, {}}),
                    std::invalid_argument);
    // x already registered as unknown; re-registering as known must fail.
    CHECK_THROWS_AS(m.add_equation(Equation{"e2", EqKind::Other, {{"y", false}}, {"x"}, {}}),
                    std::invalid_argument);
    // Equations must reference something.
    CHECK_THROWS_AS(m.add_equation(Equation{"e3", EqKind::Other, {}, {}, {}}),
                    std::invalid_argument);
}

TEST_CASE("add_sensor appends reading + fault") {
    StructuralModel m = single_cell_model(false);
    m.add_sensor("I_11", "y_I11");
    REQUIRE(m.equations().size() == 5);
    const Equation& e5 = m.equations().back();
    CHECK(e5.id == "e5");
    CHECK(e5.kind == EqKind::Sensor);
    CHECK(e5.unknowns == std::vector<VarOccurrence>{{"I_11", false}});
    CHECK(e5.knowns == std::vector<std::string>{"y_I11"});
    CHECK(e5.faults == std::vector<std::string>{"f_y_I11"});
    CHECK(m.variable("y_I11").kind == VarKind::Known);
    CHECK(m.variable("f_y_I11").kind == VarKind::Fault);
}

TEST_CASE("duplicate sensors on one target get distinct names") {
    StructuralModel m = single_cell_model(true);
    std::vector<SensorLocation> locs = {
        {SensorKind::PackCurrent}, {SensorKind::PackCurrent}};
    StructuralModel sensored = with_sensors(m, locs);
    CHECK(sensored.has_variable("y_IBP1"));
    CHECK(sensored.has_variable("y_IBP2"));
    CHECK(sensored.has_variable("f_y_IBP1"));
    CHECK(sensored.has_variable("f_y_IBP2"));
    CHECK(sensored.equations().size() == 9);
}

TEST_CASE("sensors cannot measure knowns or faults") {
    StructuralModel m = single_cell_model(true);
    CHECK_THROWS_AS(m.add_sensor("f_scI_11", "y_f"), std::invalid_argument);
    CHECK_THROWS_AS(m.add_sensor("Q_TMS_11", "y_q"), std::invalid_argument);
    CHECK_THROWS_AS(m.add_sensor("nope", "y_n"), std::invalid_argument);
}

TEST_CASE("sensor addition shifts counts by one equation/known/fault") {
    StructuralModel before = single_cell_model(true);
    StructuralModel after = before;
    after.add_sensor("I_11", "y_I11");
    CHECK(after.equations().size() == before.equations().size() + 1);
    CHECK(after.known_names().size() == before.known_names().size() + 1);
    CHECK(after.fault_names().size() == before.fault_names().size() + 1);
    CHECK(after.unknown_count() == before.unknown_count());
    CHECK(after.redundancy_degree() == before.redundancy_degree() + 1);
}

TEST_CASE("redundancy degree") {
    CHECK(single_cell_model(false).redundancy_degree() == -1);
    CHECK(single_cell_model(true).redundancy_degree() == -1);
    CHECK(testutil::sensored_cell().redundancy_degree() == 1);
}

TEST_CASE("empty incidence matrix") {
    StructuralModel m = new_model("");
    IncidenceMatrix inc = m.incidence_matrix();
    CHECK(inc.rows.empty());
    CHECK(inc.cols.empty());
    CHECK(inc.entries.empty());
}

TEST_CASE("incidence is a pure function of the structure") {
    StructuralModel a = single_cell_model(true);
    StructuralModel b = single_cell_model(true);
    CHECK(a.incidence_matrix().entries == b.incidence_matrix().entries);
    CHECK(a.structurally_equal(b));
}
