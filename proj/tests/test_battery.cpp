#include <catch2/catch_amalgamated.hpp>

#include "strudiag/battery.hpp"
#include "test_helpers.hpp"

using namespace strudiag;

TEST_CASE("single cell incidence matches the reference table") {
    IncidenceMatrix inc = single_cell_model(false).incidence_matrix();
    REQUIRE(inc.rows == std::vector<std::string>{"e1", "e2", "e3", "e4"});
    REQUIRE(inc.cols == std::vector<std::string>{"V_11", "V_oc_11", "I_11", "SoC_11", "T_11"});
    const std::vector<int> expected = {
        1, 1, 1, 0, 0,  // e1
        0, 0, 1, 1, 0,  // e2
        0, 1, 0, 1, 0,  // e3
        0, 0, 1, 0, 1,  // e4
    };
    CHECK(std::vector<int>(inc.entries.begin(), inc.entries.end()) == expected);
}

TEST_CASE("fault-augmented single cell counts") {
    StructuralModel m = single_cell_model(true);
    CHECK(m.equations().size() == 7);
    CHECK(m.unknown_count() == 8);
    CHECK(m.fault_names() == std::vector<std::string>{"f_scI_11", "f_scE_11"});
    CHECK(m.redundancy_degree() == -1);
}

TEST_CASE("PS pack expansion for one module of two parallel cells") {
    PackSpec spec{Topology::PS, 1, 2, true};
    StructuralModel m = pack_model(spec);
    CHECK(m.equations().size() == 13);
    CHECK(m.unknown_count() == 14);
    CHECK(m.redundancy_degree() == -1);
    CHECK(m.fault_names() == std::vector<std::string>{"f_scI_11", "f_scI_12", "f_scE_1"});
    // Module equations reference the right variables.
    const Equation& kcl = m.equation("e7_1");
    CHECK(kcl.unknowns == std::vector<VarOccurrence>{
                              {"I_11", false}, {"I_12", false}, {"I_BP", false}, {"I_scE_1", false}});
    CHECK(m.equation("e8_1_1").unknowns ==
          std::vector<VarOccurrence>{{"V_11", false}, {"V_12", false}});
}

TEST_CASE("SP pack expansion for one string of two series cells") {
    PackSpec spec{Topology::SP, 2, 1, true, 1};
    StructuralModel m = pack_model(spec);
    CHECK(m.equations().size() == 16);
    CHECK(m.unknown_count() == 17);
    CHECK(m.redundancy_degree() == -1);
    CHECK(m.fault_names() == std::vector<std::string>{"f_scI_11", "f_scI_21", "f_scE_1"});
    CHECK(m.equation("e10_1").unknowns ==
          std::vector<VarOccurrence>{{"I_scE_1", false}, {"V_11", false}, {"V_21", false}});
    CHECK(m.equation("e11_1_2").unknowns ==
          std::vector<VarOccurrence>{{"I_21", false}, {"I_1M", false}, {"I_scE_1", false}});
    CHECK(m.equation("e8").unknowns ==
          std::vector<VarOccurrence>{{"I_1M", false}, {"I_BP", false}});
}

TEST_CASE("pack equation counts follow the closed forms") {
    for (int n = 1; n <= 4; ++n) {
        for (int m_par = 2; m_par <= 4; ++m_par) {
            PackSpec spec{Topology::PS, n, m_par, true};
            StructuralModel m = pack_model(spec);
            CHECK(static_cast<int>(m.equations().size()) == 5 * n * m_par + n * (m_par + 1));
            CHECK(static_cast<int>(m.unknown_count()) == 6 * n * m_par + n + 1);
            CHECK(m.redundancy_degree() == -1);

            PackSpec ff = spec;
            ff.with_faults = false;
            CHECK(pack_model(ff).redundancy_degree() == -1);
        }
    }
    for (int n = 2; n <= 4; ++n) {
        for (int m_par = 1; m_par <= 4; ++m_par) {
            PackSpec spec{Topology::SP, n, m_par, true, 1};
            StructuralModel m = pack_model(spec);
            CHECK(static_cast<int>(m.equations().size()) == 5 * n * m_par + m_par * (n + 1) + m_par + 2);
            CHECK(static_cast<int>(m.unknown_count()) == 6 * n * m_par + 2 * m_par + 3);
            CHECK(m.redundancy_degree() == -1);

            PackSpec ff = spec;
            ff.with_faults = false;
            CHECK(pack_model(ff).redundancy_degree() == -1);
        }
    }
}

TEST_CASE("every PS balance equation carries the load current; SP has exactly one") {
    StructuralModel ps = pack_model({Topology::PS, 3, 2, true});
    int ps_ibp = 0;
    for (const Equation& e : ps.equations())
        for (const VarOccurrence& occ : e.unknowns)
            if (occ.name == "I_BP") ++ps_ibp;
    CHECK(ps_ibp == 3);  // one KCL per module

    StructuralModel sp = pack_model({Topology::SP, 3, 2, true, 1});
    int sp_ibp = 0;
    for (const Equation& e : sp.equations())
        for (const VarOccurrence& occ : e.unknowns)
            if (occ.name == "I_BP") ++sp_ibp;
    CHECK(sp_ibp == 1);  // the pack balance only
}

TEST_CASE("pack spec validation") {
    CHECK_THROWS_AS(pack_model({Topology::PS, 2, 1, true}), std::invalid_argument);
    CHECK_THROWS_AS(pack_model({Topology::SP, 1, 2, true}), std::invalid_argument);
    CHECK_THROWS_AS(pack_model({Topology::SP, 2, 2, true, 5}), std::invalid_argument);
    CHECK_THROWS_AS(pack_model({Topology::PS, 0, 2, true}), std::invalid_argument);
}

TEST_CASE("candidate sensor lists") {
    PackSpec cell{Topology::SingleCell, 1, 1, true};
    std::vector<std::string> tokens;
    for (const SensorLocation& loc : candidate_sensors(cell)) tokens.push_back(loc.token());
    CHECK(tokens == std::vector<std::string>{"IBP", "I11", "V11", "T11"});

    PackSpec ps{Topology::PS, 2, 2, true};
    CHECK(candidate_sensors(ps).size() == 1 + 3 * 4);

    PackSpec sp{Topology::SP, 2, 2, true, 1};
    std::vector<std::string> sp_tokens;
    for (const SensorLocation& loc : candidate_sensors(sp)) sp_tokens.push_back(loc.token());
    CHECK(std::count(sp_tokens.begin(), sp_tokens.end(), "I1M") == 1);
    CHECK(std::count(sp_tokens.begin(), sp_tokens.end(), "I2M") == 1);

    PackSpec psmv = ps;
    psmv.with_module_voltage = true;
    std::vector<std::string> mv_tokens;
    for (const SensorLocation& loc : candidate_sensors(psmv)) mv_tokens.push_back(loc.token());
    CHECK(std::count(mv_tokens.begin(), mv_tokens.end(), "V1M") == 1);
    CHECK(std::count(mv_tokens.begin(), mv_tokens.end(), "V2M") == 1);
}

TEST_CASE("sensor token parsing round-trips") {
    for (const std::string t : {"IBP", "I11", "V23", "T12", "I1M", "V2M", "T3M"})
        CHECK(sensor_location_from_token(t).token() == t);
    CHECK_THROWS_AS(sensor_location_from_token("Q11"), std::invalid_argument);
    CHECK_THROWS_AS(sensor_location_from_token("IBP2"), std::invalid_argument);
}

TEST_CASE("traditional sensor sets") {
    StructuralModel ps = traditional_sensor_model({Topology::PS, 3, 3, true});
    // Pack current + 3 module voltages + 3 module temperatures.
    CHECK(ps.has_variable("y_IBP"));
    for (int i = 1; i <= 3; ++i) {
        CHECK(ps.has_variable("y_V" + std::to_string(i) + "M"));
        CHECK(ps.has_variable("y_T" + std::to_string(i) + "M"));
    }
    CHECK(ps.redundancy_degree() == 7 - 1);

    StructuralModel sp = traditional_sensor_model({Topology::SP, 3, 3, true, 1});
    CHECK(sp.has_variable("y_IBP"));
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j)
            CHECK(sp.has_variable("y_V" + std::to_string(i) + std::to_string(j)));
    for (int j = 1; j <= 3; ++j) CHECK(sp.has_variable("y_T" + std::to_string(j) + "M"));
    CHECK(sp.redundancy_degree() == 13 - 1);

    // Module thermal equations average exactly the module's cell temperatures.
    const Equation& etm = sp.equation("etm_2");
    CHECK(etm.unknowns == std::vector<VarOccurrence>{
                              {"T_2M", false}, {"T_12", false}, {"T_22", false}, {"T_32", false}});
}

TEST_CASE("module thermal equations for PS span the parallel cells") {
    PackSpec spec{Topology::PS, 2, 2, true};
    spec.with_module_thermal = true;
    StructuralModel m = pack_model(spec);
    const Equation& etm = m.equation("etm_1");
    CHECK(etm.unknowns == std::vector<VarOccurrence>{
                              {"T_1M", false}, {"T_11", false}, {"T_12", false}});
    CHECK(m.redundancy_degree() == -1);
}
