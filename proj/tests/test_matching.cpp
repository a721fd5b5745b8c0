#include <catch2/catch_amalgamated.hpp>

#include "strudiag/battery.hpp"
#include "strudiag/matching.hpp"
#include "test_helpers.hpp"

using namespace strudiag;
using testutil::faulted_cell_with;
using testutil::sensored_cell;
using testutil::submodel;

TEST_CASE("maximum matching on the fault-free single cell") {
    Matching m = maximum_matching(single_cell_model(false));
    CHECK(m.cardinality() == 4);
    CHECK(m.completeness == Completeness::WrtEquations);
}

TEST_CASE("maximum matching on the current/voltage MSO") {
    // Five equations over four unknowns (T_11 is untouched): the matching is
    // complete with respect to the unknowns and one equation stays free.
    StructuralModel mso = submodel(sensored_cell(), {"e1", "e2", "e3", "e5", "e6"});
    Matching m = maximum_matching(mso);
    CHECK(m.cardinality() == 4);
    CHECK(m.completeness == Completeness::WrtUnknowns);
}

TEST_CASE("maximum matching on the empty model") {
    Matching m = maximum_matching(new_model(""));
    CHECK(m.pairs.empty());
    CHECK(m.completeness == Completeness::Both);
}

TEST_CASE("canonical matching is lexicographically smallest") {
    // e1 can take x or y; (e1,x),(e2,y) and (e1,y),(e2,x) are both maximum,
    // the canonical choice pairs e1 with the earlier column.
    StructuralModel m = new_model("");
    m.add_equation(Equation{"a", EqKind::Other, {{"x", false}, {"y", false}}, {}, {}});
    m.add_equation(Equation{"b", EqKind::Other, {{"x", false}, {"y", false}}, {}, {}});
    Matching match = maximum_matching(m);
    REQUIRE(match.pairs.size() == 2);
    CHECK(match.pairs[0] == std::pair<std::string, std::string>{"a", "x"});
    CHECK(match.pairs[1] == std::pair<std::string, std::string>{"b", "y"});
}

TEST_CASE("DM of the fault-augmented cell without sensors") {
    DMDecomposition dm = dm_decompose(single_cell_model(true));
    CHECK(dm.under_equations.size() == 7);
    CHECK(dm.under_unknowns.size() == 8);
    CHECK(dm.just_equations.empty());
    CHECK(dm.over_equations.empty());
    CHECK(dm.surplus == 0);
}

TEST_CASE("DM with one load-current sensor is just-determined") {
    DMDecomposition dm = dm_decompose(faulted_cell_with({"IBP"}));
    CHECK(dm.under_equations.empty());
    CHECK(dm.over_equations.empty());
    CHECK(dm.just_equations.size() == 8);
    CHECK(dm.just_unknowns.size() == 8);
}

TEST_CASE("DM with cell current + voltage sensors") {
    // e6 (external short path), e7 (current balance) and e4 (thermal, via
    // T_11) stay just-determined; the rest is over-determined with surplus 1
    // and one equivalence class holding all three fault equations.
    StructuralModel m = faulted_cell_with({"I11", "V11"});
    DMDecomposition dm = dm_decompose(m);
    CHECK(dm.under_equations.empty());
    CHECK(testutil::sorted(dm.just_equations) == testutil::sorted({"e4", "e6", "e7"}));
    CHECK(testutil::sorted(dm.over_equations) ==
          testutil::sorted({"e1", "e2", "e3", "e5", "e8", "e9"}));
    CHECK(dm.surplus == 1);
    REQUIRE(dm.classes.size() == 1);

    auto in_class = [&](const std::string& eq) {
        const auto& cls = dm.classes[0];
        return std::find(cls.begin(), cls.end(), eq) != cls.end();
    };
    CHECK(in_class("e5"));  // f_scI_11
    CHECK(in_class("e8"));  // f_y_I11
    CHECK(in_class("e9"));  // f_y_V11
}

TEST_CASE("equivalence classes: pack current + cell voltage group everything") {
    StructuralModel m = faulted_cell_with({"IBP", "V11"});
    DMDecomposition dm = dm_decompose(m);
    REQUIRE(dm.classes.size() == 1);
    for (const std::string id : {"e5", "e6", "e8", "e9"}) {
        const auto& cls = dm.classes[0];
        CHECK(std::find(cls.begin(), cls.end(), id) != cls.end());
    }
}

TEST_CASE("equivalence classes: three sensors split the short-circuit paths") {
    // Sensors I11, V11, IBP: every sensor fault and the internal short get
    // their own class; the external short groups with the load sensor.
    StructuralModel m = faulted_cell_with({"I11", "V11", "IBP"});
    auto classes = equivalence_classes(m);

    auto class_of = [&](const std::string& eq) -> std::vector<std::string> {
        for (const auto& cls : classes)
            if (std::find(cls.begin(), cls.end(), eq) != cls.end()) return cls;
        return {};
    };
    // Fault-carrying equations: e5 = f_scI, e6 = f_scE, e8 = f_y_I11,
    // e9 = f_y_V11, e10 = f_y_IBP.
    CHECK(class_of("e6") == class_of("e10"));
    CHECK(class_of("e5") != class_of("e8"));
    CHECK(class_of("e5") != class_of("e9"));
    CHECK(class_of("e8") != class_of("e9"));
    CHECK(class_of("e5") != class_of("e6"));
}

TEST_CASE("equivalence classes: duplicated load sensor isolates everything") {
    StructuralModel m = faulted_cell_with({"I11", "V11", "IBP", "IBP"});
    auto classes = equivalence_classes(m);
    // All five fault equations end up in distinct classes.
    std::vector<std::string> fault_eqs = {"e5", "e6", "e8", "e9", "e10", "e11"};
    auto class_index = [&](const std::string& eq) -> int {
        for (std::size_t k = 0; k < classes.size(); ++k)
            if (std::find(classes[k].begin(), classes[k].end(), eq) != classes[k].end())
                return static_cast<int>(k);
        return -1;
    };
    std::set<int> distinct;
    for (const std::string& eq : fault_eqs) distinct.insert(class_index(eq));
    CHECK(distinct.size() == fault_eqs.size());
}

TEST_CASE("fine blocks: voltage-only cell has the three-equation loop") {
    StructuralModel m = single_cell_model(false);
    m.add_sensor("V_11", "y_V11");
    FineBlocks fb = fine_blocks(m, {"e1", "e2", "e3", "e4", "e5"},
                                {"V_11", "V_oc_11", "I_11", "SoC_11", "T_11"});
    REQUIRE(fb.blocks.size() == 3);
    CHECK(fb.blocks[0].equations == std::vector<std::string>{"e5"});
    CHECK(fb.blocks[1].equations == std::vector<std::string>{"e1", "e2", "e3"});
    CHECK(fb.blocks[1].size() == 3);
    CHECK(fb.blocks[2].equations == std::vector<std::string>{"e4"});
    CHECK_FALSE(fb.loop_free());
}

TEST_CASE("fine blocks: current-measured cell is loop free") {
    StructuralModel m = single_cell_model(false);
    m.add_sensor("I_11", "y_I11");
    FineBlocks fb = fine_blocks(m, {"e1", "e2", "e3", "e4", "e5"},
                                {"V_11", "V_oc_11", "I_11", "SoC_11", "T_11"});
    CHECK(fb.blocks.size() == 5);
    CHECK(fb.loop_free());
}

TEST_CASE("fine blocks: singleton slice") {
    StructuralModel m = single_cell_model(false);
    m.add_sensor("I_11", "y_I11");
    FineBlocks fb = fine_blocks(m, {"e5"}, {"I_11"});
    REQUIRE(fb.blocks.size() == 1);
    CHECK(fb.blocks[0].equations == std::vector<std::string>{"e5"});
    CHECK(fb.blocks[0].variables == std::vector<std::string>{"I_11"});
}

TEST_CASE("fine blocks rejects bad slices") {
    StructuralModel m = single_cell_model(false);
    CHECK_THROWS_AS(fine_blocks(m, {"e1", "e2"}, {"V_11"}), std::invalid_argument);
    // e2/e3 over {V_11, SoC_11}: V_11 appears in neither -> singular.
    CHECK_THROWS_AS(fine_blocks(m, {"e2", "e3"}, {"V_11", "SoC_11"}), std::invalid_argument);
}
