#include <catch2/catch_amalgamated.hpp>

#include "strudiag/diagnosability.hpp"
#include "test_helpers.hpp"

using namespace strudiag;
using testutil::faulted_cell_with;

namespace {

const std::vector<std::string> kCellUniverse = {"f_scI_11", "f_y_IBP", "f_y_I11",
                                                "f_scE_11", "f_y_V11", "f_y_T11"};

std::vector<std::string> labels_of(const std::vector<std::string>& sensors,
                                   const std::vector<std::string>& universe) {
    FaultAnalysis fa = fault_analysis(faulted_cell_with(sensors), universe);
    std::vector<std::string> out;
    for (FaultLabel l : fa.labels) out.emplace_back(to_string(l));
    return out;
}

}  // namespace

TEST_CASE("detectable faults per sensor set") {
    CHECK(detectable_faults(single_cell_model(true)).empty());
    CHECK(detectable_faults(faulted_cell_with({"IBP"})).empty());
    CHECK(testutil::sorted(detectable_faults(faulted_cell_with({"I11", "V11"}))) ==
          testutil::sorted({"f_scI_11", "f_y_I11", "f_y_V11"}));
    CHECK(testutil::sorted(detectable_faults(faulted_cell_with({"I11", "V11", "IBP"}))) ==
          testutil::sorted({"f_scI_11", "f_scE_11", "f_y_IBP", "f_y_I11", "f_y_V11"}));
}

TEST_CASE("pairwise isolability") {
    StructuralModel three = faulted_cell_with({"I11", "V11", "IBP"});
    CHECK(isolable(three, "f_scI_11", "f_scE_11"));
    CHECK_FALSE(isolable(three, "f_scE_11", "f_y_IBP"));

    StructuralModel two = faulted_cell_with({"IBP", "V11"});
    CHECK_FALSE(isolable(two, "f_scI_11", "f_y_V11"));

    CHECK_THROWS_AS(isolable(three, "f_scI_11", "f_scI_11"), std::invalid_argument);
    CHECK_THROWS_AS(isolable(three, "f_scI_11", "nope"), std::invalid_argument);
}

// Reference labels for the single cell without sensors and with one sensor.
TEST_CASE("single cell labels: zero or one sensor") {
    const std::vector<std::string> universe = {"f_scI_11", "f_scE_11", "f_y_IBP",
                                               "f_y_I11",  "f_y_V11",  "f_y_T11"};
    CHECK(labels_of({}, universe) ==
          std::vector<std::string>{"ND", "ND", "NA", "NA", "NA", "NA"});
    CHECK(labels_of({"IBP"}, universe) ==
          std::vector<std::string>{"ND", "ND", "ND", "NA", "NA", "NA"});
    CHECK(labels_of({"I11"}, universe) ==
          std::vector<std::string>{"ND", "ND", "NA", "ND", "NA", "NA"});
    CHECK(labels_of({"V11"}, universe) ==
          std::vector<std::string>{"ND", "ND", "NA", "NA", "ND", "NA"});
    CHECK(labels_of({"T11"}, universe) ==
          std::vector<std::string>{"ND", "ND", "NA", "NA", "NA", "ND"});
}

TEST_CASE("single cell labels: two sensors") {
    const std::vector<std::string> u = {"f_scI_11", "f_scE_11", "f_y_IBP",
                                        "f_y_I11",  "f_y_V11",  "f_y_T11"};
    CHECK(labels_of({"I11", "V11"}, u) ==
          std::vector<std::string>{"D,NI", "ND", "NA", "D,NI", "D,NI", "NA"});
    CHECK(labels_of({"I11", "T11"}, u) ==
          std::vector<std::string>{"D,NI", "ND", "NA", "D,NI", "NA", "D,NI"});
    CHECK(labels_of({"V11", "T11"}, u) ==
          std::vector<std::string>{"D,NI", "ND", "NA", "NA", "D,NI", "D,NI"});
    CHECK(labels_of({"IBP", "I11"}, u) ==
          std::vector<std::string>{"D,NI", "D,NI", "D,NI", "D,NI", "NA", "NA"});
    CHECK(labels_of({"IBP", "V11"}, u) ==
          std::vector<std::string>{"D,NI", "D,NI", "D,NI", "NA", "D,NI", "NA"});
    CHECK(labels_of({"IBP", "T11"}, u) ==
          std::vector<std::string>{"D,NI", "D,NI", "D,NI", "NA", "NA", "D,NI"});
}

TEST_CASE("single cell labels: three sensors") {
    const std::vector<std::string> u = {"f_scI_11", "f_scE_11", "f_y_IBP",
                                        "f_y_I11",  "f_y_V11",  "f_y_T11"};
    CHECK(labels_of({"I11", "V11", "T11"}, u) ==
          std::vector<std::string>{"D,UI", "ND", "NA", "D,UI", "D,UI", "D,UI"});
    CHECK(labels_of({"I11", "V11", "IBP"}, u) ==
          std::vector<std::string>{"D,UI", "D,I", "D,I", "D,UI", "D,UI", "NA"});
    CHECK(labels_of({"I11", "T11", "IBP"}, u) ==
          std::vector<std::string>{"D,UI", "D,I", "D,I", "D,UI", "NA", "D,UI"});
    CHECK(labels_of({"V11", "T11", "IBP"}, u) ==
          std::vector<std::string>{"D,UI", "D,I", "D,I", "NA", "D,UI", "D,UI"});
}

TEST_CASE("single cell labels: four sensors") {
    const std::vector<std::string> u = {"f_scI_11", "f_scE_11", "f_y_IBP1", "f_y_I11",
                                        "f_y_V11",  "f_y_T11",  "f_y_IBP2"};
    // Single load sensor installed under the name y_IBP1 so the column
    // follows the doubled-sensor naming convention.
    StructuralModel one_ibp = single_cell_model(true);
    one_ibp.add_sensor("I_11", "y_I11");
    one_ibp.add_sensor("V_11", "y_V11");
    one_ibp.add_sensor("T_11", "y_T11");
    one_ibp.add_sensor("I_BP", "y_IBP1");
    FaultAnalysis fa = fault_analysis(one_ibp, u);
    std::vector<std::string> labels;
    for (FaultLabel l : fa.labels) labels.emplace_back(to_string(l));
    CHECK(labels == std::vector<std::string>{"D,UI", "D,I", "D,I", "D,UI", "D,UI", "D,UI", "NA"});

    CHECK(labels_of({"I11", "V11", "IBP", "IBP"}, u) ==
          std::vector<std::string>{"D,UI", "D,UI", "D,UI", "D,UI", "D,UI", "NA", "D,UI"});
    CHECK(labels_of({"I11", "T11", "IBP", "IBP"}, u) ==
          std::vector<std::string>{"D,UI", "D,UI", "D,UI", "D,UI", "NA", "D,UI", "D,UI"});
    CHECK(labels_of({"V11", "T11", "IBP", "IBP"}, u) ==
          std::vector<std::string>{"D,UI", "D,UI", "D,UI", "NA", "D,UI", "D,UI", "D,UI"});
}

TEST_CASE("fault analysis defaults to model fault order") {
    StructuralModel m = faulted_cell_with({"I11", "V11"});
    FaultAnalysis fa = fault_analysis(m);
    CHECK(fa.faults == std::vector<std::string>{"f_scI_11", "f_scE_11", "f_y_I11", "f_y_V11"});
    CHECK(fa.label_of("f_scE_11") == FaultLabel::ND);
}

TEST_CASE("undetectable rows are entirely non-isolable") {
    StructuralModel m = faulted_cell_with({"I11", "V11"});
    FaultAnalysis fa = fault_analysis(m);
    std::size_t i = fa.index_of("f_scE_11");
    for (std::size_t j = 0; j < fa.faults.size(); ++j) CHECK_FALSE(fa.isolability[i][j]);
}
