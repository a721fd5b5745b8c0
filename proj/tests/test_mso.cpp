#include <catch2/catch_amalgamated.hpp>

#include "oracles.hpp"
#include "strudiag/diagnosability.hpp"
#include "strudiag/mso.hpp"
#include "test_helpers.hpp"

using namespace strudiag;
using testutil::faulted_cell_with;
using testutil::sensored_cell;

namespace {

std::vector<std::vector<std::string>> mso_ids(const StructuralModel& m) {
    std::vector<std::vector<std::string>> out;
    for (const MSOSet& mso : enumerate_msos(m)) out.push_back(mso.equations);
    return out;
}

std::vector<std::vector<std::string>> oracle_mso_ids(const StructuralModel& m) {
    oracle::Bipartite g = oracle::bipartite_of(m);
    std::vector<std::vector<std::string>> out;
    for (const std::vector<int>& mso : oracle::all_msos(g)) {
        std::vector<std::string> ids;
        for (int e : mso) ids.push_back(m.equations()[static_cast<std::size_t>(e)].id);
        out.push_back(ids);
    }
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("over-determined part of the sensored cell") {
    StructuralModel m = faulted_cell_with({"I11", "V11"});
    CHECK(overdetermined_part(m) == std::vector<std::string>{"e1", "e2", "e3", "e5", "e8", "e9"});
    CHECK(overdetermined_part(faulted_cell_with({"IBP"})).empty());
    CHECK(overdetermined_part(new_model("")).empty());
}

TEST_CASE("fault-free cell with current and voltage sensors has one MSO") {
    StructuralModel m = sensored_cell();
    auto msos = mso_ids(m);
    REQUIRE(msos.size() == 1);
    CHECK(msos[0] == std::vector<std::string>{"e1", "e2", "e3", "e5", "e6"});
}

TEST_CASE("enumeration matches the exhaustive subset scan") {
    CHECK(mso_ids(sensored_cell()) == oracle_mso_ids(sensored_cell()));

    StructuralModel two = faulted_cell_with({"I11", "V11"});
    CHECK(mso_ids(two) == oracle_mso_ids(two));

    StructuralModel three = faulted_cell_with({"I11", "V11", "IBP"});
    CHECK(mso_ids(three) == oracle_mso_ids(three));

    StructuralModel four = faulted_cell_with({"I11", "V11", "IBP", "IBP"});
    CHECK(mso_ids(four) == oracle_mso_ids(four));
}

TEST_CASE("a just-determined model has no MSOs") {
    CHECK(enumerate_msos(faulted_cell_with({"IBP"})).empty());
}

TEST_CASE("union of MSO equations covers the over-determined part") {
    for (auto sensors : {std::vector<std::string>{"I11", "V11"},
                         std::vector<std::string>{"I11", "V11", "IBP"},
                         std::vector<std::string>{"V11", "T11", "IBP", "IBP"}}) {
        StructuralModel m = faulted_cell_with(sensors);
        std::set<std::string> unioned;
        for (const MSOSet& mso : enumerate_msos(m))
            unioned.insert(mso.equations.begin(), mso.equations.end());
        std::vector<std::string> over = overdetermined_part(m);
        CHECK(unioned == std::set<std::string>(over.begin(), over.end()));
    }
}

TEST_CASE("signature matrix marks carried faults") {
    StructuralModel m = faulted_cell_with({"I11", "V11"});
    auto msos = enumerate_msos(m);
    FaultSignatureMatrix fsm = fault_signature_matrix(m, msos);
    REQUIRE(fsm.faults == std::vector<std::string>{"f_scI_11", "f_scE_11", "f_y_I11", "f_y_V11"});

    // Detectability: a fault is detectable iff its column is nonzero.
    auto col_nonzero = [&](std::size_t c) {
        for (const auto& row : fsm.entries)
            if (row[c]) return true;
        return false;
    };
    CHECK(col_nonzero(0));
    CHECK_FALSE(col_nonzero(1));
    CHECK(col_nonzero(2));
    CHECK(col_nonzero(3));
}

TEST_CASE("no MSOs yields an empty signature matrix") {
    StructuralModel m = faulted_cell_with({"IBP"});
    FaultSignatureMatrix fsm = fault_signature_matrix(m, enumerate_msos(m));
    CHECK(fsm.entries.empty());
}

TEST_CASE("signature-derived isolability equals removal-based isolability") {
    StructuralModel m = faulted_cell_with({"I11", "V11", "IBP"});
    auto msos = enumerate_msos(m);
    FaultSignatureMatrix fsm = fault_signature_matrix(m, msos);
    FaultAnalysis fa = fault_analysis(m);
    REQUIRE(fa.faults == fsm.faults);
    for (std::size_t i = 0; i < fa.faults.size(); ++i) {
        for (std::size_t j = 0; j < fa.faults.size(); ++j) {
            if (i == j) continue;
            CHECK(fsm.signature_isolable(i, j) == bool(fa.isolability[i][j]));
        }
    }
}
