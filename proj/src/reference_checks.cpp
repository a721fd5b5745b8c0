#include "strudiag/reference_checks.hpp"

#include <algorithm>
#include <functional>
#include <sstream>

#include "strudiag/battery.hpp"
#include "strudiag/causality.hpp"
#include "strudiag/diagnosability.hpp"
#include "strudiag/io.hpp"
#include "strudiag/matching.hpp"
#include "strudiag/mso.hpp"
#include "strudiag/placement.hpp"

// Built-in regression suite over the battery reference analyses: the
// single-cell incidence table, the sensor-set label tables, the sensor
// configuration decompositions, the residual sequences and the minimal
// placement families, with the expected values frozen here.

namespace strudiag {

namespace {

void add_check(std::vector<ReferenceCheck>& out, const std::string& name,
               const std::function<void(std::ostringstream&)>& body) {
    ReferenceCheck check;
    check.name = name;
    std::ostringstream detail;
    try {
        body(detail);
        check.detail = detail.str();
        check.passed = check.detail.empty();
    } catch (const std::exception& e) {
        check.passed = false;
        check.detail = std::string("exception: ") + e.what();
    }
    out.push_back(std::move(check));
}

StructuralModel cell_with(const std::vector<std::string>& tokens) {
    std::vector<SensorLocation> locs;
    for (const std::string& t : tokens) locs.push_back(sensor_location_from_token(t));
    return with_sensors(single_cell_model(true), locs);
}

void expect_labels(std::ostringstream& detail, const StructuralModel& model,
                   const std::vector<std::string>& universe,
                   const std::vector<std::string>& expected, const std::string& row) {
    FaultAnalysis fa = fault_analysis(model, universe);
    for (std::size_t i = 0; i < universe.size(); ++i) {
        if (std::string(to_string(fa.labels[i])) != expected[i]) {
            detail << row << ": " << universe[i] << " expected " << expected[i] << " got "
                   << to_string(fa.labels[i]) << "; ";
        }
    }
}

const std::vector<std::string> kUniverse6 = {"f_scI_11", "f_scE_11", "f_y_IBP",
                                             "f_y_I11",  "f_y_V11",  "f_y_T11"};
const std::vector<std::string> kUniverse7 = {"f_scI_11", "f_scE_11", "f_y_IBP1", "f_y_I11",
                                             "f_y_V11",  "f_y_T11",  "f_y_IBP2"};

bool in_class(const std::vector<std::vector<std::string>>& classes, const std::string& a,
              const std::string& b) {
    for (const auto& cls : classes) {
        bool has_a = std::find(cls.begin(), cls.end(), a) != cls.end();
        bool has_b = std::find(cls.begin(), cls.end(), b) != cls.end();
        if (has_a) return has_b;
    }
    return false;
}

void check_placement_row(std::ostringstream& detail, Topology topology, int n, int m,
                         int expect_cardinality, long long expect_choices, int expect_pack) {
    PackSpec spec{topology, n, m, true};
    PlacementGoal goal{PlacementObjective::FullIsolability, true};
    PlacementResult r = minimal_sensor_sets(spec, cell_level_candidates(spec), goal);
    const std::string row = (topology == Topology::PS)
                                ? std::to_string(m) + "P" + std::to_string(n) + "S"
                                : std::to_string(n) + "S" + std::to_string(m) + "P";
    if (!r.feasible) {
        detail << row << ": infeasible; ";
        return;
    }
    if (r.cardinality != expect_cardinality)
        detail << row << ": cardinality " << r.cardinality << " != " << expect_cardinality << "; ";
    if (r.choice_count != expect_choices)
        detail << row << ": choices " << r.choice_count << " != " << expect_choices << "; ";
    for (const SensorSet& s : r.minimal_sets) {
        if (s.pack_current_count() != expect_pack) {
            detail << row << ": a set has " << s.pack_current_count()
                   << " pack-current sensors, expected " << expect_pack << "; ";
            break;
        }
    }
    if (!verify_closed_form(topology, n, m, r))
        detail << row << ": closed-form structure check failed; ";
}

}  // namespace

std::vector<ReferenceCheck> run_reference_checks(bool include_slow) {
    std::vector<ReferenceCheck> out;

    add_check(out, "incidence-single-cell", [](std::ostringstream& detail) {
        const std::string expected =
            "equation,V_11,V_oc_11,I_11,SoC_11,T_11\n"
            "e1,1,1,1,0,0\n"
            "e2,0,0,1,1,0\n"
            "e3,0,1,0,1,0\n"
            "e4,0,0,1,0,1\n";
        std::string got = incidence_csv(single_cell_model(false).incidence_matrix());
        if (got != expected) detail << "incidence mismatch:\n" << got;
    });

    add_check(out, "redundancy-ledger", [](std::ostringstream& detail) {
        if (single_cell_model(false).redundancy_degree() != -1) detail << "fault-free cell != -1; ";
        if (single_cell_model(true).redundancy_degree() != -1) detail << "faulted cell != -1; ";
        StructuralModel sensored = single_cell_model(false);
        sensored.add_sensor("I_11", "y_I11");
        sensored.add_sensor("V_11", "y_V11");
        if (sensored.redundancy_degree() != 1) detail << "cell + {I,V} sensors != +1; ";
        for (int n = 1; n <= 4; ++n) {
            for (int m = 2; m <= 4; ++m) {
                for (bool faults : {false, true}) {
                    if (pack_model({Topology::PS, n, m, faults}).redundancy_degree() != -1)
                        detail << m << "P" << n << "S != -1; ";
                }
            }
        }
        for (int n = 2; n <= 4; ++n) {
            for (int m = 1; m <= 4; ++m) {
                for (bool faults : {false, true}) {
                    if (pack_model({Topology::SP, n, m, faults, 1}).redundancy_degree() != -1)
                        detail << n << "S" << m << "P != -1; ";
                }
            }
        }
    });

    add_check(out, "dm-sensor-configs", [](std::ostringstream& detail) {
        // (a) bare faulted cell: everything under-determined.
        DMDecomposition a = dm_decompose(single_cell_model(true));
        if (a.under_equations.size() != 7 || a.under_unknowns.size() != 8)
            detail << "(a) expected 7 equations / 8 unknowns under-determined; ";
        // (b) + load sensor: just-determined.
        DMDecomposition b = dm_decompose(cell_with({"IBP"}));
        if (!b.over_equations.empty() || !b.under_equations.empty())
            detail << "(b) expected just-determined; ";
        // (c) + {I11, V11}: external-short path just-determined, one class.
        DMDecomposition c = dm_decompose(cell_with({"I11", "V11"}));
        auto contains = [](const std::vector<std::string>& v, const std::string& x) {
            return std::find(v.begin(), v.end(), x) != v.end();
        };
        if (!contains(c.just_equations, "e6") || !contains(c.just_equations, "e7"))
            detail << "(c) external-short equations not just-determined; ";
        if (c.classes.size() != 1 || !in_class(c.classes, "e5", "e8") ||
            !in_class(c.classes, "e5", "e9"))
            detail << "(c) expected one class holding e5/e8/e9; ";
        // (d) + {IBP, V11}: all fault equations over-determined, one class.
        DMDecomposition d = dm_decompose(cell_with({"IBP", "V11"}));
        for (const char* eq : {"e5", "e6", "e8", "e9"})
            if (!contains(d.over_equations, eq)) detail << "(d) " << eq << " not over-determined; ";
        if (d.classes.size() != 1) detail << "(d) expected a single class; ";
        // (e) + {I11, V11, IBP}: external short groups with the load sensor.
        auto e_classes = equivalence_classes(cell_with({"I11", "V11", "IBP"}));
        if (!in_class(e_classes, "e6", "e10")) detail << "(e) f_scE/f_y_IBP not grouped; ";
        if (in_class(e_classes, "e5", "e8") || in_class(e_classes, "e8", "e9"))
            detail << "(e) sensor/internal-short classes not separated; ";
        // (f) + {I11, V11, IBP1, IBP2}: every fault equation in its own class.
        auto f_classes = equivalence_classes(cell_with({"I11", "V11", "IBP", "IBP"}));
        const std::vector<std::string> fault_eqs = {"e5", "e6", "e8", "e9", "e10", "e11"};
        for (std::size_t i = 0; i < fault_eqs.size(); ++i)
            for (std::size_t j = i + 1; j < fault_eqs.size(); ++j)
                if (in_class(f_classes, fault_eqs[i], fault_eqs[j]))
                    detail << "(f) " << fault_eqs[i] << " shares a class with " << fault_eqs[j]
                           << "; ";
    });

    add_check(out, "labels-zero-or-one-sensor", [](std::ostringstream& detail) {
        expect_labels(detail, cell_with({}), kUniverse6, {"ND", "ND", "NA", "NA", "NA", "NA"},
                      "none");
        expect_labels(detail, cell_with({"IBP"}), kUniverse6, {"ND", "ND", "ND", "NA", "NA", "NA"},
                      "{IBP}");
        expect_labels(detail, cell_with({"I11"}), kUniverse6, {"ND", "ND", "NA", "ND", "NA", "NA"},
                      "{I11}");
        expect_labels(detail, cell_with({"V11"}), kUniverse6, {"ND", "ND", "NA", "NA", "ND", "NA"},
                      "{V11}");
        expect_labels(detail, cell_with({"T11"}), kUniverse6, {"ND", "ND", "NA", "NA", "NA", "ND"},
                      "{T11}");
    });

    add_check(out, "labels-two-sensors", [](std::ostringstream& detail) {
        expect_labels(detail, cell_with({"I11", "V11"}), kUniverse6,
                      {"D,NI", "ND", "NA", "D,NI", "D,NI", "NA"}, "{I11,V11}");
        expect_labels(detail, cell_with({"I11", "T11"}), kUniverse6,
                      {"D,NI", "ND", "NA", "D,NI", "NA", "D,NI"}, "{I11,T11}");
        expect_labels(detail, cell_with({"V11", "T11"}), kUniverse6,
                      {"D,NI", "ND", "NA", "NA", "D,NI", "D,NI"}, "{V11,T11}");
        expect_labels(detail, cell_with({"IBP", "I11"}), kUniverse6,
                      {"D,NI", "D,NI", "D,NI", "D,NI", "NA", "NA"}, "{IBP,I11}");
        expect_labels(detail, cell_with({"IBP", "V11"}), kUniverse6,
                      {"D,NI", "D,NI", "D,NI", "NA", "D,NI", "NA"}, "{IBP,V11}");
        expect_labels(detail, cell_with({"IBP", "T11"}), kUniverse6,
                      {"D,NI", "D,NI", "D,NI", "NA", "NA", "D,NI"}, "{IBP,T11}");
    });

    add_check(out, "labels-three-sensors", [](std::ostringstream& detail) {
        expect_labels(detail, cell_with({"I11", "V11", "T11"}), kUniverse6,
                      {"D,UI", "ND", "NA", "D,UI", "D,UI", "D,UI"}, "{I11,V11,T11}");
        expect_labels(detail, cell_with({"I11", "V11", "IBP"}), kUniverse6,
                      {"D,UI", "D,I", "D,I", "D,UI", "D,UI", "NA"}, "{I11,V11,IBP}");
        expect_labels(detail, cell_with({"I11", "T11", "IBP"}), kUniverse6,
                      {"D,UI", "D,I", "D,I", "D,UI", "NA", "D,UI"}, "{I11,T11,IBP}");
        expect_labels(detail, cell_with({"V11", "T11", "IBP"}), kUniverse6,
                      {"D,UI", "D,I", "D,I", "NA", "D,UI", "D,UI"}, "{V11,T11,IBP}");
    });

    add_check(out, "labels-four-sensors", [](std::ostringstream& detail) {
        StructuralModel one_ibp = single_cell_model(true);
        one_ibp.add_sensor("I_11", "y_I11");
        one_ibp.add_sensor("V_11", "y_V11");
        one_ibp.add_sensor("T_11", "y_T11");
        one_ibp.add_sensor("I_BP", "y_IBP1");
        expect_labels(detail, one_ibp, kUniverse7,
                      {"D,UI", "D,I", "D,I", "D,UI", "D,UI", "D,UI", "NA"}, "{I,V,T,IBP}");
        expect_labels(detail, cell_with({"I11", "V11", "IBP", "IBP"}), kUniverse7,
                      {"D,UI", "D,UI", "D,UI", "D,UI", "D,UI", "NA", "D,UI"}, "{I,V,IBP1,IBP2}");
        expect_labels(detail, cell_with({"I11", "T11", "IBP", "IBP"}), kUniverse7,
                      {"D,UI", "D,UI", "D,UI", "D,UI", "NA", "D,UI", "D,UI"}, "{I,T,IBP1,IBP2}");
        expect_labels(detail, cell_with({"V11", "T11", "IBP", "IBP"}), kUniverse7,
                      {"D,UI", "D,UI", "D,UI", "NA", "D,UI", "D,UI", "D,UI"}, "{V,T,IBP1,IBP2}");
    });

    add_check(out, "residual-sequence", [](std::ostringstream& detail) {
        StructuralModel m = single_cell_model(false);
        m.add_sensor("I_11", "y_I11");
        m.add_sensor("V_11", "y_V11");
        auto msos = enumerate_msos(m);
        if (msos.size() != 1 ||
            msos[0].equations != std::vector<std::string>{"e1", "e2", "e3", "e5", "e6"}) {
            detail << "expected the single MSO {e1,e2,e3,e5,e6}; ";
            return;
        }
        ComputationalSequence seq = orient(m, msos[0], "e1");
        const std::string expected =
            "(e5 -> I_11)\n"
            "(e2 -> SoC_11 [integral])\n"
            "(e3 -> V_oc_11)\n"
            "(e6 -> V_11)\n"
            "ARR: e1\n";
        if (sequence_report(seq) != expected)
            detail << "sequence mismatch:\n" << sequence_report(seq);
        if (!is_loop_free(m, msos[0])) detail << "current/voltage MSO should be loop-free; ";

        StructuralModel v_only = single_cell_model(false);
        v_only.add_sensor("V_11", "y_V11");
        FineBlocks fb = fine_blocks(v_only, {"e1", "e2", "e3", "e4", "e5"},
                                    {"V_11", "V_oc_11", "I_11", "SoC_11", "T_11"});
        bool found_loop = false;
        for (const auto& block : fb.blocks)
            if (block.equations == std::vector<std::string>{"e1", "e2", "e3"}) found_loop = true;
        if (!found_loop) detail << "voltage-only cell should loop through {e1,e2,e3}; ";
    });

    add_check(out, "minimal-sets-single-cell", [](std::ostringstream& detail) {
        PackSpec cell{Topology::SingleCell, 1, 1, true};
        PlacementGoal goal{PlacementObjective::FullIsolability, true};
        PlacementResult r = minimal_sensor_sets(cell, cell_level_candidates(cell), goal);
        if (!r.feasible || r.cardinality != 4 || r.choice_count != 3)
            detail << "expected 3 minimal sets of 4 sensors; ";
        for (const SensorSet& s : r.minimal_sets)
            if (s.pack_current_count() != 2)
                detail << "every minimal set doubles the load sensor; ";
    });

    add_check(out, "minimal-sets-ps-small", [](std::ostringstream& detail) {
        check_placement_row(detail, Topology::PS, 1, 2, 4, 4, 2);   // 2P1S
        check_placement_row(detail, Topology::PS, 1, 3, 5, 8, 2);   // 3P1S
        check_placement_row(detail, Topology::PS, 2, 2, 5, 16, 1);  // 2P2S
    });

    add_check(out, "minimal-sets-sp-small", [](std::ostringstream& detail) {
        check_placement_row(detail, Topology::SP, 2, 1, 4, 4, 2);   // 2S1P
        check_placement_row(detail, Topology::SP, 3, 1, 5, 8, 2);   // 3S1P
        check_placement_row(detail, Topology::SP, 2, 2, 4, 16, 2);  // 2S2P
    });

    if (include_slow) {
        add_check(out, "minimal-sets-ps-large", [](std::ostringstream& detail) {
            check_placement_row(detail, Topology::PS, 2, 3, 7, 64, 1);   // 3P2S
            check_placement_row(detail, Topology::PS, 3, 2, 6, 64, 0);   // 2P3S
            check_placement_row(detail, Topology::PS, 3, 3, 9, 512, 0);  // 3P3S
        });
        add_check(out, "minimal-sets-sp-large", [](std::ostringstream& detail) {
            check_placement_row(detail, Topology::SP, 3, 2, 6, 144, 2);  // 3S2P
        });
    }

    add_check(out, "traditional-3p3s", [](std::ostringstream& detail) {
        StructuralModel m = traditional_sensor_model({Topology::PS, 3, 3, true});
        FaultAnalysis fa = fault_analysis(m);
        // Definition-level reference outcome: every fault, the per-cell
        // internal shorts included, is uniquely isolable, because each
        // module carries independent thermal and current-balance
        // redundancies.
        for (const std::string& f : fa.faults)
            if (fa.label_of(f) != FaultLabel::DetectableUniquelyIsolable)
                detail << f << " not uniquely isolable; ";
    });

    add_check(out, "traditional-3s3p", [](std::ostringstream& detail) {
        StructuralModel m = traditional_sensor_model({Topology::SP, 3, 3, true, 1});
        FaultAnalysis fa = fault_analysis(m);
        // Load sensor fault and the external short share a class; everything
        // else is uniquely isolable.
        if (fa.label_of("f_y_IBP") != FaultLabel::DetectableIsolable ||
            fa.label_of("f_scE_1") != FaultLabel::DetectableIsolable)
            detail << "f_y_IBP/f_scE_1 should be the mutually confused pair; ";
        std::size_t i = fa.index_of("f_y_IBP");
        std::size_t j = fa.index_of("f_scE_1");
        if (fa.isolability[i][j] || fa.isolability[j][i])
            detail << "f_y_IBP and f_scE_1 should not be isolable from each other; ";
        for (const std::string& f : fa.faults) {
            if (f == "f_y_IBP" || f == "f_scE_1") continue;
            if (fa.label_of(f) != FaultLabel::DetectableUniquelyIsolable)
                detail << f << " not uniquely isolable; ";
        }
    });

    return out;
}

}  // namespace strudiag
