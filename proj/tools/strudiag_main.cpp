// Command-line front end: builds battery pack structural models, runs the
// decomposition/diagnosability analyses, enumerates residual generators and
// searches sensor placements.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>
#include <string>
#include <vector>

#include "strudiag/battery.hpp"
#include "strudiag/causality.hpp"
#include "strudiag/diagnosability.hpp"
#include "strudiag/io.hpp"
#include "strudiag/matching.hpp"
#include "strudiag/mso.hpp"
#include "strudiag/placement.hpp"
#include "strudiag/reference_checks.hpp"

namespace {

using namespace strudiag;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;  // infeasible goal / failed verification
constexpr int kExitInput = 2;

PackSpec parse_topology(const std::string& text) {
    static const std::regex ps_re("^([0-9]+)P([0-9]+)S$");
    static const std::regex sp_re("^([0-9]+)S([0-9]+)P$");
    std::smatch m;
    PackSpec spec;
    if (std::regex_match(text, m, ps_re)) {
        int par = std::stoi(m[1]);
        int ser = std::stoi(m[2]);
        if (par == 1 && ser == 1) {
            spec.topology = Topology::SingleCell;
            return spec;
        }
        spec.topology = Topology::PS;
        spec.parallel_count = par;
        spec.series_count = ser;
        return spec;
    }
    if (std::regex_match(text, m, sp_re)) {
        int ser = std::stoi(m[1]);
        int par = std::stoi(m[2]);
        if (par == 1 && ser == 1) {
            spec.topology = Topology::SingleCell;
            return spec;
        }
        spec.topology = Topology::SP;
        spec.series_count = ser;
        spec.parallel_count = par;
        return spec;
    }
    throw std::invalid_argument("expected <m>P<n>S or <n>S<m>P, got '" + text + "'");
}

std::vector<SensorLocation> parse_sensor_list(const std::vector<std::string>& tokens) {
    std::vector<SensorLocation> out;
    for (const std::string& t : tokens) out.push_back(sensor_location_from_token(t));
    return out;
}

/// Input is either a path to a model file or an inline topology string.
struct ModelInput {
    std::string value;
    bool with_faults = false;
    bool traditional = false;
    int esc_module = 1;
    std::vector<std::string> sensors;

    StructuralModel load() const {
        std::ifstream probe(value);
        if (probe.good()) return parse_model_file(value);
        PackSpec spec = parse_topology(value);
        spec.with_faults = with_faults || traditional;
        spec.esc_module = esc_module;
        StructuralModel model = traditional ? traditional_sensor_model(spec) : pack_model(spec);
        if (!sensors.empty()) model = with_sensors(std::move(model), parse_sensor_list(sensors));
        return model;
    }
};

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path);
    if (!out) throw std::invalid_argument("cannot write output file: " + out_path);
    out << text;
}

std::string analysis_text(const StructuralModel& model, const std::string& format) {
    DMDecomposition dm = dm_decompose(model);
    if (format == "structured") {
        std::string text = dm_json(dm);
        if (!model.fault_names().empty()) text += fault_analysis_json(fault_analysis(model));
        return text;
    }
    if (format == "csv") {
        std::string text = incidence_csv(model.incidence_matrix());
        if (!model.fault_names().empty()) text += isolability_csv(fault_analysis(model));
        return text;
    }
    std::string text = dm_report(model, dm);
    if (!model.fault_names().empty()) {
        FaultAnalysis fa = fault_analysis(model);
        text += "\nfault classification:\n" + fault_labels_text(fa);
        text += "\nisolability matrix (X = not isolable):\n" + isolability_text(fa);
    }
    return text;
}

int run_pack(const ModelInput& input, const std::string& model_out, bool analyze,
             const std::string& format, const std::string& out_path) {
    StructuralModel model = input.load();
    if (!model_out.empty()) write_model_file(model, model_out);
    std::string text;
    if (analyze)
        text = analysis_text(model, format);
    else if (format == "structured")
        text = serialize_model(model);
    else if (format == "csv")
        text = incidence_csv(model.incidence_matrix());
    else
        text = dm_report(model, dm_decompose(model));
    emit(text, out_path);
    return kExitOk;
}

int run_mso(const ModelInput& input, const std::string& format, const std::string& out_path) {
    StructuralModel model = input.load();
    auto msos = enumerate_msos(model);
    FaultSignatureMatrix fsm = fault_signature_matrix(model, msos);
    emit(format == "structured" ? msos_json(msos, fsm) : mso_report(model, msos, fsm), out_path);
    return kExitOk;
}

int run_residuals(const ModelInput& input, const std::string& format,
                  const std::string& out_path) {
    StructuralModel model = input.load();
    auto msos = enumerate_msos(model);
    std::string text;
    for (std::size_t k = 0; k < msos.size(); ++k) {
        ComputationalSequence seq = orient(model, msos[k], canonical_residual(model, msos[k]));
        if (format == "structured") {
            text += sequence_json(seq);
        } else {
            text += "MSO" + std::to_string(k + 1) + " {";
            for (std::size_t i = 0; i < msos[k].equations.size(); ++i)
                text += (i ? ", " : "") + msos[k].equations[i];
            text += "}";
            text += seq.loop_free() ? "" : " (loops)";
            text += "\n" + sequence_report(seq) + "\n";
        }
    }
    if (msos.empty()) text = "no redundancy: no residual generators exist\n";
    emit(text, out_path);
    return kExitOk;
}

int run_place(const std::string& topology, const std::string& goal_name, bool optimal,
              bool include_module_voltage, bool no_robust_esc, int esc_module,
              const std::string& candidates_kind, const std::string& out_path) {
    PackSpec spec = parse_topology(topology);
    spec.with_faults = true;
    spec.esc_module = esc_module;
    spec.with_module_voltage = include_module_voltage;

    PlacementGoal goal;
    goal.objective = goal_name == "detectability" ? PlacementObjective::FullDetectability
                                                  : PlacementObjective::FullIsolability;
    goal.robust_esc = !no_robust_esc;

    std::vector<SensorLocation> candidates =
        candidates_kind == "cell" ? cell_level_candidates(spec) : candidate_sensors(spec);

    PlacementResult result = optimal ? optimal_sensor_sets(spec, candidates, goal)
                                     : minimal_sensor_sets(spec, candidates, goal);
    emit(placement_report(spec, goal, result), out_path);
    return result.feasible ? kExitOk : kExitNegative;
}

int run_verify_tables(bool include_slow) {
    auto checks = run_reference_checks(include_slow);
    bool all_ok = true;
    for (const ReferenceCheck& c : checks) {
        std::cout << (c.passed ? "PASS" : "FAIL") << " " << c.name;
        if (!c.passed && !c.detail.empty()) std::cout << " -- " << c.detail;
        std::cout << "\n";
        all_ok = all_ok && c.passed;
    }
    std::cout << (all_ok ? "all reference checks passed" : "reference checks FAILED") << "\n";
    return all_ok ? kExitOk : kExitNegative;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Structural analysis toolkit for battery pack fault diagnosis"};
    app.require_subcommand(1);

    ModelInput input;
    std::string format = "text";
    std::string out_path;
    std::string model_out;
    bool analyze = false;

    auto add_model_flags = [&](CLI::App* cmd) {
        cmd->add_option("input", input.value,
                        "model file path or topology string (e.g. 3P2S, 2S3P, 1S1P)")
            ->required();
        cmd->add_flag("--faults", input.with_faults, "include short-circuit fault models");
        cmd->add_flag("--traditional", input.traditional,
                      "install the traditional sensor set (packs only)");
        cmd->add_option("--esc-module", input.esc_module,
                        "external-short module index (SP topologies)");
        cmd->add_option("--sensors", input.sensors,
                        "comma-separated sensor tokens, e.g. I11,V11,IBP,IBP")
            ->delimiter(',');
        cmd->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"text", "csv", "structured"}));
        cmd->add_option("--out", out_path, "write the report to a file");
    };

    CLI::App* pack = app.add_subcommand("pack", "generate a pack model (and optionally analyze)");
    add_model_flags(pack);
    pack->add_flag("--analyze", analyze, "run DM decomposition and fault analysis");
    pack->add_option("--model-out", model_out, "write the generated model file");

    CLI::App* an = app.add_subcommand("analyze", "DM decomposition + fault analysis");
    add_model_flags(an);

    CLI::App* mso = app.add_subcommand("mso", "enumerate MSO sets and the fault signature matrix");
    add_model_flags(mso);

    CLI::App* res = app.add_subcommand("residuals", "computational sequences per MSO");
    add_model_flags(res);

    std::string place_topology, place_goal = "isolability", candidates_kind = "cell";
    bool place_optimal = false, include_module_voltage = false, no_robust_esc = false;
    int place_esc_module = 1;
    CLI::App* place = app.add_subcommand("place", "search minimal/optimal sensor sets");
    place->add_option("topology", place_topology, "topology string, e.g. 2P2S")->required();
    place->add_option("--goal", place_goal, "placement objective")
        ->check(CLI::IsMember({"detectability", "isolability"}));
    place->add_flag("--optimal", place_optimal, "restrict to loop-free residual coverage");
    place->add_flag("--include-module-voltage", include_module_voltage,
                    "expose PS module voltages as candidates");
    place->add_flag("--no-robust-esc", no_robust_esc,
                    "fix the external short to --esc-module instead of all locations (SP)");
    place->add_option("--esc-module", place_esc_module, "external-short module for SP");
    place->add_option("--candidates", candidates_kind, "candidate pool")
        ->check(CLI::IsMember({"cell", "all"}));
    place->add_option("--out", out_path, "write the report to a file");

    bool verify_slow = false;
    CLI::App* verify = app.add_subcommand("verify-tables", "run the built-in reference checks");
    verify->add_flag("--slow", verify_slow, "include the large pack placement checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        if (pack->parsed()) return run_pack(input, model_out, analyze, format, out_path);
        if (an->parsed()) {
            emit(analysis_text(input.load(), format), out_path);
            return kExitOk;
        }
        if (mso->parsed()) return run_mso(input, format, out_path);
        if (res->parsed()) return run_residuals(input, format, out_path);
        if (place->parsed())
            return run_place(place_topology, place_goal, place_optimal, include_module_voltage,
                             no_robust_esc, place_esc_module, candidates_kind, out_path);
        if (verify->parsed()) return run_verify_tables(verify_slow);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
