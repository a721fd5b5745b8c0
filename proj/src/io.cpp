#include "strudiag/io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace strudiag {

using nlohmann::json;

namespace {

json model_to_json(const StructuralModel& model) {
    json eqs = json::array();
    for (const Equation& e : model.equations()) {
        json unknowns = json::array();
        for (const VarOccurrence& occ : e.unknowns)
            unknowns.push_back(json{{"name", occ.name}, {"diff", occ.differentiated}});
        eqs.push_back(json{{"id", e.id},
                           {"kind", to_string(e.kind)},
                           {"unknowns", unknowns},
                           {"knowns", e.knowns},
                           {"faults", e.faults}});
    }
    return json{{"description", model.description()}, {"equations", eqs}};
}

std::string context_of(const json& j, const char* field) {
    std::ostringstream os;
    os << "field '" << field << "'";
    if (j.contains("id")) os << " of equation " << j["id"].get<std::string>();
    return os.str();
}

}  // namespace

std::string serialize_model(const StructuralModel& model) {
    return model_to_json(model).dump(2) + "\n";
}

StructuralModel parse_model(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("model parse error: ") + e.what());
    }
    if (!j.is_object() || !j.contains("equations") || !j["equations"].is_array())
        throw std::invalid_argument("model parse error: expected object with an 'equations' array");

    StructuralModel model(j.value("description", std::string{}));
    for (const json& je : j["equations"]) {
        Equation e;
        try {
            e.id = je.at("id").get<std::string>();
            e.kind = eq_kind_from_string(je.value("kind", std::string("other")));
            for (const json& ju : je.value("unknowns", json::array())) {
                if (ju.is_string())
                    e.unknowns.push_back({ju.get<std::string>(), false});
                else
                    e.unknowns.push_back({ju.at("name").get<std::string>(), ju.value("diff", false)});
            }
            for (const json& jk : je.value("knowns", json::array()))
                e.knowns.push_back(jk.get<std::string>());
            for (const json& jf : je.value("faults", json::array()))
                e.faults.push_back(jf.get<std::string>());
        } catch (const json::exception& ex) {
            throw std::invalid_argument("model parse error in " + context_of(je, "equations") + ": " +
                                        ex.what());
        }
        model.add_equation(std::move(e));
    }
    return model;
}

StructuralModel parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open model file: " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    try {
        return parse_model(buffer.str());
    } catch (const std::invalid_argument& e) {
        throw std::invalid_argument(path + ": " + e.what());
    }
}

void write_model_file(const StructuralModel& model, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write model file: " + path);
    out << serialize_model(model);
}

std::string incidence_csv(const IncidenceMatrix& m) {
    std::ostringstream os;
    os << "equation";
    for (const std::string& c : m.cols) os << ',' << c;
    os << '\n';
    for (std::size_t r = 0; r < m.rows.size(); ++r) {
        os << m.rows[r];
        for (std::size_t c = 0; c < m.cols.size(); ++c) os << ',' << int(m.at(r, c));
        os << '\n';
    }
    return os.str();
}

std::string isolability_csv(const FaultAnalysis& fa) {
    std::ostringstream os;
    os << "fault";
    for (const std::string& f : fa.faults) os << ',' << f;
    os << '\n';
    for (std::size_t i = 0; i < fa.faults.size(); ++i) {
        os << fa.faults[i];
        for (std::size_t j = 0; j < fa.faults.size(); ++j) {
            if (!fa.in_model[i] || !fa.in_model[j])
                os << ",NA";
            else
                os << ',' << int(fa.isolability[i][j]);
        }
        os << '\n';
    }
    return os.str();
}

std::string isolability_text(const FaultAnalysis& fa) {
    std::size_t width = 4;
    for (const std::string& f : fa.faults) width = std::max(width, f.size());
    auto pad = [&](const std::string& s) {
        std::string out = s;
        out.resize(width + 2, ' ');
        return out;
    };

    std::ostringstream os;
    os << pad("");
    for (const std::string& f : fa.faults) os << pad(f);
    os << '\n';
    for (std::size_t i = 0; i < fa.faults.size(); ++i) {
        os << pad(fa.faults[i]);
        for (std::size_t j = 0; j < fa.faults.size(); ++j) {
            std::string cell;
            if (!fa.in_model[i] || !fa.in_model[j])
                cell = "NA";
            else if (i == j || !fa.isolability[i][j])
                cell = "X";
            else
                cell = ".";
            os << pad(cell);
        }
        os << '\n';
    }
    return os.str();
}

std::string fault_labels_text(const FaultAnalysis& fa) {
    std::ostringstream os;
    for (std::size_t i = 0; i < fa.faults.size(); ++i)
        os << fa.faults[i] << ": " << to_string(fa.labels[i]) << '\n';
    return os.str();
}

namespace {

void print_id_list(std::ostringstream& os, const char* heading,
                   const std::vector<std::string>& eqs, const std::vector<std::string>& vars) {
    os << heading << ":";
    if (eqs.empty() && vars.empty()) {
        os << " (none)\n";
        return;
    }
    os << '\n' << "  equations:";
    for (const std::string& e : eqs) os << ' ' << e;
    os << '\n' << "  variables:";
    for (const std::string& v : vars) os << ' ' << v;
    os << '\n';
}

}  // namespace

std::string dm_report(const StructuralModel& model, const DMDecomposition& dm) {
    std::ostringstream os;
    if (!model.description().empty()) os << "model: " << model.description() << '\n';
    os << "equations: " << model.equations().size() << ", unknowns: " << model.unknown_count()
       << ", redundancy: " << model.redundancy_degree() << '\n';
    if (dm.over_equations.empty() && dm.just_equations.empty()) {
        os << "under-determined: all\n";
        if (!dm.under_equations.empty()) {
            os << "  equations:";
            for (const std::string& e : dm.under_equations) os << ' ' << e;
            os << '\n' << "  variables:";
            for (const std::string& v : dm.under_unknowns) os << ' ' << v;
            os << '\n';
        }
        return os.str();
    }
    print_id_list(os, "under-determined", dm.under_equations, dm.under_unknowns);
    print_id_list(os, "just-determined", dm.just_equations, dm.just_unknowns);
    print_id_list(os, "over-determined", dm.over_equations, dm.over_unknowns);
    if (!dm.over_equations.empty()) {
        os << "  surplus: " << dm.surplus << '\n';
        os << "  equivalence classes:\n";
        for (std::size_t k = 0; k < dm.classes.size(); ++k) {
            os << "    class " << (k + 1) << ":";
            for (const std::string& e : dm.classes[k]) os << ' ' << e;
            os << '\n';
        }
    }
    return os.str();
}

std::string sequence_report(const ComputationalSequence& seq) {
    std::ostringstream os;
    for (const auto& [is_loop, idx] : seq.order) {
        if (is_loop) {
            const FineBlocks::Block& b = seq.loops[idx];
            os << '{';
            for (std::size_t k = 0; k < b.equations.size(); ++k)
                os << (k ? ", " : "") << b.equations[k];
            os << "} simultaneous\n";
        } else {
            const SequenceStep& s = seq.steps[idx];
            os << '(' << s.equation << " -> " << s.variable;
            if (s.causality != CausalKind::Algebraic) os << " [" << to_string(s.causality) << ']';
            os << ")\n";
        }
    }
    os << "ARR: " << seq.residual_equation << '\n';
    return os.str();
}

std::string mso_report(const StructuralModel& model, const std::vector<MSOSet>& msos,
                       const FaultSignatureMatrix& fsm) {
    (void)model;
    std::ostringstream os;
    os << msos.size() << " MSO set" << (msos.size() == 1 ? "" : "s") << '\n';
    for (std::size_t k = 0; k < msos.size(); ++k) {
        os << fsm.mso_labels[k] << ": {";
        for (std::size_t i = 0; i < msos[k].equations.size(); ++i)
            os << (i ? ", " : "") << msos[k].equations[i];
        os << "} faults: {";
        for (std::size_t i = 0; i < msos[k].faults.size(); ++i)
            os << (i ? ", " : "") << msos[k].faults[i];
        os << "}\n";
    }
    if (!msos.empty()) {
        os << "signature matrix (rows = MSOs, columns = faults):\n";
        os << "  columns:";
        for (const std::string& f : fsm.faults) os << ' ' << f;
        os << '\n';
        for (std::size_t k = 0; k < fsm.entries.size(); ++k) {
            os << "  " << fsm.mso_labels[k] << ":";
            for (char v : fsm.entries[k]) os << ' ' << int(v);
            os << '\n';
        }
    }
    return os.str();
}

std::string dm_json(const DMDecomposition& dm) {
    json j{{"under", {{"equations", dm.under_equations}, {"unknowns", dm.under_unknowns}}},
           {"just", {{"equations", dm.just_equations}, {"unknowns", dm.just_unknowns}}},
           {"over",
            {{"equations", dm.over_equations},
             {"unknowns", dm.over_unknowns},
             {"surplus", dm.surplus},
             {"classes", dm.classes}}}};
    return j.dump(2) + "\n";
}

std::string fault_analysis_json(const FaultAnalysis& fa) {
    json faults = json::array();
    for (std::size_t i = 0; i < fa.faults.size(); ++i) {
        json row{{"fault", fa.faults[i]},
                 {"label", to_string(fa.labels[i])},
                 {"in_model", bool(fa.in_model[i])},
                 {"detectable", bool(fa.detectable[i])}};
        json iso = json::array();
        for (std::size_t j = 0; j < fa.faults.size(); ++j) {
            if (!fa.in_model[i] || !fa.in_model[j])
                iso.push_back(nullptr);
            else
                iso.push_back(bool(fa.isolability[i][j]));
        }
        row["isolable_from"] = iso;
        faults.push_back(row);
    }
    return json{{"faults", faults}}.dump(2) + "\n";
}

std::string msos_json(const std::vector<MSOSet>& msos, const FaultSignatureMatrix& fsm) {
    json out = json::array();
    for (std::size_t k = 0; k < msos.size(); ++k) {
        json row{{"label", fsm.mso_labels[k]},
                 {"equations", msos[k].equations},
                 {"faults", msos[k].faults}};
        json sig = json::array();
        for (char v : fsm.entries[k]) sig.push_back(int(v));
        row["signature"] = sig;
        out.push_back(row);
    }
    return json{{"fault_columns", fsm.faults}, {"msos", out}}.dump(2) + "\n";
}

std::string sequence_json(const ComputationalSequence& seq) {
    json items = json::array();
    for (const auto& [is_loop, idx] : seq.order) {
        if (is_loop) {
            items.push_back(json{{"loop", seq.loops[idx].equations},
                                 {"variables", seq.loops[idx].variables}});
        } else {
            const SequenceStep& s = seq.steps[idx];
            items.push_back(json{{"equation", s.equation},
                                 {"variable", s.variable},
                                 {"causality", to_string(s.causality)}});
        }
    }
    return json{{"residual", seq.residual_equation}, {"sequence", items}}.dump(2) + "\n";
}

}  // namespace strudiag
