#include "strudiag/battery.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <stdexcept>
#include <tuple>

namespace strudiag {

namespace {

std::string cell_suffix(int i, int j) { return std::to_string(i) + std::to_string(j); }

Variable decl(std::string name, std::string quantity, std::string level, int i = 0, int j = 0) {
    Variable v;
    v.name = std::move(name);
    v.kind = VarKind::Unknown;
    v.tags = {std::move(quantity), std::move(level)};
    if (level == "cell") v.index = CellIndex{i, j};
    return v;
}

/// The four electrothermal equations of cell (i,j); `isc` adds the internal
/// short-circuit current to every current occurrence plus its fault model.
void add_cell_equations(StructuralModel& m, int i, int j, bool isc) {
    const std::string s = cell_suffix(i, j);
    const std::string V = "V_" + s;
    const std::string Voc = "V_oc_" + s;
    const std::string I = "I_" + s;
    const std::string SoC = "SoC_" + s;
    const std::string T = "T_" + s;
    const std::string IscI = "I_scI_" + s;

    std::vector<Variable> decls = {
        decl(V, "voltage", "cell", i, j),     decl(Voc, "ocv", "cell", i, j),
        decl(I, "current", "cell", i, j),     decl(SoC, "soc", "cell", i, j),
        decl(T, "temperature", "cell", i, j), decl(IscI, "short-circuit-current", "cell", i, j),
    };

    Equation e1{"e1_" + s, EqKind::Ecm, {{V, false}, {Voc, false}, {I, false}}, {}, {}};
    Equation e2{"e2_" + s, EqKind::SocDynamics, {{I, false}, {SoC, true}}, {}, {}};
    Equation e3{"e3_" + s, EqKind::Ocv, {{Voc, false}, {SoC, false}}, {}, {}};
    Equation e4{"e4_" + s, EqKind::Thermal, {{I, false}, {T, true}}, {"Q_TMS_" + s}, {}};
    if (isc) {
        e1.unknowns.push_back({IscI, false});
        e2.unknowns.insert(e2.unknowns.begin() + 1, {IscI, false});
        e4.unknowns.insert(e4.unknowns.begin() + 1, {IscI, false});
    }
    m.add_equation(std::move(e1), decls);
    m.add_equation(std::move(e2), decls);
    m.add_equation(std::move(e3), decls);
    m.add_equation(std::move(e4), decls);
    if (isc) {
        Equation e5{"e5_" + s, EqKind::Isc, {{IscI, false}, {V, false}}, {}, {"f_scI_" + s}};
        m.add_equation(std::move(e5), decls);
    }
}

StructuralModel build_ps(const PackSpec& spec) {
    const int n = spec.series_count, m_par = spec.parallel_count;
    StructuralModel m(std::to_string(m_par) + "P" + std::to_string(n) + "S pack" +
                      (spec.with_faults ? " with short-circuit faults" : ""));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m_par; ++j) add_cell_equations(m, i, j, spec.with_faults);

    for (int i = 1; i <= n; ++i) {
        const std::string si = std::to_string(i);
        if (spec.with_faults) {
            const std::string IscE = "I_scE_" + si;
            m.add_equation(
                Equation{"e6_" + si, EqKind::Esc, {{IscE, false}, {"V_" + cell_suffix(i, 1), false}}, {}, {"f_scE_" + si}},
                {decl(IscE, "short-circuit-current", "module", i)});
        }
        Equation kcl{"e7_" + si, EqKind::Kcl, {}, {}, {}};
        for (int j = 1; j <= m_par; ++j) kcl.unknowns.push_back({"I_" + cell_suffix(i, j), false});
        kcl.unknowns.push_back({"I_BP", false});
        if (spec.with_faults) kcl.unknowns.push_back({"I_scE_" + si, false});
        m.add_equation(std::move(kcl), {decl("I_BP", "current", "pack")});

        for (int j = 1; j < m_par; ++j) {
            m.add_equation(Equation{"e8_" + si + "_" + std::to_string(j),
                                    EqKind::Kvl,
                                    {{"V_" + cell_suffix(i, j), false}, {"V_" + cell_suffix(i, j + 1), false}},
                                    {},
                                    {}});
        }
        if (spec.with_module_voltage) {
            const std::string VM = "V_" + si + "M";
            m.add_equation(Equation{"e8_" + si + "_" + std::to_string(m_par),
                                    EqKind::Kvl,
                                    {{"V_" + cell_suffix(i, m_par), false}, {VM, false}},
                                    {},
                                    {}},
                           {decl(VM, "voltage", "module", i)});
        }
    }
    if (spec.with_module_thermal) {
        for (int i = 1; i <= n; ++i) {
            const std::string TM = "T_" + std::to_string(i) + "M";
            Equation etm{"etm_" + std::to_string(i), EqKind::ModuleThermal, {{TM, false}}, {}, {}};
            for (int j = 1; j <= m_par; ++j) etm.unknowns.push_back({"T_" + cell_suffix(i, j), false});
            m.add_equation(std::move(etm), {decl(TM, "temperature", "module", i)});
        }
    }
    return m;
}

StructuralModel build_sp(const PackSpec& spec) {
    const int n = spec.series_count, m_par = spec.parallel_count;
    StructuralModel m(std::to_string(n) + "S" + std::to_string(m_par) + "P pack" +
                      (spec.with_faults ? " with short-circuit faults, external short in module " +
                                              std::to_string(spec.esc_module)
                                        : ""));
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= m_par; ++j) add_cell_equations(m, i, j, spec.with_faults);

    for (int j = 1; j <= m_par; ++j) {
        const std::string sj = std::to_string(j);
        const std::string IM = "I_" + sj + "M";
        const std::string VM = "V_" + sj + "M";

        Equation vsum{"e6_" + sj, EqKind::Kvl, {}, {}, {}};
        for (int i = 1; i <= n; ++i) vsum.unknowns.push_back({"V_" + cell_suffix(i, j), false});
        vsum.unknowns.push_back({VM, false});
        m.add_equation(std::move(vsum), {decl(VM, "voltage", "module", j)});

        const bool esc_here = spec.with_faults && j == spec.esc_module;
        if (esc_here) {
            const std::string IscE = "I_scE_" + sj;
            Equation esc{"e10_" + sj, EqKind::Esc, {{IscE, false}}, {}, {"f_scE_" + sj}};
            for (int i = 1; i <= n; ++i) esc.unknowns.push_back({"V_" + cell_suffix(i, j), false});
            m.add_equation(std::move(esc), {decl(IscE, "short-circuit-current", "module", j)});
        }
        const std::string chain_id = esc_here ? "e11_" : "e7_";
        for (int i = 1; i < n; ++i) {
            m.add_equation(Equation{chain_id + sj + "_" + std::to_string(i),
                                    EqKind::Kcl,
                                    {{"I_" + cell_suffix(i, j), false}, {"I_" + cell_suffix(i + 1, j), false}},
                                    {},
                                    {}});
        }
        Equation tail{chain_id + sj + "_" + std::to_string(n),
                      EqKind::Kcl,
                      {{"I_" + cell_suffix(n, j), false}, {IM, false}},
                      {},
                      {}};
        if (esc_here) tail.unknowns.push_back({"I_scE_" + sj, false});
        m.add_equation(std::move(tail), {decl(IM, "current", "module", j)});
    }

    Equation pack_kcl{"e8", EqKind::Kcl, {}, {}, {}};
    for (int j = 1; j <= m_par; ++j) pack_kcl.unknowns.push_back({"I_" + std::to_string(j) + "M", false});
    pack_kcl.unknowns.push_back({"I_BP", false});
    m.add_equation(std::move(pack_kcl), {decl("I_BP", "current", "pack")});

    for (int j = 1; j < m_par; ++j) {
        m.add_equation(Equation{"e9_" + std::to_string(j),
                                EqKind::Kvl,
                                {{"V_" + std::to_string(j) + "M", false}, {"V_" + std::to_string(j + 1) + "M", false}},
                                {},
                                {}});
    }
    m.add_equation(Equation{"e9_" + std::to_string(m_par),
                            EqKind::Kvl,
                            {{"V_" + std::to_string(m_par) + "M", false}, {"V_BP", false}},
                            {},
                            {}},
                   {decl("V_BP", "voltage", "pack")});

    if (spec.with_module_thermal) {
        for (int j = 1; j <= m_par; ++j) {
            const std::string TM = "T_" + std::to_string(j) + "M";
            Equation etm{"etm_" + std::to_string(j), EqKind::ModuleThermal, {{TM, false}}, {}, {}};
            for (int i = 1; i <= n; ++i) etm.unknowns.push_back({"T_" + cell_suffix(i, j), false});
            m.add_equation(std::move(etm), {decl(TM, "temperature", "module", j)});
        }
    }
    return m;
}

}  // namespace

const char* to_string(Topology t) {
    switch (t) {
        case Topology::SingleCell: return "single-cell";
        case Topology::PS: return "PS";
        case Topology::SP: return "SP";
    }
    return "?";
}

const char* to_string(SensorKind k) {
    switch (k) {
        case SensorKind::CellCurrent: return "cell-current";
        case SensorKind::CellVoltage: return "cell-voltage";
        case SensorKind::CellTemperature: return "cell-temperature";
        case SensorKind::ModuleCurrent: return "module-current";
        case SensorKind::ModuleVoltage: return "module-voltage";
        case SensorKind::ModuleTemperature: return "module-temperature";
        case SensorKind::PackCurrent: return "pack-current";
    }
    return "?";
}

void PackSpec::validate() const {
    if (series_count < 1 || parallel_count < 1)
        throw std::invalid_argument("pack dimensions must be >= 1");
    switch (topology) {
        case Topology::SingleCell:
            break;
        case Topology::PS:
            if (parallel_count < 2)
                throw std::invalid_argument("PS packs need at least two cells in parallel (m > 1)");
            break;
        case Topology::SP:
            if (series_count < 2)
                throw std::invalid_argument("SP packs need at least two cells in series (n > 1)");
            if (esc_module < 1 || esc_module > parallel_count)
                throw std::invalid_argument("SP external-short module index out of range");
            break;
    }
}

std::string SensorLocation::target_name() const {
    switch (kind) {
        case SensorKind::CellCurrent: return "I_" + cell_suffix(series, parallel);
        case SensorKind::CellVoltage: return "V_" + cell_suffix(series, parallel);
        case SensorKind::CellTemperature: return "T_" + cell_suffix(series, parallel);
        case SensorKind::ModuleCurrent: return "I_" + std::to_string(module) + "M";
        case SensorKind::ModuleVoltage: return "V_" + std::to_string(module) + "M";
        case SensorKind::ModuleTemperature: return "T_" + std::to_string(module) + "M";
        case SensorKind::PackCurrent: return "I_BP";
    }
    return "?";
}

std::string SensorLocation::token() const {
    std::string t = target_name();
    t.erase(std::remove(t.begin(), t.end(), '_'), t.end());
    return t;
}

bool SensorLocation::operator<(const SensorLocation& o) const {
    auto key = [](const SensorLocation& s) {
        return std::tuple(static_cast<int>(s.kind), s.series, s.parallel, s.module);
    };
    return key(*this) < key(o);
}

SensorLocation sensor_location_from_token(const std::string& token) {
    auto fail = [&]() -> SensorLocation {
        throw std::invalid_argument("unrecognized sensor token: " + token);
    };
    if (token.size() < 3) return fail();
    char q = token[0];
    SensorLocation loc;
    if (token == "IBP") {
        loc.kind = SensorKind::PackCurrent;
        return loc;
    }
    if (q != 'I' && q != 'V' && q != 'T') return fail();
    std::string rest = token.substr(1);
    if (rest.size() == 2 && rest.back() == 'M' && std::isdigit(static_cast<unsigned char>(rest[0]))) {
        loc.module = rest[0] - '0';
        loc.kind = q == 'I'   ? SensorKind::ModuleCurrent
                   : q == 'V' ? SensorKind::ModuleVoltage
                              : SensorKind::ModuleTemperature;
        return loc;
    }
    if (rest.size() == 2 && std::isdigit(static_cast<unsigned char>(rest[0])) &&
        std::isdigit(static_cast<unsigned char>(rest[1]))) {
        loc.series = rest[0] - '0';
        loc.parallel = rest[1] - '0';
        loc.kind = q == 'I'   ? SensorKind::CellCurrent
                   : q == 'V' ? SensorKind::CellVoltage
                              : SensorKind::CellTemperature;
        return loc;
    }
    return fail();
}

StructuralModel single_cell_model(bool with_faults) {
    StructuralModel m(with_faults ? "single cell with short-circuit faults" : "single cell");
    add_cell_equations(m, 1, 1, with_faults);
    if (!with_faults) {
        // Generated ids follow the cell scheme e1_11..; the single cell is
        // conventionally written e1..e4 (plus e5.. for sensors).
        StructuralModel renamed(m.description());
        for (Equation eq : m.equations()) {
            eq.id = eq.id.substr(0, eq.id.find('_'));
            renamed.add_equation(std::move(eq));
        }
        for (const Variable& v : m.variables()) {
            if (renamed.has_variable(v.name)) {
                Variable& dst = renamed.variable_mut(v.name);
                dst.tags = v.tags;
                dst.index = v.index;
            }
        }
        return renamed;
    }
    StructuralModel full(m.description());
    for (Equation eq : m.equations()) {
        eq.id = eq.id.substr(0, eq.id.find('_'));
        full.add_equation(std::move(eq));
    }
    full.add_equation(
        Equation{"e6", EqKind::Esc, {{"I_scE_11", false}, {"V_11", false}}, {}, {"f_scE_11"}},
        {decl("I_scE_11", "short-circuit-current", "cell", 1, 1)});
    full.add_equation(Equation{"e7", EqKind::Kcl, {{"I_11", false}, {"I_BP", false}, {"I_scE_11", false}}, {}, {}},
                      {decl("I_BP", "current", "pack")});
    for (const Variable& v : m.variables()) {
        if (full.has_variable(v.name)) {
            Variable& dst = full.variable_mut(v.name);
            dst.tags = v.tags;
            dst.index = v.index;
        }
    }
    return full;
}

StructuralModel pack_model(const PackSpec& spec) {
    spec.validate();
    switch (spec.topology) {
        case Topology::SingleCell: {
            StructuralModel m = single_cell_model(spec.with_faults);
            if (spec.with_module_thermal)
                throw std::invalid_argument("module thermal model requires a pack topology");
            return m;
        }
        case Topology::PS: return build_ps(spec);
        case Topology::SP: return build_sp(spec);
    }
    throw std::logic_error("unreachable");
}

std::vector<SensorLocation> cell_level_candidates(const PackSpec& spec) {
    spec.validate();
    std::vector<SensorLocation> out;
    // The fault-free single cell has no load-current variable; every other
    // configuration carries I_BP through its current balance.
    if (spec.with_faults || spec.topology != Topology::SingleCell)
        out.push_back({SensorKind::PackCurrent});
    const int n = spec.topology == Topology::SingleCell ? 1 : spec.series_count;
    const int m_par = spec.topology == Topology::SingleCell ? 1 : spec.parallel_count;
    for (int i = 1; i <= n; ++i) {
        for (int j = 1; j <= m_par; ++j) {
            out.push_back({SensorKind::CellCurrent, i, j});
            out.push_back({SensorKind::CellVoltage, i, j});
            out.push_back({SensorKind::CellTemperature, i, j});
        }
    }
    return out;
}

std::vector<SensorLocation> candidate_sensors(const PackSpec& spec) {
    std::vector<SensorLocation> out = cell_level_candidates(spec);
    if (spec.topology == Topology::SP) {
        for (int j = 1; j <= spec.parallel_count; ++j)
            out.push_back({SensorKind::ModuleCurrent, 0, 0, j});
    }
    if (spec.topology == Topology::PS && spec.with_module_voltage) {
        for (int i = 1; i <= spec.series_count; ++i)
            out.push_back({SensorKind::ModuleVoltage, 0, 0, i});
    }
    if (spec.with_module_thermal) {
        const int modules = spec.topology == Topology::PS ? spec.series_count : spec.parallel_count;
        for (int k = 1; k <= modules; ++k)
            out.push_back({SensorKind::ModuleTemperature, 0, 0, k});
    }
    return out;
}

std::vector<std::string> sensor_reading_names(const std::vector<SensorLocation>& locations) {
    std::map<std::string, int> total, seen;
    for (const SensorLocation& loc : locations) ++total[loc.token()];
    std::vector<std::string> names;
    names.reserve(locations.size());
    for (const SensorLocation& loc : locations) {
        std::string token = loc.token();
        int copy = ++seen[token];
        names.push_back(total[token] > 1 ? "y_" + token + std::to_string(copy) : "y_" + token);
    }
    return names;
}

StructuralModel with_sensors(StructuralModel model, const std::vector<SensorLocation>& locations) {
    std::vector<std::string> names = sensor_reading_names(locations);
    for (std::size_t k = 0; k < locations.size(); ++k)
        model.add_sensor(locations[k].target_name(), names[k]);
    return model;
}

StructuralModel traditional_sensor_model(const PackSpec& spec) {
    spec.validate();
    if (spec.topology == Topology::SingleCell)
        throw std::invalid_argument("the traditional sensor set is defined for pack topologies");
    PackSpec augmented = spec;
    augmented.with_faults = true;
    augmented.with_module_thermal = true;
    if (spec.topology == Topology::PS) augmented.with_module_voltage = true;

    StructuralModel m = pack_model(augmented);
    std::vector<SensorLocation> sensors;
    sensors.push_back({SensorKind::PackCurrent});
    if (spec.topology == Topology::PS) {
        for (int i = 1; i <= spec.series_count; ++i) sensors.push_back({SensorKind::ModuleVoltage, 0, 0, i});
        for (int i = 1; i <= spec.series_count; ++i)
            sensors.push_back({SensorKind::ModuleTemperature, 0, 0, i});
    } else {
        for (int j = 1; j <= spec.parallel_count; ++j)
            for (int i = 1; i <= spec.series_count; ++i)
                sensors.push_back({SensorKind::CellVoltage, i, j});
        for (int j = 1; j <= spec.parallel_count; ++j)
            sensors.push_back({SensorKind::ModuleTemperature, 0, 0, j});
    }
    return with_sensors(std::move(m), sensors);
}

}  // namespace strudiag
