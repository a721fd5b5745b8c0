#include "strudiag/model.hpp"

#include <algorithm>
#include <unordered_map>

namespace strudiag {

const char* to_string(VarKind k) {
    switch (k) {
        case VarKind::Unknown: return "unknown";
        case VarKind::Known: return "known";
        case VarKind::Fault: return "fault";
    }
    return "?";
}

const char* to_string(EqKind k) {
    switch (k) {
        case EqKind::Ecm: return "ecm";
        case EqKind::SocDynamics: return "soc-dynamics";
        case EqKind::Ocv: return "ocv";
        case EqKind::Thermal: return "thermal";
        case EqKind::Kcl: return "kcl";
        case EqKind::Kvl: return "kvl";
        case EqKind::Isc: return "isc";
        case EqKind::Esc: return "esc";
        case EqKind::Sensor: return "sensor";
        case EqKind::ModuleThermal: return "module-thermal";
        case EqKind::Other: return "other";
    }
    return "?";
}

EqKind eq_kind_from_string(const std::string& s) {
    static const std::unordered_map<std::string, EqKind> table = {
        {"ecm", EqKind::Ecm},
        {"soc-dynamics", EqKind::SocDynamics},
        {"ocv", EqKind::Ocv},
        {"thermal", EqKind::Thermal},
        {"kcl", EqKind::Kcl},
        {"kvl", EqKind::Kvl},
        {"isc", EqKind::Isc},
        {"esc", EqKind::Esc},
        {"sensor", EqKind::Sensor},
        {"module-thermal", EqKind::ModuleThermal},
        {"other", EqKind::Other},
    };
    auto it = table.find(s);
    if (it == table.end()) throw std::invalid_argument("unknown equation kind: " + s);
    return it->second;
}

bool StructuralModel::has_equation(const std::string& id) const {
    return std::any_of(equations_.begin(), equations_.end(),
                       [&](const Equation& e) { return e.id == id; });
}

const Equation& StructuralModel::equation(const std::string& id) const {
    for (const Equation& e : equations_)
        if (e.id == id) return e;
    throw std::invalid_argument("no such equation: " + id);
}

int StructuralModel::variable_slot(const std::string& name) const {
    for (std::size_t i = 0; i < variables_.size(); ++i)
        if (variables_[i].name == name) return static_cast<int>(i);
    return -1;
}

bool StructuralModel::has_variable(const std::string& name) const {
    return variable_slot(name) >= 0;
}

const Variable& StructuralModel::variable(const std::string& name) const {
    int slot = variable_slot(name);
    if (slot < 0) throw std::invalid_argument("no such variable: " + name);
    return variables_[static_cast<std::size_t>(slot)];
}

Variable& StructuralModel::variable_mut(const std::string& name) {
    int slot = variable_slot(name);
    if (slot < 0) throw std::invalid_argument("no such variable: " + name);
    return variables_[static_cast<std::size_t>(slot)];
}

std::vector<std::string> StructuralModel::unknown_names() const {
    std::vector<std::string> out;
    for (const Variable& v : variables_)
        if (v.kind == VarKind::Unknown) out.push_back(v.name);
    return out;
}

std::vector<std::string> StructuralModel::known_names() const {
    std::vector<std::string> out;
    for (const Variable& v : variables_)
        if (v.kind == VarKind::Known) out.push_back(v.name);
    return out;
}

std::vector<std::string> StructuralModel::fault_names() const {
    std::vector<std::string> out;
    for (const Variable& v : variables_)
        if (v.kind == VarKind::Fault) out.push_back(v.name);
    return out;
}

std::size_t StructuralModel::unknown_count() const {
    return static_cast<std::size_t>(
        std::count_if(variables_.begin(), variables_.end(),
                      [](const Variable& v) { return v.kind == VarKind::Unknown; }));
}

void StructuralModel::register_variable(const std::string& name, VarKind kind) {
    if (name.empty()) throw std::invalid_argument("variable name must be nonempty");
    int slot = variable_slot(name);
    if (slot < 0) {
        variables_.push_back(Variable{name, kind, {}, std::nullopt});
        return;
    }
    if (variables_[static_cast<std::size_t>(slot)].kind != kind)
        throw std::invalid_argument("variable " + name + " already registered as " +
                                    to_string(variables_[static_cast<std::size_t>(slot)].kind) +
                                    ", cannot re-register as " + to_string(kind));
}

StructuralModel& StructuralModel::add_equation(Equation eq) {
    if (eq.id.empty()) throw std::invalid_argument("equation id must be nonempty");
    if (has_equation(eq.id)) throw std::invalid_argument("duplicate equation id: " + eq.id);
    if (eq.unknowns.empty() && eq.knowns.empty())
        throw std::invalid_argument("equation " + eq.id +
                                    " must reference at least one unknown or known variable");
    if (eq.kind == EqKind::Sensor &&
        (eq.unknowns.size() != 1 || eq.knowns.size() != 1 || eq.faults.size() != 1))
        throw std::invalid_argument("sensor equation " + eq.id +
                                    " must have exactly one unknown, one known and one fault");

    // No duplicate occurrences inside one equation.
    for (std::size_t a = 0; a < eq.unknowns.size(); ++a)
        for (std::size_t b = a + 1; b < eq.unknowns.size(); ++b)
            if (eq.unknowns[a].name == eq.unknowns[b].name)
                throw std::invalid_argument("equation " + eq.id + " lists unknown " +
                                            eq.unknowns[a].name + " twice");

    for (const VarOccurrence& occ : eq.unknowns) register_variable(occ.name, VarKind::Unknown);
    for (const std::string& k : eq.knowns) register_variable(k, VarKind::Known);
    for (const std::string& f : eq.faults) register_variable(f, VarKind::Fault);

    equations_.push_back(std::move(eq));
    return *this;
}

StructuralModel& StructuralModel::add_equation(Equation eq,
                                               const std::vector<Variable>& declarations) {
    add_equation(std::move(eq));
    for (const Variable& decl : declarations) {
        int slot = variable_slot(decl.name);
        if (slot < 0) continue;
        Variable& v = variables_[static_cast<std::size_t>(slot)];
        v.tags.insert(decl.tags.begin(), decl.tags.end());
        if (decl.index && !v.index) v.index = decl.index;
    }
    return *this;
}

StructuralModel& StructuralModel::add_sensor(const std::string& target,
                                             const std::string& sensor_id,
                                             const std::string& equation_id) {
    int slot = variable_slot(target);
    if (slot < 0) throw std::invalid_argument("sensor target " + target + " is not in the model");
    VarKind kind = variables_[static_cast<std::size_t>(slot)].kind;
    if (kind != VarKind::Unknown)
        throw std::invalid_argument("sensor target " + target + " is a " +
                                    std::string(to_string(kind)) +
                                    " variable; only unknowns are measurable");
    if (sensor_id.empty()) throw std::invalid_argument("sensor id must be nonempty");
    if (has_variable(sensor_id))
        throw std::invalid_argument("sensor id " + sensor_id + " collides with a variable name");

    std::string eq_id = equation_id.empty()
                            ? "e" + std::to_string(equations_.size() + 1)
                            : equation_id;
    Equation eq;
    eq.id = std::move(eq_id);
    eq.kind = EqKind::Sensor;
    eq.unknowns = {{target, false}};
    eq.knowns = {sensor_id};
    eq.faults = {"f_" + sensor_id};
    return add_equation(std::move(eq));
}

IncidenceMatrix StructuralModel::incidence_matrix() const {
    IncidenceMatrix m;
    m.cols = unknown_names();
    std::unordered_map<std::string, std::size_t> col_of;
    for (std::size_t c = 0; c < m.cols.size(); ++c) col_of[m.cols[c]] = c;

    m.rows.reserve(equations_.size());
    m.entries.assign(equations_.size() * m.cols.size(), 0);
    m.differentiated.assign(equations_.size() * m.cols.size(), 0);
    for (std::size_t r = 0; r < equations_.size(); ++r) {
        m.rows.push_back(equations_[r].id);
        for (const VarOccurrence& occ : equations_[r].unknowns) {
            std::size_t c = col_of.at(occ.name);
            m.entries[r * m.cols.size() + c] = 1;
            if (occ.differentiated) m.differentiated[r * m.cols.size() + c] = 1;
        }
    }
    return m;
}

int StructuralModel::redundancy_degree() const {
    return static_cast<int>(equations_.size()) - static_cast<int>(unknown_count());
}

std::vector<std::string> StructuralModel::equations_of_fault(const std::string& fault_name) const {
    std::vector<std::string> out;
    for (const Equation& e : equations_)
        if (std::find(e.faults.begin(), e.faults.end(), fault_name) != e.faults.end())
            out.push_back(e.id);
    return out;
}

bool StructuralModel::structurally_equal(const StructuralModel& other) const {
    if (description_ != other.description_) return false;
    if (equations_.size() != other.equations_.size()) return false;
    for (std::size_t i = 0; i < equations_.size(); ++i) {
        const Equation& a = equations_[i];
        const Equation& b = other.equations_[i];
        if (a.id != b.id || a.kind != b.kind || a.unknowns != b.unknowns) return false;
        if (a.knowns != b.knowns || a.faults != b.faults) return false;
    }
    return true;
}

StructuralModel new_model(std::string description) {
    return StructuralModel(std::move(description));
}

}  // namespace strudiag
