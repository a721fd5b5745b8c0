#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace strudiag {

/// Role of a variable in a structural model.
enum class VarKind { Unknown, Known, Fault };

/// Semantic tag of an equation. Purely informational for reports; the
/// analyses only look at the incidence structure.
enum class EqKind {
    Ecm,
    SocDynamics,
    Ocv,
    Thermal,
    Kcl,
    Kvl,
    Isc,
    Esc,
    Sensor,
    ModuleThermal,
    Other
};

const char* to_string(VarKind k);
const char* to_string(EqKind k);
EqKind eq_kind_from_string(const std::string& s);

/// Optional (series, parallel) position of a cell-level quantity.
struct CellIndex {
    int series = 0;
    int parallel = 0;

    bool operator==(const CellIndex&) const = default;
};

/// A named variable with its role and optional semantic metadata.
struct Variable {
    std::string name;
    VarKind kind = VarKind::Unknown;
    std::set<std::string> tags;
    std::optional<CellIndex> index;
};

/// One appearance of an unknown inside an equation. `differentiated` marks
/// occurrences under d/dt; they count as ordinary incidences for matching
/// and DM purposes and only influence causality reporting.
struct VarOccurrence {
    std::string name;
    bool differentiated = false;

    bool operator==(const VarOccurrence&) const = default;
};

struct Equation {
    std::string id;
    EqKind kind = EqKind::Other;
    std::vector<VarOccurrence> unknowns;
    std::vector<std::string> knowns;
    std::vector<std::string> faults;

    bool operator==(const Equation&) const = default;
};

/// 0/1 occurrence matrix over the unknown variables of a model.
/// Rows follow equation order, columns follow variable registry order.
struct IncidenceMatrix {
    std::vector<std::string> rows;  // equation ids
    std::vector<std::string> cols;  // unknown variable names
    std::vector<std::uint8_t> entries;       // row-major 0/1
    std::vector<std::uint8_t> differentiated;  // row-major mask, subset of entries

    std::uint8_t at(std::size_t r, std::size_t c) const { return entries[r * cols.size() + c]; }
    std::uint8_t diff_at(std::size_t r, std::size_t c) const {
        return differentiated[r * cols.size() + c];
    }
};

/// Bipartite structural model: an ordered list of equations plus a registry
/// of every variable they reference. Instances are built once and treated
/// as immutable by all analyses; the mutating members return *this to allow
/// fluent construction.
class StructuralModel {
public:
    StructuralModel() = default;
    explicit StructuralModel(std::string description) : description_(std::move(description)) {}

    const std::string& description() const { return description_; }
    void set_description(std::string d) { description_ = std::move(d); }

    const std::vector<Equation>& equations() const { return equations_; }
    const std::vector<Variable>& variables() const { return variables_; }

    bool has_equation(const std::string& id) const;
    const Equation& equation(const std::string& id) const;

    bool has_variable(const std::string& name) const;
    const Variable& variable(const std::string& name) const;
    Variable& variable_mut(const std::string& name);

    /// Unknown variable names in registry (first-appearance) order.
    std::vector<std::string> unknown_names() const;
    std::vector<std::string> known_names() const;
    std::vector<std::string> fault_names() const;

    std::size_t unknown_count() const;

    /// Appends an equation, registering unseen variables with the declared
    /// kinds. Throws std::invalid_argument on a duplicate equation id, an
    /// ill-formed equation, or a variable already registered under a
    /// different kind.
    StructuralModel& add_equation(Equation eq);

    /// Convenience for add_equation with tag/index registration for new
    /// variables (used by the model generators).
    StructuralModel& add_equation(Equation eq,
                                  const std::vector<Variable>& declarations);

    /// Appends the sensor equation  reading = target + fault  for an unknown
    /// `target`. The reading is named `sensor_id` and the fault
    /// "f_" + sensor_id. The equation id defaults to "e<N+1>" where N is the
    /// current equation count; pass `equation_id` to override.
    StructuralModel& add_sensor(const std::string& target, const std::string& sensor_id,
                                const std::string& equation_id = "");

    IncidenceMatrix incidence_matrix() const;

    /// |equations| - |unknowns| over the whole model.
    int redundancy_degree() const;

    /// Equations that reference fault `fault_name`.
    std::vector<std::string> equations_of_fault(const std::string& fault_name) const;

    /// Structural equality: description, equation list (ordered, with
    /// occurrence order) and variable kinds. Tags and indices are metadata
    /// and do not participate.
    bool structurally_equal(const StructuralModel& other) const;

private:
    void register_variable(const std::string& name, VarKind kind);
    int variable_slot(const std::string& name) const;

    std::string description_;
    std::vector<Equation> equations_;
    std::vector<Variable> variables_;
};

/// Fresh model with no equations or variables.
StructuralModel new_model(std::string description);

}  // namespace strudiag
