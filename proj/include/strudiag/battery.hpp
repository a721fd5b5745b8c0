#pragma once

#include <string>
#include <vector>

#include "strudiag/model.hpp"

namespace strudiag {

enum class Topology { SingleCell, PS, SP };

const char* to_string(Topology t);

/// Generator parameters for a battery pack structural model.
///
/// PS (mPnS) wires m parallel cells into each of n series modules; SP
/// (nSmP) wires n series cells into each of m parallel strings. The single
/// cell has its own generator and ignores the counts.
struct PackSpec {
    Topology topology = Topology::SingleCell;
    int series_count = 1;    // n
    int parallel_count = 1;  // m
    bool with_faults = true;
    /// SP only: the one module carrying the external short circuit.
    int esc_module = 1;
    /// PS only: introduce module voltage variables V_iM (extends each
    /// voltage-equality chain by one equation). Required for module-voltage
    /// sensors.
    bool with_module_voltage = false;
    /// Add per-module averaged-temperature equations introducing T^M.
    bool with_module_thermal = false;

    void validate() const;
};

enum class SensorKind {
    CellCurrent,
    CellVoltage,
    CellTemperature,
    ModuleCurrent,
    ModuleVoltage,
    ModuleTemperature,
    PackCurrent
};

const char* to_string(SensorKind k);

/// A measurable position in a pack. Cell sensors carry (series, parallel);
/// module sensors carry the module index; the pack-current sensor carries
/// no index.
struct SensorLocation {
    SensorKind kind = SensorKind::PackCurrent;
    int series = 0;
    int parallel = 0;
    int module = 0;

    /// The unknown variable this sensor measures, e.g. "I_11", "V_1M", "I_BP".
    std::string target_name() const;
    /// Short token used on the command line, e.g. "I11", "V1M", "IBP".
    std::string token() const;

    bool operator==(const SensorLocation&) const = default;
    bool operator<(const SensorLocation& o) const;
};

/// Parses a sensor token ("I11", "V23", "T1M", "IBP", ...).
SensorLocation sensor_location_from_token(const std::string& token);

/// Electrothermal single cell. Fault-free: the four cell equations over
/// five unknowns. With faults: internal and external short-circuit paths
/// plus the load-current balance (seven equations, eight unknowns).
StructuralModel single_cell_model(bool with_faults);

StructuralModel pack_model(const PackSpec& spec);

/// Measurable positions for the given spec: pack current (duplicable),
/// per-cell current/voltage/temperature, module currents for SP, module
/// voltages for PS when enabled, module temperatures when enabled.
std::vector<SensorLocation> candidate_sensors(const PackSpec& spec);

/// Cell-level positions only: pack current plus per-cell sensors.
std::vector<SensorLocation> cell_level_candidates(const PackSpec& spec);

/// Pack plus the customary production sensor set: one pack-current sensor,
/// per-module voltage (PS) or per-cell voltage (SP), and one module
/// temperature sensor per module.
StructuralModel traditional_sensor_model(const PackSpec& spec);

/// Installs sensors at `locations` (duplicates allowed; repeated targets
/// get numbered reading names, e.g. y_IBP1/y_IBP2).
StructuralModel with_sensors(StructuralModel model, const std::vector<SensorLocation>& locations);

/// Reading names ("y_..." ) the above assigns, in order.
std::vector<std::string> sensor_reading_names(const std::vector<SensorLocation>& locations);

}  // namespace strudiag
