#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "dnf/core.hpp"
#include "dnf/coupling.hpp"

namespace dnf {

struct FieldInput {
    FieldId field = FieldId::conn;
    GaussianSpec spec;

    bool operator==(const FieldInput&) const = default;
};

struct PhaseSpec {
    int duration = 0;          // timesteps
    double node_input = 0.0;   // s_ext to the have node
    std::vector<FieldInput> field_inputs;

    bool operator==(const PhaseSpec&) const = default;
};

struct ModelParams {
    FieldGrid grid{99};
    FieldParams field;   // shared by both fields
    NodeParams node;
    CouplingGraph graph = CouplingGraph::defaults();
};

struct ScenarioConfig {
    std::string label;
    ModelParams params;
    std::vector<PhaseSpec> phases;

    int total_duration() const;
    // first trace index influenced by the final phase's inputs
    int final_phase_onset() const;
    void validate() const;
};

// Built-in conditions: "canonical", "adjacency", "possession".
ScenarioConfig build_condition(const std::string& name);

struct SimTrace {
    std::vector<double> node_u;               // per timestep, index 0 = initial
    std::vector<std::vector<double>> ca_u;    // per timestep activation vectors
    std::vector<std::vector<double>> conn_u;
    std::string config_label;
    std::uint64_t seed = 0;
};

struct NumericalAbort : std::runtime_error {
    int timestep;
    explicit NumericalAbort(int t)
        : std::runtime_error("non-finite activation at timestep " + std::to_string(t)),
          timestep(t) {}
    NumericalAbort(int t, const std::string& context)
        : std::runtime_error(context + ": non-finite activation at timestep " +
                             std::to_string(t)),
          timestep(t) {}
};

SimTrace run_simulation(const ScenarioConfig& config, std::uint64_t seed);

// Scenario files are JSON; see README for the schema.
ScenarioConfig load_scenario(const std::string& text);
std::string serialize_scenario(const ScenarioConfig& config);

// CSV with columns (t, component in {node, ca, conn}, x (empty for node), u).
void write_trace_csv(std::ostream& out, const SimTrace& trace);

}  // namespace dnf
