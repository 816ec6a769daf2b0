#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dnf/scenario.hpp"

namespace dnf {

// One row of batch output: final peaks plus the derived behavioral measures.
struct SimRecord {
    std::string condition;
    std::uint64_t seed = 0;
    double c_dnf = 0.0;
    std::optional<int> peak_ca;
    std::optional<int> peak_conn;
    std::string reading;  // adjacency / alienable / inalienable / none
    std::optional<double> acceptability;
    std::optional<int> rt;  // timesteps from final-phase onset; empty when censored
    bool rt_censored = false;
};

// argmax position if max(u) > 0, else nothing; ties break toward lower index.
std::optional<int> peak_location(const std::vector<double>& u, const FieldGrid& grid);
std::optional<int> peak_location(const FieldState& field);

// Centroid of summed discretized input mass over the grid.
double input_centroid(const std::vector<GaussianSpec>& inputs, const FieldGrid& grid);

// 1 / (1 + |x_peak - centroid|)
double acceptability(int x_peak, double centroid);

// Timesteps from phase3_onset until the field's max first exceeds 0;
// nothing when it never crosses within the trace.
std::optional<int> response_time(const SimTrace& trace, FieldId field, int phase3_onset);

// Region thresholds at the midpoints between the conn coupling centers 25/50/75.
std::string classify_reading(int x_peak);

// All measures for one finished simulation. The input centroid uses the final
// phase's conn inputs: every external conn Gaussian plus the node->conn
// coupling at the node's attractor amplitude (the phase's node s_ext).
SimRecord evaluate_record(const SimTrace& trace, const ScenarioConfig& config);

}  // namespace dnf
