#include "dnf/measures.hpp"

#include <algorithm>
#include <cmath>

namespace dnf {

std::optional<int> peak_location(const std::vector<double>& u, const FieldGrid& grid) {
    if (u.empty()) return std::nullopt;
    size_t best = 0;
    for (size_t i = 1; i < u.size(); ++i)
        if (u[i] > u[best]) best = i;
    if (!(u[best] > 0)) return std::nullopt;
    return grid.position(static_cast<int>(best));
}

std::optional<int> peak_location(const FieldState& field) {
    return peak_location(field.u, field.grid);
}

double input_centroid(const std::vector<GaussianSpec>& inputs, const FieldGrid& grid) {
    std::vector<double> mass(static_cast<size_t>(grid.size), 0.0);
    for (const auto& spec : inputs) {
        const auto v = gaussian_profile(spec, grid);
        for (size_t i = 0; i < mass.size(); ++i) mass[i] += v[i];
    }
    double total = 0.0, weighted = 0.0;
    for (int i = 0; i < grid.size; ++i) {
        total += mass[static_cast<size_t>(i)];
        weighted += grid.position(i) * mass[static_cast<size_t>(i)];
    }
    if (!(total > 0)) throw std::invalid_argument("input_centroid: total input mass is zero");
    return weighted / total;
}

double acceptability(int x_peak, double centroid) {
    return 1.0 / (1.0 + std::abs(x_peak - centroid));
}

std::optional<int> response_time(const SimTrace& trace, FieldId field, int phase3_onset) {
    const auto& rows = (field == FieldId::ca) ? trace.ca_u : trace.conn_u;
    if (phase3_onset < 0 || static_cast<size_t>(phase3_onset) >= rows.size())
        throw std::invalid_argument("response_time: phase3_onset outside trace");
    for (size_t t = static_cast<size_t>(phase3_onset); t < rows.size(); ++t) {
        const double m = *std::max_element(rows[t].begin(), rows[t].end());
        if (m > 0) return static_cast<int>(t) - phase3_onset;
    }
    return std::nullopt;
}

std::string classify_reading(int x_peak) {
    if (x_peak < 38) return "adjacency";
    if (x_peak <= 62) return "alienable";
    return "inalienable";
}

SimRecord evaluate_record(const SimTrace& trace, const ScenarioConfig& config) {
    SimRecord rec;
    rec.condition = config.label;
    rec.seed = trace.seed;
    rec.c_dnf = config.params.graph.pathways.empty()
                    ? 0.0
                    : config.params.graph.pathways.front().c_dnf;

    const FieldGrid& grid = config.params.grid;
    rec.peak_ca = peak_location(trace.ca_u.back(), grid);
    rec.peak_conn = peak_location(trace.conn_u.back(), grid);
    rec.reading = rec.peak_conn ? classify_reading(*rec.peak_conn) : "none";

    const PhaseSpec& target = config.phases.back();
    std::vector<GaussianSpec> conn_inputs;
    for (const auto& fi : target.field_inputs)
        if (fi.field == FieldId::conn) conn_inputs.push_back(fi.spec);
    for (const auto& nc : config.params.graph.node_couplings)
        if (nc.target == FieldId::conn && target.node_input != 0)
            conn_inputs.push_back(GaussianSpec(target.node_input, nc.p, nc.w));

    if (rec.peak_conn) {
        double total_a = 0.0;
        for (const auto& s : conn_inputs) total_a += std::abs(s.a);
        if (total_a > 0)
            rec.acceptability = acceptability(*rec.peak_conn, input_centroid(conn_inputs, grid));
    }

    const auto rt = response_time(trace, FieldId::conn, config.final_phase_onset());
    rec.rt = rt;
    rec.rt_censored = !rt.has_value();
    return rec;
}

}  // namespace dnf
