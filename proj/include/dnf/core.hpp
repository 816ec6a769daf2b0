#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace dnf {

// Discretized semantic dimension. Neurons carry integer labels 1..size,
// each tuned to a percentage of the dimension's maximum conceivable value.
struct FieldGrid {
    int size = 99;

    FieldGrid() = default;
    explicit FieldGrid(int size_);

    // label of neuron at storage index i (1-based labels)
    int position(int index) const { return index + 1; }
};

struct KernelParams {
    double c_exc = 30.0;
    double sigma_exc = 5.0;
    double c_inh = 5.0;
    double sigma_inh = 12.5;
    double c_glob = 2.0;

    void validate() const;
};

struct FieldParams {
    double tau = 20.0;   // timesteps
    double h = -5.0;     // resting level
    double q = 4.0;      // noise gain
    double beta = 4.0;   // sigmoid steepness
    KernelParams kernel;

    void validate() const;
};

struct NodeParams {
    double tau = 5.0;
    double q = 1.0;

    void validate() const;
};

struct GaussianSpec {
    double a = 0.0;  // amplitude
    double p = 0.0;  // center position (real-valued allowed)
    double w = 1.0;  // width in neurons

    GaussianSpec() = default;
    GaussianSpec(double a_, double p_, double w_);

    bool operator==(const GaussianSpec&) const = default;
};

struct NodeState {
    double u = 0.0;
    NodeParams params;
};

struct FieldState {
    std::vector<double> u;  // one activation per grid position
    FieldParams params;
    FieldGrid grid;

    FieldState(FieldGrid grid_, FieldParams params_);  // starts at u == h
};

std::vector<double> gaussian_profile(const GaussianSpec& spec, const FieldGrid& grid);

// g(u) = 1 / (1 + exp(-beta * u))
double sigmoid(double u, double beta);

// Mexican-hat interaction weight at integer neuron distance delta.
double kernel_weight(int delta, const KernelParams& k);

// v[x] = sum_x' k(x - x') * g(u[x']), non-periodic (truncates at edges).
std::vector<double> lateral_interaction(const FieldState& state);

// One explicit Euler step of the node equation.
NodeState node_step(const NodeState& state, double s_ext, double noise, double dt = 1.0);

// One explicit Euler step of the field equation. total_input already sums
// s_ext + s_node + s_DNF for this timestep; the lateral term is computed
// from the pre-step state.
FieldState field_step(const FieldState& state, const std::vector<double>& total_input,
                      const std::vector<double>& noise, double dt = 1.0);

}  // namespace dnf
