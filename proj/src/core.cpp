#include "dnf/core.hpp"

#include <cmath>
#include <cstdlib>

namespace dnf {

FieldGrid::FieldGrid(int size_) : size(size_) {
    if (size < 2) throw std::invalid_argument("FieldGrid: size must be >= 2");
}

void KernelParams::validate() const {
    if (c_exc < 0 || c_inh < 0 || c_glob < 0)
        throw std::invalid_argument("KernelParams: gains must be >= 0");
    if (!(sigma_exc > 0) || !(sigma_inh > 0))
        throw std::invalid_argument("KernelParams: radii must be > 0");
    if (!(sigma_exc < sigma_inh))
        throw std::invalid_argument("KernelParams: sigma_exc must be < sigma_inh");
}

void FieldParams::validate() const {
    if (!(tau > 0)) throw std::invalid_argument("FieldParams: tau must be > 0");
    if (q < 0) throw std::invalid_argument("FieldParams: q must be >= 0");
    if (!(beta > 0)) throw std::invalid_argument("FieldParams: beta must be > 0");
    if (!(h < 0)) throw std::invalid_argument("FieldParams: h must be < 0");
    kernel.validate();
}

void NodeParams::validate() const {
    if (!(tau > 0)) throw std::invalid_argument("NodeParams: tau must be > 0");
    if (q < 0) throw std::invalid_argument("NodeParams: q must be >= 0");
}

GaussianSpec::GaussianSpec(double a_, double p_, double w_) : a(a_), p(p_), w(w_) {
    if (!(w > 0)) throw std::invalid_argument("GaussianSpec: w must be > 0");
    if (!std::isfinite(a)) throw std::invalid_argument("GaussianSpec: a must be finite");
}

FieldState::FieldState(FieldGrid grid_, FieldParams params_)
    : u(static_cast<size_t>(grid_.size), params_.h), params(params_), grid(grid_) {
    params.validate();
}

std::vector<double> gaussian_profile(const GaussianSpec& spec, const FieldGrid& grid) {
    std::vector<double> v(static_cast<size_t>(grid.size));
    const double inv2w2 = 1.0 / (2.0 * spec.w * spec.w);
    for (int i = 0; i < grid.size; ++i) {
        const double d = grid.position(i) - spec.p;
        v[static_cast<size_t>(i)] = spec.a * std::exp(-d * d * inv2w2);
    }
    return v;
}

double sigmoid(double u, double beta) {
    return 1.0 / (1.0 + std::exp(-beta * u));
}

double kernel_weight(int delta, const KernelParams& k) {
    static const double sqrt_2pi = std::sqrt(2.0 * M_PI);
    const double d2 = static_cast<double>(delta) * delta;
    const double exc = k.c_exc / (sqrt_2pi * k.sigma_exc) *
                       std::exp(-d2 / (2.0 * k.sigma_exc * k.sigma_exc));
    const double inh = k.c_inh / (sqrt_2pi * k.sigma_inh) *
                       std::exp(-d2 / (2.0 * k.sigma_inh * k.sigma_inh));
    return exc - inh - k.c_glob;
}

std::vector<double> lateral_interaction(const FieldState& state) {
    const int n = state.grid.size;
    // kernel depends only on |x - x'|; tabulate once per call
    std::vector<double> kern(static_cast<size_t>(n));
    for (int d = 0; d < n; ++d) kern[static_cast<size_t>(d)] = kernel_weight(d, state.params.kernel);

    std::vector<double> g(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) g[static_cast<size_t>(i)] = sigmoid(state.u[static_cast<size_t>(i)], state.params.beta);

    std::vector<double> v(static_cast<size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
        double acc = 0.0;
        for (int xp = 0; xp < n; ++xp)
            acc += kern[static_cast<size_t>(std::abs(x - xp))] * g[static_cast<size_t>(xp)];
        v[static_cast<size_t>(x)] = acc;
    }
    return v;
}

NodeState node_step(const NodeState& state, double s_ext, double noise, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("node_step: dt must be > 0");
    NodeState next = state;
    next.u = state.u + (dt / state.params.tau) *
                           (-state.u + s_ext + state.params.q * noise);
    return next;
}

FieldState field_step(const FieldState& state, const std::vector<double>& total_input,
                      const std::vector<double>& noise, double dt) {
    if (!(dt > 0)) throw std::invalid_argument("field_step: dt must be > 0");
    const size_t n = state.u.size();
    if (total_input.size() != n || noise.size() != n)
        throw std::invalid_argument("field_step: input/noise length mismatch");

    const std::vector<double> lateral = lateral_interaction(state);
    FieldState next = state;
    const double rate = dt / state.params.tau;
    for (size_t i = 0; i < n; ++i) {
        next.u[i] = state.u[i] + rate * (-state.u[i] + state.params.h + total_input[i] +
                                         lateral[i] + state.params.q * noise[i]);
    }
    return next;
}

}  // namespace dnf
