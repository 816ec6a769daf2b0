#include "dnf/coupling.hpp"

#include <algorithm>
#include <cmath>

namespace dnf {

std::string to_string(FieldId id) {
    return id == FieldId::ca ? "ca" : "conn";
}

FieldId field_id_from_string(const std::string& s) {
    if (s == "ca") return FieldId::ca;
    if (s == "conn") return FieldId::conn;
    throw std::invalid_argument("unknown field id: '" + s + "' (expected 'ca' or 'conn')");
}

void CouplingPathway::validate() const {
    if (sender == receiver)
        throw std::invalid_argument("CouplingPathway: sender and receiver must differ");
    if (!(sender_dist.w > 0) || !(receiver_dist.w > 0))
        throw std::invalid_argument("CouplingPathway: widths must be > 0");
    if (c_dnf < 0) throw std::invalid_argument("CouplingPathway: c_dnf must be >= 0");
}

CouplingGraph CouplingGraph::defaults() {
    CouplingGraph g;
    const CouplingDist low_ca{30, 20}, high_ca{70, 20};
    const CouplingDist low_conn{25, 12}, mid_conn{50, 12}, high_conn{75, 12};

    auto both_ways = [&g](CouplingDist on_ca, CouplingDist on_conn) {
        g.pathways.push_back({FieldId::ca, FieldId::conn, on_ca, on_conn, 0.35});
        g.pathways.push_back({FieldId::conn, FieldId::ca, on_conn, on_ca, 0.35});
    };
    both_ways(low_ca, low_conn);
    both_ways(low_ca, high_conn);
    both_ways(high_ca, mid_conn);

    g.node_couplings.push_back({FieldId::conn, 50.0, 40.0});
    return g;
}

void CouplingGraph::set_c_dnf(double value) {
    if (value < 0) throw std::invalid_argument("c_dnf must be >= 0");
    for (auto& pw : pathways) pw.c_dnf = value;
}

std::vector<double> node_to_field_input(const NodeState& node, const NodeFieldCoupling& c,
                                        const FieldGrid& grid) {
    // amplitude is node activation itself; may be <= 0 (no gating)
    std::vector<double> v(static_cast<size_t>(grid.size));
    const double inv2w2 = 1.0 / (2.0 * c.w * c.w);
    for (int i = 0; i < grid.size; ++i) {
        const double d = grid.position(i) - c.p;
        v[static_cast<size_t>(i)] = node.u * std::exp(-d * d * inv2w2);
    }
    return v;
}

double quartic_weight(double x, double p, double w) {
    const double r = (x - p) / w;
    return 1.0 / (1.0 + r * r * r * r);
}

namespace {

double window_max(const FieldState& f, const CouplingDist& dist) {
    const double lo = dist.p - dist.w;
    const double hi = dist.p + dist.w;
    double m = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < f.grid.size; ++i) {
        const double x = f.grid.position(i);
        if (x >= lo && x <= hi) m = std::max(m, f.u[static_cast<size_t>(i)]);
    }
    return m;
}

}  // namespace

double pathway_amplitude(const FieldState& sender, const FieldState& receiver,
                         const CouplingPathway& pw) {
    const double h = sender.params.h;

    // only activation above resting level contributes; globally inhibited
    // regions sit far below h and must not drag the sum negative
    double base = 0.0;
    for (int i = 0; i < sender.grid.size; ++i) {
        const double x = sender.grid.position(i);
        base += pw.c_dnf * std::max(0.0, sender.u[static_cast<size_t>(i)] - h) *
                quartic_weight(x, pw.sender_dist.p, pw.sender_dist.w);
    }

    const double max_send = window_max(sender, pw.sender_dist);
    const double max_recv = window_max(receiver, pw.receiver_dist);
    if (!(max_send > h)) return 0.0;  // nothing above rest in the sender window

    // saturating factor: 1 when the receiver is at rest or below, 0 once the
    // receiver matches the sender; never amplifies
    const double weight = std::clamp((max_send - max_recv) / (max_send - h), 0.0, 1.0);
    return weight * base;
}

std::vector<double> field_to_field_input(const FieldState& sender, const FieldState& receiver,
                                         const CouplingPathway& pw) {
    const double a = pathway_amplitude(sender, receiver, pw);
    return gaussian_profile(GaussianSpec(a, pw.receiver_dist.p, pw.receiver_dist.w),
                            receiver.grid);
}

}  // namespace dnf
