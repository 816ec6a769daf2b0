#pragma once

#include <string>
#include <vector>

#include "dnf/core.hpp"

namespace dnf {

enum class FieldId { ca, conn };

std::string to_string(FieldId id);
FieldId field_id_from_string(const std::string& s);

// Input from a dynamic node into a field: a Gaussian whose amplitude tracks
// node activation linearly (no sigmoidal gate).
struct NodeFieldCoupling {
    FieldId target = FieldId::conn;
    double p = 50.0;
    double w = 40.0;
};

// Gaussian-shaped region on one field used by a coupling pathway.
struct CouplingDist {
    double p = 0.0;
    double w = 1.0;
};

// Directed field-to-field link: activation within the sender region emits a
// Gaussian bump into the receiver region.
struct CouplingPathway {
    FieldId sender = FieldId::ca;
    FieldId receiver = FieldId::conn;
    CouplingDist sender_dist;
    CouplingDist receiver_dist;
    double c_dnf = 0.35;

    void validate() const;
};

struct CouplingGraph {
    std::vector<CouplingPathway> pathways;
    std::vector<NodeFieldCoupling> node_couplings;

    // Fixed default topology: lowCA(30,20) <-> lowConn(25,12),
    // lowCA(30,20) <-> highConn(75,12), highCA(70,20) <-> midConn(50,12),
    // each direction a separate pathway; plus have-node -> conn (p=50, w=40).
    static CouplingGraph defaults();

    void set_c_dnf(double value);
};

std::vector<double> node_to_field_input(const NodeState& node, const NodeFieldCoupling& c,
                                        const FieldGrid& grid);

// 1 / (1 + ((x - p) / w)^4): locality weighting of sender neurons.
double quartic_weight(double x, double p, double w);

// Amplitude emitted along a pathway, computed from pre-step snapshots of both
// fields. Saturates to 0 when the receiver region already matches or exceeds
// the sender region's maximum.
double pathway_amplitude(const FieldState& sender, const FieldState& receiver,
                         const CouplingPathway& pw);

std::vector<double> field_to_field_input(const FieldState& sender, const FieldState& receiver,
                                         const CouplingPathway& pw);

}  // namespace dnf
