#include "dnf/scenario.hpp"

#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>

#include "dnf/rng.hpp"
#include "json.hpp"

namespace dnf {

using nlohmann::json;

int ScenarioConfig::total_duration() const {
    int t = 0;
    for (const auto& ph : phases) t += ph.duration;
    return t;
}

int ScenarioConfig::final_phase_onset() const {
    if (phases.empty()) return 1;
    int t = 0;
    for (size_t i = 0; i + 1 < phases.size(); ++i) t += phases[i].duration;
    return t + 1;
}

void ScenarioConfig::validate() const {
    params.field.validate();
    params.node.validate();
    for (const auto& pw : params.graph.pathways) pw.validate();
    for (const auto& nc : params.graph.node_couplings)
        if (!(nc.w > 0)) throw std::invalid_argument("node coupling: w must be > 0");
    if (phases.empty()) throw std::invalid_argument("scenario: at least one phase required");
    for (const auto& ph : phases) {
        if (ph.duration < 0) throw std::invalid_argument("phase: duration must be >= 0");
        if (!std::isfinite(ph.node_input))
            throw std::invalid_argument("phase: node_input must be finite");
        for (const auto& fi : ph.field_inputs) {
            if (!(fi.spec.w > 0))
                throw std::invalid_argument("field input on '" + to_string(fi.field) +
                                            "': w must be > 0");
            if (!std::isfinite(fi.spec.a) || !std::isfinite(fi.spec.p))
                throw std::invalid_argument("field input on '" + to_string(fi.field) +
                                            "': a and p must be finite");
        }
    }
}

ScenarioConfig build_condition(const std::string& name) {
    ScenarioConfig cfg;
    cfg.label = name;

    // external inputs: CA targets at 30 (low) / 70 (high), conn targets
    // at 25 (low) / 50 (mid) / 75 (high), width 12 throughout
    if (name == "canonical") {
        PhaseSpec ph;
        ph.duration = 90;
        ph.node_input = 6.0;
        ph.field_inputs = {{FieldId::ca, GaussianSpec(6, 70, 12)},
                           {FieldId::conn, GaussianSpec(6, 50, 12)}};
        cfg.phases = {ph};
        return cfg;
    }

    if (name == "adjacency" || name == "possession") {
        PhaseSpec context;
        context.duration = 90;
        context.node_input = 6.0;
        const double conn_p = (name == "adjacency") ? 25.0 : 75.0;
        context.field_inputs = {{FieldId::ca, GaussianSpec(6, 30, 12)},
                                {FieldId::conn, GaussianSpec(6, conn_p, 12)}};

        PhaseSpec gap;
        gap.duration = 20;

        PhaseSpec target;
        target.duration = 90;
        target.node_input = 6.0;
        target.field_inputs = {{FieldId::ca, GaussianSpec(6, 30, 12)},
                               {FieldId::conn, GaussianSpec(0.4, 25, 12)}};

        cfg.phases = {context, gap, target};
        return cfg;
    }

    throw std::invalid_argument("unknown condition '" + name +
                                "' (valid: canonical, adjacency, possession)");
}

namespace {

void add_external_inputs(const PhaseSpec& phase, FieldId id, const FieldGrid& grid,
                         std::vector<double>& acc) {
    for (const auto& fi : phase.field_inputs) {
        if (fi.field != id) continue;
        const auto v = gaussian_profile(fi.spec, grid);
        for (size_t i = 0; i < acc.size(); ++i) acc[i] += v[i];
    }
}

bool all_finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

SimTrace run_simulation(const ScenarioConfig& config, std::uint64_t seed) {
    config.validate();

    const FieldGrid& grid = config.params.grid;
    FieldState ca(grid, config.params.field);
    FieldState conn(grid, config.params.field);
    NodeState node;
    node.params = config.params.node;

    NoiseStream noise(seed);

    SimTrace trace;
    trace.config_label = config.label;
    trace.seed = seed;
    const int total = config.total_duration();
    trace.node_u.reserve(static_cast<size_t>(total) + 1);
    trace.ca_u.reserve(static_cast<size_t>(total) + 1);
    trace.conn_u.reserve(static_cast<size_t>(total) + 1);
    trace.node_u.push_back(node.u);
    trace.ca_u.push_back(ca.u);
    trace.conn_u.push_back(conn.u);

    const size_t n = static_cast<size_t>(grid.size);
    int t = 0;
    for (const auto& phase : config.phases) {
        for (int step = 0; step < phase.duration; ++step) {
            ++t;

            // all inputs evaluated on the pre-step snapshot
            std::vector<double> in_ca(n, 0.0), in_conn(n, 0.0);
            add_external_inputs(phase, FieldId::ca, grid, in_ca);
            add_external_inputs(phase, FieldId::conn, grid, in_conn);

            for (const auto& nc : config.params.graph.node_couplings) {
                const auto v = node_to_field_input(node, nc, grid);
                auto& acc = (nc.target == FieldId::ca) ? in_ca : in_conn;
                for (size_t i = 0; i < n; ++i) acc[i] += v[i];
            }

            for (const auto& pw : config.params.graph.pathways) {
                const FieldState& snd = (pw.sender == FieldId::ca) ? ca : conn;
                const FieldState& rcv = (pw.receiver == FieldId::ca) ? ca : conn;
                const auto v = field_to_field_input(snd, rcv, pw);
                auto& acc = (pw.receiver == FieldId::ca) ? in_ca : in_conn;
                for (size_t i = 0; i < n; ++i) acc[i] += v[i];
            }

            // fixed draw order: node, then ca, then conn
            const double node_noise = noise.normal();
            std::vector<double> ca_noise(n), conn_noise(n);
            for (size_t i = 0; i < n; ++i) ca_noise[i] = noise.normal();
            for (size_t i = 0; i < n; ++i) conn_noise[i] = noise.normal();

            node = node_step(node, phase.node_input, node_noise);
            ca = field_step(ca, in_ca, ca_noise);
            conn = field_step(conn, in_conn, conn_noise);

            if (!std::isfinite(node.u) || !all_finite(ca.u) || !all_finite(conn.u))
                throw NumericalAbort(t);

            trace.node_u.push_back(node.u);
            trace.ca_u.push_back(ca.u);
            trace.conn_u.push_back(conn.u);
        }
    }
    return trace;
}

namespace {

json kernel_to_json(const KernelParams& k) {
    return {{"c_exc", k.c_exc}, {"sigma_exc", k.sigma_exc}, {"c_inh", k.c_inh},
            {"sigma_inh", k.sigma_inh}, {"c_glob", k.c_glob}};
}

KernelParams kernel_from_json(const json& j) {
    KernelParams k;
    k.c_exc = j.at("c_exc").get<double>();
    k.sigma_exc = j.at("sigma_exc").get<double>();
    k.c_inh = j.at("c_inh").get<double>();
    k.sigma_inh = j.at("sigma_inh").get<double>();
    k.c_glob = j.at("c_glob").get<double>();
    return k;
}

json phase_to_json(const PhaseSpec& ph) {
    json inputs = json::array();
    for (const auto& fi : ph.field_inputs)
        inputs.push_back({{"field", to_string(fi.field)},
                          {"a", fi.spec.a}, {"p", fi.spec.p}, {"w", fi.spec.w}});
    return {{"duration", ph.duration}, {"node_input", ph.node_input},
            {"field_inputs", inputs}};
}

PhaseSpec phase_from_json(const json& j) {
    PhaseSpec ph;
    ph.duration = j.at("duration").get<int>();
    ph.node_input = j.value("node_input", 0.0);
    for (const auto& ji : j.value("field_inputs", json::array())) {
        FieldInput fi;
        fi.field = field_id_from_string(ji.at("field").get<std::string>());
        fi.spec.a = ji.at("a").get<double>();
        fi.spec.p = ji.at("p").get<double>();
        fi.spec.w = ji.at("w").get<double>();
        ph.field_inputs.push_back(fi);
    }
    return ph;
}

}  // namespace

std::string serialize_scenario(const ScenarioConfig& config) {
    json j;
    j["label"] = config.label;
    j["grid_size"] = config.params.grid.size;
    j["field"] = {{"tau", config.params.field.tau}, {"h", config.params.field.h},
                  {"q", config.params.field.q}, {"beta", config.params.field.beta},
                  {"kernel", kernel_to_json(config.params.field.kernel)}};
    j["node"] = {{"tau", config.params.node.tau}, {"q", config.params.node.q}};

    json pathways = json::array();
    for (const auto& pw : config.params.graph.pathways)
        pathways.push_back({{"sender", to_string(pw.sender)},
                            {"receiver", to_string(pw.receiver)},
                            {"sender_p", pw.sender_dist.p}, {"sender_w", pw.sender_dist.w},
                            {"receiver_p", pw.receiver_dist.p}, {"receiver_w", pw.receiver_dist.w},
                            {"c_dnf", pw.c_dnf}});
    json node_couplings = json::array();
    for (const auto& nc : config.params.graph.node_couplings)
        node_couplings.push_back({{"target", to_string(nc.target)},
                                  {"p", nc.p}, {"w", nc.w}});
    j["coupling"] = {{"pathways", pathways}, {"node_couplings", node_couplings}};

    json phases = json::array();
    for (const auto& ph : config.phases) phases.push_back(phase_to_json(ph));
    j["phases"] = phases;

    return j.dump(2) + "\n";
}

ScenarioConfig load_scenario(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
    }

    ScenarioConfig cfg;
    try {
        cfg.label = j.value("label", "");
        cfg.params.grid = FieldGrid(j.value("grid_size", 99));
        if (j.contains("field")) {
            const auto& jf = j.at("field");
            cfg.params.field.tau = jf.value("tau", cfg.params.field.tau);
            cfg.params.field.h = jf.value("h", cfg.params.field.h);
            cfg.params.field.q = jf.value("q", cfg.params.field.q);
            cfg.params.field.beta = jf.value("beta", cfg.params.field.beta);
            if (jf.contains("kernel")) cfg.params.field.kernel = kernel_from_json(jf.at("kernel"));
        }
        if (j.contains("node")) {
            const auto& jn = j.at("node");
            cfg.params.node.tau = jn.value("tau", cfg.params.node.tau);
            cfg.params.node.q = jn.value("q", cfg.params.node.q);
        }
        if (j.contains("coupling")) {
            CouplingGraph g;
            const auto& jc = j.at("coupling");
            for (const auto& jp : jc.value("pathways", json::array())) {
                CouplingPathway pw;
                pw.sender = field_id_from_string(jp.at("sender").get<std::string>());
                pw.receiver = field_id_from_string(jp.at("receiver").get<std::string>());
                pw.sender_dist = {jp.at("sender_p").get<double>(), jp.at("sender_w").get<double>()};
                pw.receiver_dist = {jp.at("receiver_p").get<double>(), jp.at("receiver_w").get<double>()};
                pw.c_dnf = jp.value("c_dnf", 0.35);
                g.pathways.push_back(pw);
            }
            for (const auto& jn : jc.value("node_couplings", json::array())) {
                NodeFieldCoupling nc;
                nc.target = field_id_from_string(jn.at("target").get<std::string>());
                nc.p = jn.at("p").get<double>();
                nc.w = jn.at("w").get<double>();
                g.node_couplings.push_back(nc);
            }
            cfg.params.graph = g;
        }
        for (const auto& jp : j.at("phases")) cfg.phases.push_back(phase_from_json(jp));
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("scenario parse error: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

void write_trace_csv(std::ostream& out, const SimTrace& trace) {
    out << "t,component,x,u\n";
    char buf[64];
    auto fmt = [&buf](double v) {
        std::snprintf(buf, sizeof(buf), "%.10g", v);
        return std::string(buf);
    };
    const size_t steps = trace.node_u.size();
    for (size_t t = 0; t < steps; ++t)
        out << t << ",node,," << fmt(trace.node_u[t]) << "\n";
    for (size_t t = 0; t < trace.ca_u.size(); ++t)
        for (size_t i = 0; i < trace.ca_u[t].size(); ++i)
            out << t << ",ca," << (i + 1) << "," << fmt(trace.ca_u[t][i]) << "\n";
    for (size_t t = 0; t < trace.conn_u.size(); ++t)
        for (size_t i = 0; i < trace.conn_u[t].size(); ++i)
            out << t << ",conn," << (i + 1) << "," << fmt(trace.conn_u[t][i]) << "\n";
}

}  // namespace dnf
