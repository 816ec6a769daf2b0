// End-to-end acceptance battery. Each numbered check prints one PASS/FAIL
// line; the process exits nonzero if any check fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dnf/batch.hpp"
#include "dnf/measures.hpp"
#include "dnf/rng.hpp"
#include "dnf/scenario.hpp"
#include "dnf/stats.hpp"

using namespace dnf;

namespace {

int failures = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail = "") {
    std::printf("[%s] criterion %d: %s%s%s\n", ok ? "PASS" : "FAIL", criterion, name.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!ok) ++failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

bool near(double a, double b, double tol) { return std::fabs(a - b) <= tol; }

int argmax_label(const std::vector<double>& v) {
    int best = 0;
    for (int i = 1; i < static_cast<int>(v.size()); ++i)
        if (v[static_cast<size_t>(i)] > v[static_cast<size_t>(best)]) best = i;
    return best + 1;
}

ScenarioConfig zero_noise(const std::string& name) {
    auto cfg = build_condition(name);
    cfg.params.field.q = 0;
    cfg.params.node.q = 0;
    return cfg;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

// ---- criterion 1: equation-level closed-form examples -----------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    const FieldGrid grid;
    const FieldParams fp;

    const auto g640 = gaussian_profile(GaussianSpec(6, 50, 40), grid);
    ok &= g640[49] == 6.0;
    ok &= near(g640[89], 6.0 * std::exp(-0.5), 1e-9);
    for (double v : gaussian_profile(GaussianSpec(0, 25, 12), grid)) ok &= v == 0.0;

    ok &= sigmoid(0, 4) == 0.5;
    ok &= near(sigmoid(1, 4), 1.0 / (1.0 + std::exp(-4.0)), 1e-9);
    ok &= sigmoid(-10, 4) < 1e-17;

    const double k0 = 30.0 / (std::sqrt(2 * M_PI) * 5.0) - 5.0 / (std::sqrt(2 * M_PI) * 12.5) - 2.0;
    ok &= near(kernel_weight(0, fp.kernel), k0, 1e-9);
    for (int d = 1; d < 99; ++d) ok &= kernel_weight(d, fp.kernel) == kernel_weight(-d, fp.kernel);
    ok &= near(kernel_weight(98, fp.kernel), -2.0, 1e-9);

    const FieldState rest(grid, fp);
    for (double v : lateral_interaction(rest)) ok &= std::fabs(v) < 1e-6;

    NodeState node;
    ok &= node_step(node, 0, 0).u == 0.0;
    ok &= near(node_step(node, 6, 0).u, 1.2, 1e-9);
    NodeState iter = node;
    for (int t = 0; t < 90; ++t) iter = node_step(iter, 6, 0);
    ok &= std::fabs(iter.u - 6.0) < 1e-4;

    const std::vector<double> zeros(99, 0.0);
    const auto still = field_step(rest, zeros, zeros);
    for (double v : still.u) ok &= std::fabs(v - fp.h) < 1e-6;

    ok &= acceptability(47, 50.0) == 0.25;
    ok &= acceptability(50, 50.0) == 1.0;
    ok &= near(acceptability(26, 49.4), 1.0 / 24.4, 1e-9);

    ok &= near(quartic_weight(62, 50, 12), 0.5, 1e-9);
    ok &= near(quartic_weight(74, 50, 12), 1.0 / 17.0, 1e-9);

    const double dt = seconds_since(t0);
    report(1, "equation-level unit checks", ok && dt < 1.0,
           "runtime " + fmt(dt) + " s (< 1 s)");
}

// ---- criterion 2: canonical simulation ---------------------------------------

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();

    const auto quiet = run_simulation(zero_noise("canonical"), 1);
    const int conn_peak = argmax_label(quiet.conn_u.back());
    const int ca_peak = argmax_label(quiet.ca_u.back());
    bool ok = conn_peak >= 47 && conn_peak <= 53 && ca_peak >= 67 && ca_peak <= 73 &&
              std::fabs(quiet.node_u.back() - 6.0) < 1e-3;

    const auto canonical = build_condition("canonical");
    int in_window = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const auto trace = run_simulation(canonical, seed);
        const int cp = argmax_label(trace.conn_u.back());
        const int ap = argmax_label(trace.ca_u.back());
        if (cp >= 45 && cp <= 55 && ap >= 65 && ap <= 75) ++in_window;
    }
    ok &= in_window >= 95;

    const double dt = seconds_since(t0);
    report(2, "canonical simulation stabilizes", ok && dt < 5.0,
           "zero-noise peaks conn=" + std::to_string(conn_peak) + " ca=" +
               std::to_string(ca_peak) + ", noisy in-window " + std::to_string(in_window) +
               "/100, runtime " + fmt(dt) + " s (< 5 s)");
}

// ---- criteria 3-7: one n=1000/condition batch --------------------------------

struct MainBatch {
    BatchResult batch;
    std::vector<ConditionSummary> summary;
    BatchAnalysis analysis;
};

MainBatch run_main_batch() {
    MainBatch mb{run_batch({build_condition("adjacency"), build_condition("possession")}, 1000,
                           42),
                 {},
                 {}};
    mb.summary = summarize(mb.batch.records);
    mb.analysis = analyze(mb.batch.records);
    return mb;
}

void criterion_3(const MainBatch& mb, double runtime) {
    std::map<std::string, std::map<std::string, int>> readings;
    for (const auto& r : mb.batch.records) ++readings[r.condition][r.reading];

    const double n = static_cast<double>(mb.batch.n_per_condition);
    const double adj_in_adj = readings["adjacency"]["adjacency"] / n;
    const double adj_in_poss = readings["possession"]["adjacency"] / n;
    const double inal_in_poss = readings["possession"]["inalienable"] / n;

    const bool ok = adj_in_adj > 0.60 && adj_in_poss >= 0.25 && inal_in_poss >= 0.25 &&
                    adj_in_adj > adj_in_poss;
    report(3, "bimodality and context effect", ok,
           "P(adjacency reading | adjacency ctx) = " + fmt(adj_in_adj) +
               ", | possession ctx = " + fmt(adj_in_poss) + ", P(inalienable | possession) = " +
               fmt(inal_in_poss) + ", batch runtime " + fmt(runtime) + " s (target < 60 s)");
}

void criterion_4(const MainBatch& mb) {
    const ConditionSummary* adj = nullptr;
    const ConditionSummary* poss = nullptr;
    for (const auto& s : mb.summary) {
        if (s.condition == "adjacency") adj = &s;
        if (s.condition == "possession") poss = &s;
    }
    bool ok = adj && poss;
    if (ok) {
        ok &= adj->mean_acceptability > poss->mean_acceptability;
        ok &= adj->acc_ci_lo > poss->acc_ci_hi;  // non-overlapping intervals
    }

    ok &= acceptability(47, 50.0) == 0.25;
    const FieldGrid grid;
    const double target =
        input_centroid({GaussianSpec(6, 50, 40), GaussianSpec(0.4, 25, 12)}, grid);
    const double canonical =
        input_centroid({GaussianSpec(6, 50, 40), GaussianSpec(6, 50, 12)}, grid);
    ok &= near(target, 49.4, 0.1) && near(canonical, 50.0, 0.1);

    report(4, "acceptability effect", ok,
           "mean acc adjacency " + fmt(adj ? adj->mean_acceptability : 0) + " > possession " +
               fmt(poss ? poss->mean_acceptability : 0) + ", centroids " + fmt(target) + " / " +
               fmt(canonical));
}

void criterion_5(const MainBatch& mb) {
    const ConditionSummary* adj = nullptr;
    const ConditionSummary* poss = nullptr;
    for (const auto& s : mb.summary) {
        if (s.condition == "adjacency") adj = &s;
        if (s.condition == "possession") poss = &s;
    }
    bool ok = adj && poss;
    if (ok) {
        ok &= poss->mean_rt > adj->mean_rt;
        ok &= poss->rt_ci_lo > adj->rt_ci_hi;
    }
    report(5, "RT effect", ok,
           "mean RT possession " + fmt(poss ? poss->mean_rt : 0) + " > adjacency " +
               fmt(adj ? adj->mean_rt : 0));
}

void criterion_6(const MainBatch& mb) {
    const auto& sp = mb.analysis.spearman_by_condition;
    bool ok = sp.count("adjacency") && sp.count("possession");
    double rho_adj = 0, rho_poss = 0;
    if (ok) {
        rho_adj = sp.at("adjacency").rho;
        rho_poss = sp.at("possession").rho;
        ok &= rho_adj < 0 && sp.at("adjacency").p < 0.05;
        ok &= rho_poss > 0 && sp.at("possession").p < 0.05;
        ok &= std::fabs(rho_adj) > std::fabs(rho_poss);
    }
    report(6, "correlation structure", ok,
           "rho adjacency " + fmt(rho_adj) + ", possession " + fmt(rho_poss) +
               " (paper references: -0.26 / +0.16)");
}

void criterion_7(const MainBatch& mb) {
    const auto& fit = mb.analysis.regression;
    const auto& flip = mb.analysis.signflip;
    bool ok = true;
    ok &= fit.beta[1] < 0 && fit.p[1] < 0.05;  // context
    ok &= fit.beta[2] < 0 && fit.p[2] < 0.05;  // acceptability
    ok &= fit.beta[3] < 0 && fit.p[3] < 0.05;  // interaction
    ok &= flip.beta[3] < 0 && flip.p[3] < 0.05;

    // paper magnitudes are sanity references, not hard tolerances
    const bool sane = std::fabs(fit.beta[1]) > 2.40 / 3 && std::fabs(fit.beta[1]) < 2.40 * 3 &&
                      std::fabs(fit.beta[3]) > 1.35 / 3 && std::fabs(fit.beta[3]) < 1.35 * 3;

    report(7, "regression with interaction", ok,
           "beta context " + fmt(fit.beta[1]) + ", acc " + fmt(fit.beta[2]) + ", interaction " +
               fmt(fit.beta[3]) + ", signflip interaction " + fmt(flip.beta[3]) +
               (sane ? " (magnitudes within 3x of references -2.40/-1.35)"
                     : " (NOTE: magnitudes outside 3x reference band)"));
}

// ---- criterion 8: coupling-strength sweep ------------------------------------

void criterion_8() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::vector<double> values = {0.25, 0.30, 0.35, 0.40, 0.45};
    const auto rows = sweep_cdnf(values, 1000, 42);

    auto diff_at = [&rows](double c) {
        double adj = 0, poss = 0;
        for (const auto& r : rows) {
            if (r.c_dnf != c) continue;
            if (r.condition == "adjacency") adj = r.mean_acceptability;
            if (r.condition == "possession") poss = r.mean_acceptability;
        }
        return adj - poss;
    };
    const double d_lo = diff_at(0.25);
    const double d_hi = diff_at(0.45);
    const bool ok = d_hi < d_lo && d_lo > 0 && d_hi > 0;

    const double dt = seconds_since(t0);
    report(8, "c_dnf sweep shrinks the context effect", ok,
           "diff at 0.25 = " + fmt(d_lo) + ", at 0.45 = " + fmt(d_hi) + ", runtime " + fmt(dt) +
               " s (target < 600 s)");
}

// ---- criterion 9: determinism and parallel invariance ------------------------

void criterion_9() {
    const std::vector<ScenarioConfig> conds = {build_condition("adjacency"),
                                               build_condition("possession")};
    auto csv_of = [&conds](unsigned workers) {
        std::ostringstream out;
        write_records_csv(out, run_batch(conds, 100, 42, workers).records);
        return out.str();
    };
    const std::string serial = csv_of(1);
    const std::string parallel = csv_of(8);
    const std::string repeat = csv_of(8);
    const bool ok = serial == parallel && parallel == repeat;
    report(9, "determinism and parallel invariance", ok,
           "records CSV byte-identical for 1 vs 8 workers and across re-runs");
}

// ---- criterion 10: oracle suites ---------------------------------------------

void criterion_10() {
    bool ok = true;
    const FieldGrid grid;
    const FieldParams fp;

    // lateral interaction vs O(F^2) brute force, exact
    std::mt19937 gen(2024);
    std::uniform_real_distribution<double> dist(-8.0, 6.0);
    for (int rep = 0; rep < 5; ++rep) {
        FieldState s(grid, fp);
        for (auto& u : s.u) u = dist(gen);
        const auto fast = lateral_interaction(s);
        for (int x = 0; x < grid.size; ++x) {
            double acc = 0.0;
            for (int xp = 0; xp < grid.size; ++xp)
                acc += kernel_weight(x - xp, fp.kernel) *
                       sigmoid(s.u[static_cast<size_t>(xp)], fp.beta);
            ok &= fast[static_cast<size_t>(x)] == acc;
        }
    }

    // OLS vs normal-equation (cofactor inverse) oracle, 100 random instances
    auto det3 = [](const double m[4][4], int r0, int r1, int r2, int c0, int c1, int c2) {
        return m[r0][c0] * (m[r1][c1] * m[r2][c2] - m[r1][c2] * m[r2][c1]) -
               m[r0][c1] * (m[r1][c0] * m[r2][c2] - m[r1][c2] * m[r2][c0]) +
               m[r0][c2] * (m[r1][c0] * m[r2][c1] - m[r1][c1] * m[r2][c0]);
    };
    std::uniform_real_distribution<double> d2(-3.0, 3.0);
    for (int rep = 0; rep < 100; ++rep) {
        const size_t n = 8 + gen() % 43;
        std::vector<double> y(n), a(n), c(n);
        for (size_t i = 0; i < n; ++i) {
            y[i] = d2(gen);
            a[i] = d2(gen);
            c[i] = (i % 2 == 0) ? 1.0 : -1.0;
        }
        double m[4][4] = {};
        double v[4] = {};
        for (size_t i = 0; i < n; ++i) {
            const double x[4] = {1.0, c[i], a[i], c[i] * a[i]};
            for (int r = 0; r < 4; ++r) {
                v[r] += x[r] * y[i];
                for (int s2 = 0; s2 < 4; ++s2) m[r][s2] += x[r] * x[s2];
            }
        }
        const int rows[4][3] = {{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
        double inv[4][4];
        for (int r = 0; r < 4; ++r)
            for (int cc = 0; cc < 4; ++cc)
                inv[cc][r] = (((r + cc) % 2) ? -1.0 : 1.0) *
                             det3(m, rows[r][0], rows[r][1], rows[r][2], rows[cc][0], rows[cc][1],
                                  rows[cc][2]);
        double det = 0.0;
        for (int cc = 0; cc < 4; ++cc) det += m[0][cc] * inv[cc][0];

        const auto fit = ols_interaction(y, a, c);
        for (int r = 0; r < 4; ++r) {
            double beta = 0.0;
            for (int s2 = 0; s2 < 4; ++s2) beta += inv[r][s2] * v[s2];
            beta /= det;
            ok &= std::fabs(fit.beta[static_cast<size_t>(r)] - beta) <= 1e-8;
        }
    }

    // Spearman vs independent rank-then-Pearson oracle, ties-free data
    std::uniform_real_distribution<double> d3(0.0, 1.0);
    for (int rep = 0; rep < 25; ++rep) {
        const size_t n = 5 + gen() % 40;
        std::vector<double> xs(n), ys(n);
        for (auto& x : xs) x = d3(gen);
        for (auto& x : ys) x = d3(gen);
        std::vector<double> rx(n), ry(n);
        for (size_t i = 0; i < n; ++i) {
            int sx = 0, sy = 0;
            for (size_t j = 0; j < n; ++j) {
                if (xs[j] < xs[i]) ++sx;
                if (ys[j] < ys[i]) ++sy;
            }
            rx[i] = sx + 1;
            ry[i] = sy + 1;
        }
        const double nn = static_cast<double>(n);
        double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
        for (size_t i = 0; i < n; ++i) {
            sx += rx[i];
            sy += ry[i];
            sxx += rx[i] * rx[i];
            syy += ry[i] * ry[i];
            sxy += rx[i] * ry[i];
        }
        const double oracle =
            (nn * sxy - sx * sy) / std::sqrt((nn * sxx - sx * sx) * (nn * syy - sy * sy));
        ok &= std::fabs(spearman(xs, ys).rho - oracle) <= 1e-12;
    }

    report(10, "oracle suites", ok,
           "lateral exact, OLS <= 1e-8 on 100 instances, Spearman vs rank-Pearson");
}

}  // namespace

int main() {
    criterion_1();
    criterion_2();

    const auto t0 = std::chrono::steady_clock::now();
    const MainBatch mb = run_main_batch();
    const double batch_runtime = seconds_since(t0);

    criterion_3(mb, batch_runtime);
    criterion_4(mb);
    criterion_5(mb);
    criterion_6(mb);
    criterion_7(mb);
    criterion_8();
    criterion_9();
    criterion_10();

    if (failures == 0) {
        std::printf("all acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
