#include "dnf/batch.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "dnf/rng.hpp"

namespace dnf {

namespace {

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    return buf;
}

constexpr double z95 = 1.959963985;

struct MeanCI {
    double mean = 0.0, lo = 0.0, hi = 0.0;
};

MeanCI mean_ci(const std::vector<double>& vs) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    if (vs.empty()) return {nan, nan, nan};  // no usable rows in this group
    const double n = static_cast<double>(vs.size());
    double mean = 0.0;
    for (double v : vs) mean += v;
    mean /= n;
    if (vs.size() < 2) {
        // interval undefined for a single sample; flagged as NaN
        return {mean, nan, nan};
    }
    double ss = 0.0;
    for (double v : vs) ss += (v - mean) * (v - mean);
    const double sd = std::sqrt(ss / (n - 1.0));
    const double half = z95 * sd / std::sqrt(n);
    return {mean, mean - half, mean + half};
}

}  // namespace

unsigned default_worker_count() {
    if (const char* env = std::getenv("HAVESIM_WORKERS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) return static_cast<unsigned>(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 1;
}

std::uint64_t sim_seed(std::uint64_t master_seed, std::size_t condition_index,
                       std::size_t sim_index) {
    return derive_seed(master_seed, condition_index, sim_index);
}

BatchResult run_batch(const std::vector<ScenarioConfig>& conditions, std::size_t n,
                      std::uint64_t master_seed, unsigned workers) {
    if (n < 1) throw std::invalid_argument("run_batch: n must be >= 1");
    if (conditions.empty()) throw std::invalid_argument("run_batch: no conditions");
    if (workers == 0) workers = default_worker_count();

    BatchResult result;
    result.master_seed = master_seed;
    result.n_per_condition = n;
    for (const auto& c : conditions) result.conditions.push_back(c.label);

    const std::size_t total = conditions.size() * n;
    result.records.resize(total);

    std::atomic<std::size_t> next{0};
    std::atomic<bool> failed{false};
    std::string error_message;
    int abort_timestep = -1;  // >= 0 when the first failure was a NumericalAbort
    std::mutex error_mutex;

    auto work = [&]() {
        for (;;) {
            const std::size_t gi = next.fetch_add(1);
            if (gi >= total || failed.load()) break;
            const std::size_t ci = gi / n;
            const std::size_t si = gi % n;
            auto note_failure = [&](const std::string& what, int timestep) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!failed.exchange(true)) {
                    error_message = "simulation (condition '" + conditions[ci].label +
                                    "', index " + std::to_string(si) + ") failed: " + what;
                    abort_timestep = timestep;
                }
            };
            try {
                const std::uint64_t seed = sim_seed(master_seed, ci, si);
                const SimTrace trace = run_simulation(conditions[ci], seed);
                result.records[gi] = evaluate_record(trace, conditions[ci]);
            } catch (const NumericalAbort& e) {
                note_failure(e.what(), e.timestep);
            } catch (const std::exception& e) {
                note_failure(e.what(), -1);
            }
        }
    };

    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
        for (auto& th : pool) th.join();
    }
    if (failed.load()) {
        if (abort_timestep >= 0) throw NumericalAbort(abort_timestep, error_message);
        throw std::runtime_error(error_message);
    }
    return result;
}

std::vector<ConditionSummary> summarize(const std::vector<SimRecord>& records) {
    if (records.empty()) throw std::invalid_argument("summarize: no records");

    std::vector<std::string> order;
    std::map<std::string, std::vector<double>> acc, rt;
    std::map<std::string, std::size_t> count, censored;
    for (const auto& r : records) {
        if (!count.count(r.condition)) order.push_back(r.condition);
        ++count[r.condition];
        if (r.acceptability) acc[r.condition].push_back(*r.acceptability);
        if (r.rt)
            rt[r.condition].push_back(static_cast<double>(*r.rt));
        else
            ++censored[r.condition];
    }

    std::vector<ConditionSummary> out;
    for (const auto& cond : order) {
        ConditionSummary s;
        s.condition = cond;
        s.n = count[cond];
        s.n_censored = censored[cond];
        const auto a = mean_ci(acc[cond]);
        s.mean_acceptability = a.mean;
        s.acc_ci_lo = a.lo;
        s.acc_ci_hi = a.hi;
        if (!rt[cond].empty()) {
            const auto t = mean_ci(rt[cond]);
            s.mean_rt = t.mean;
            s.rt_ci_lo = t.lo;
            s.rt_ci_hi = t.hi;
        }
        out.push_back(s);
    }
    return out;
}

BatchAnalysis analyze(const std::vector<SimRecord>& records) {
    std::vector<double> rt, acc, ctx;
    std::map<std::string, std::pair<std::vector<double>, std::vector<double>>> by_cond;
    for (const auto& r : records) {
        double code = 0.0;
        if (r.condition == "adjacency") code = 1.0;
        else if (r.condition == "possession") code = -1.0;
        else continue;
        if (!r.acceptability || !r.rt) continue;  // listwise deletion
        rt.push_back(static_cast<double>(*r.rt));
        acc.push_back(*r.acceptability);
        ctx.push_back(code);
        by_cond[r.condition].first.push_back(*r.acceptability);
        by_cond[r.condition].second.push_back(static_cast<double>(*r.rt));
    }
    if (rt.size() <= 4) throw std::invalid_argument("analyze: too few usable rows");

    BatchAnalysis out;
    out.n_used = rt.size();
    for (const auto& [cond, xy] : by_cond)
        out.spearman_by_condition[cond] = spearman(xy.first, xy.second);

    const std::vector<double> acc_z = zscore(acc);
    out.regression = ols_interaction(rt, acc_z, ctx);
    out.signflip = signflip_magnitude_check(rt, acc_z, ctx);
    return out;
}

std::vector<SweepRow> sweep_cdnf(const std::vector<double>& values, std::size_t n,
                                 std::uint64_t master_seed, unsigned workers) {
    if (values.empty()) throw std::invalid_argument("sweep_cdnf: no values");
    for (double v : values)
        if (!(v > 0)) throw std::invalid_argument("sweep_cdnf: values must be positive");

    std::vector<SweepRow> table;
    for (std::size_t vi = 0; vi < values.size(); ++vi) {
        std::vector<ScenarioConfig> conds = {build_condition("adjacency"),
                                             build_condition("possession")};
        for (auto& c : conds) c.params.graph.set_c_dnf(values[vi]);

        // independent stream per sweep cell
        const std::uint64_t cell_seed = derive_seed(master_seed, 0x5eedULL, vi);
        const BatchResult batch = run_batch(conds, n, cell_seed, workers);
        for (const auto& s : summarize(batch.records)) {
            SweepRow row;
            row.c_dnf = values[vi];
            row.condition = s.condition;
            row.n = s.n;
            row.mean_acceptability = s.mean_acceptability;
            row.ci_lo = s.acc_ci_lo;
            row.ci_hi = s.acc_ci_hi;
            table.push_back(row);
        }
    }
    return table;
}

void write_records_csv(std::ostream& out, const std::vector<SimRecord>& records) {
    out << "sim_id,condition,seed,c_dnf,peak_ca,peak_conn,reading,acceptability,rt,rt_censored\n";
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        out << i << ',' << r.condition << ',' << r.seed << ',' << fmt_double(r.c_dnf) << ',';
        if (r.peak_ca) out << *r.peak_ca;
        out << ',';
        if (r.peak_conn) out << *r.peak_conn;
        out << ',' << r.reading << ',';
        if (r.acceptability) out << fmt_double(*r.acceptability);
        out << ',';
        if (r.rt) out << *r.rt;
        out << ',' << (r.rt_censored ? 1 : 0) << '\n';
    }
}

std::vector<SimRecord> read_records_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line))
        throw std::invalid_argument("records csv: no rows");
    if (line.rfind("sim_id,condition,seed,", 0) != 0)
        throw std::invalid_argument("records csv: unexpected header");

    std::vector<SimRecord> records;
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::vector<std::string> cells;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) cells.push_back(cell);
        while (cells.size() < 10) cells.push_back("");  // trailing empties
        if (cells.size() != 10)
            throw std::invalid_argument("records csv: bad row at line " +
                                        std::to_string(lineno));
        SimRecord r;
        r.condition = cells[1];
        r.seed = std::strtoull(cells[2].c_str(), nullptr, 10);
        r.c_dnf = std::strtod(cells[3].c_str(), nullptr);
        if (!cells[4].empty()) r.peak_ca = std::stoi(cells[4]);
        if (!cells[5].empty()) r.peak_conn = std::stoi(cells[5]);
        r.reading = cells[6];
        if (!cells[7].empty()) r.acceptability = std::stod(cells[7]);
        if (!cells[8].empty()) r.rt = std::stoi(cells[8]);
        r.rt_censored = (cells[9] == "1");
        records.push_back(r);
    }
    if (records.empty()) throw std::invalid_argument("records csv: no rows");
    return records;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
    out << "c_dnf,condition,n,mean_acceptability,ci_lo,ci_hi\n";
    for (const auto& r : rows) {
        out << fmt_double(r.c_dnf) << ',' << r.condition << ',' << r.n << ','
            << fmt_double(r.mean_acceptability) << ',' << fmt_double(r.ci_lo) << ','
            << fmt_double(r.ci_hi) << '\n';
    }
}

}  // namespace dnf
