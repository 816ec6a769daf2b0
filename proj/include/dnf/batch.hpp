#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "dnf/measures.hpp"
#include "dnf/stats.hpp"

namespace dnf {

struct BatchResult {
    std::vector<SimRecord> records;  // condition-major, sim index within condition
    std::uint64_t master_seed = 0;
    std::vector<std::string> conditions;
    std::size_t n_per_condition = 0;
};

std::uint64_t sim_seed(std::uint64_t master_seed, std::size_t condition_index,
                       std::size_t sim_index);

// Runs n simulations per condition. workers == 0 picks a default from the
// HAVESIM_WORKERS environment variable, falling back to hardware concurrency.
// Output is identical for any worker count.
BatchResult run_batch(const std::vector<ScenarioConfig>& conditions, std::size_t n,
                      std::uint64_t master_seed, unsigned workers = 0);

struct ConditionSummary {
    std::string condition;
    std::size_t n = 0;
    std::size_t n_censored = 0;
    double mean_acceptability = 0.0, acc_ci_lo = 0.0, acc_ci_hi = 0.0;
    double mean_rt = 0.0, rt_ci_lo = 0.0, rt_ci_hi = 0.0;  // censored RTs excluded
};

std::vector<ConditionSummary> summarize(const std::vector<SimRecord>& records);

struct BatchAnalysis {
    std::map<std::string, SpearmanResult> spearman_by_condition;  // acceptability vs RT
    RegressionFit regression;  // rt ~ context + acc_z + context:acc_z
    RegressionFit signflip;
    std::size_t n_used = 0;    // rows after pairwise deletion
};

// Rows with censored RT or missing acceptability are dropped; context is
// sum-coded (adjacency = +1, possession = -1); acceptability z-scored over
// the retained rows.
BatchAnalysis analyze(const std::vector<SimRecord>& records);

struct SweepRow {
    double c_dnf = 0.0;
    std::string condition;
    std::size_t n = 0;
    double mean_acceptability = 0.0;
    double ci_lo = 0.0, ci_hi = 0.0;
};

// For each value: rebuild adjacency/possession with c_dnf overridden on every
// pathway, run a batch with its own seed stream, summarize acceptability.
std::vector<SweepRow> sweep_cdnf(const std::vector<double>& values, std::size_t n,
                                 std::uint64_t master_seed, unsigned workers = 0);

void write_records_csv(std::ostream& out, const std::vector<SimRecord>& records);
std::vector<SimRecord> read_records_csv(std::istream& in);
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

unsigned default_worker_count();

}  // namespace dnf
