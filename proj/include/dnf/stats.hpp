#pragma once

#include <array>
#include <cstddef>
#include <vector>

namespace dnf {

struct SpearmanResult {
    double rho = 0.0;
    double p = 1.0;
    std::size_t n = 0;
};

struct RegressionFit {
    // coefficient order: intercept, context, acceptability, context:acceptability
    std::array<double, 4> beta{};
    std::array<double, 4> se{};
    std::array<double, 4> t{};
    std::array<double, 4> p{};
    std::size_t n = 0;
    int df = 0;

    static constexpr std::array<const char*, 4> names{"intercept", "context",
                                                      "acceptability", "interaction"};
};

// average ranks (1-based), ties receive the mean of their rank range
std::vector<double> average_ranks(const std::vector<double>& values);

// Pearson on average ranks; p from the t-approximation with df = n - 2.
SpearmanResult spearman(const std::vector<double>& xs, const std::vector<double>& ys);

// (v - mean) / sd with sample sd (n - 1); throws on zero variance
std::vector<double> zscore(const std::vector<double>& values);

// Least squares of rt ~ 1 + context + acc + context*acc.
RegressionFit ols_interaction(const std::vector<double>& rt, const std::vector<double>& acc_z,
                              const std::vector<double>& context);

// Refit after negating responses in the context == -1 group: tests whether
// the interaction survives when correlation directions are aligned.
RegressionFit signflip_magnitude_check(const std::vector<double>& rt,
                                       const std::vector<double>& acc_z,
                                       const std::vector<double>& context);

// two-sided p for a t statistic (regularized incomplete beta)
double student_t_two_sided_p(double t, double df);

double pearson(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace dnf
