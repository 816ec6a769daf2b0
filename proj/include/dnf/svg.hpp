#pragma once

#include <string>
#include <vector>

#include "dnf/batch.hpp"

namespace dnf {

// Deterministic SVG output, one series per condition.

// conn-peak locations binned 1..99 in width-2 bins
std::string svg_peak_hist(const std::vector<SimRecord>& records);

// acceptability binned over [0, 1]
std::string svg_acc_hist(const std::vector<SimRecord>& records);

// RT (y) against acceptability (x), colored by condition
std::string svg_rt_acc_scatter(const std::vector<SimRecord>& records);

// mean acceptability by condition across c_dnf, with CI whiskers
std::string svg_sweep(const std::vector<SweepRow>& rows);

}  // namespace dnf
