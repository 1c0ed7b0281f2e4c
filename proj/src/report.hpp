// Sweep output: deterministic CSV and a static SVG plot.
#pragma once

#include <string>

#include "harness.hpp"

namespace edgecache {

// Header axis,value,policy,metric,mean,stderr,realizations, then one row per
// (grid point, policy, metric) — policies in configured order, eta before
// rho. Returns false (header-only file) for an empty grid; callers may warn.
bool emit_csv(const SweepResult& result, const std::string& path);

// Two panels, satisfaction ratio and backhaul load vs the sweep axis, mean
// +/- standard error per policy.
void emit_plot(const SweepResult& result, const std::string& path);

}  // namespace edgecache
