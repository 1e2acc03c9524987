#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "marketsim/abm.hpp"
#include "marketsim/metrics.hpp"

namespace marketsim {

// Ticks used for "final window" aggregates: the last fifth of the run.
long final_window_start(long steps);

struct BaselineResult {
    std::vector<MetricsRow> history;
    PlatformLedger ledger;
    // Absent when the history cannot cover a window on each side of the
    // AI introduction tick.
    std::optional<ShockSummary> shock;
    long shock_window = 0;
};

BaselineResult run_baseline(const SimConfig& config);

// Sweepable parameters, matching the sensitivity analysis set.
extern const std::vector<std::string> kSweepableParameters;

struct SweepSpec {
    std::string parameter_name;
    std::vector<double> values;
    std::vector<std::uint64_t> seeds;
    SimConfig base_config;
};

struct SweepRow {
    std::string parameter;
    double value = 0.0;
    double mean_w = 0.0;
    double mean_cs = 0.0;
    double mean_ps = 0.0;
    int n_seeds = 0;
};

// Applies a named sweep parameter; throws std::invalid_argument for names
// outside the sweepable set.
void apply_sweep_parameter(SimConfig& config, const std::string& name, double value);

// One run per (value, seed), value-major order; per-value aggregates are
// means over seeds of final-window means of W/CS/PS. n_threads <= 1 runs
// sequentially; results are identical either way.
std::vector<SweepRow> sensitivity_sweep(const SweepSpec& spec, int n_threads = 1);

struct GridSpec {
    std::vector<double> fees;
    std::vector<double> biases;
    std::vector<double> subsidies;
    std::vector<std::uint64_t> seeds;
    SimConfig base_config;
    long horizon_split = 0;  // 0 -> steps / 2
};

struct GridRow {
    double fee = 0.0;
    double bias = 0.0;
    double subsidy = 0.0;
    double longterm_w = 0.0;
    double longterm_cs = 0.0;
    double longterm_ps = 0.0;
    int rank = 0;
};

// Full factorial over (fee, bias, subsidy) x seeds; long-term aggregate is
// the mean over ticks >= horizon_split, averaged over seeds. Rows ranked by
// descending long-term W, ties broken by ascending (fee, bias, subsidy).
std::vector<GridRow> policy_grid(const GridSpec& spec, int n_threads = 1);

// CSV emitters for the three documented schemas.
void write_history_csv(const std::string& path, const std::vector<MetricsRow>& history);
void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows);
void write_grid_csv(const std::string& path, const std::vector<GridRow>& rows);
std::vector<MetricsRow> read_history_csv(const std::string& path);

}  // namespace marketsim
