#include "marketsim/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "marketsim/csv.hpp"

namespace marketsim {

namespace {

struct WindowMeans {
    double w = 0.0;
    double cs = 0.0;
    double ps = 0.0;
};

// Welfare accrued from `from_tick` to the end of the run. The history columns
// are cumulative, so the window flow is endpoint minus the level just before
// the window opens.
WindowMeans window_means(const std::vector<MetricsRow>& history, long from_tick) {
    const MetricsRow* before = nullptr;
    const MetricsRow* last = nullptr;
    for (const MetricsRow& row : history) {
        if (row.tick < from_tick) before = &row;
        last = &row;
    }
    if (last == nullptr || last->tick < from_tick) {
        throw std::domain_error("window_means: empty aggregation window");
    }
    WindowMeans m;
    m.w = last->social_welfare - (before ? before->social_welfare : 0.0);
    m.cs = last->consumer_surplus - (before ? before->consumer_surplus : 0.0);
    m.ps = last->producer_surplus - (before ? before->producer_surplus : 0.0);
    return m;
}

// Executes jobs 0..n-1 on up to n_threads workers; each job writes only its
// own output slot, so the merged result is order-independent.
void run_jobs(std::size_t n_jobs, int n_threads, const std::function<void(std::size_t)>& job) {
    if (n_threads <= 1 || n_jobs <= 1) {
        for (std::size_t i = 0; i < n_jobs; ++i) job(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n_jobs) return;
            job(i);
        }
    };
    std::vector<std::thread> pool;
    const std::size_t width =
        std::min<std::size_t>(static_cast<std::size_t>(n_threads), n_jobs);
    pool.reserve(width);
    for (std::size_t t = 0; t < width; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
}

}  // namespace

long final_window_start(long steps) { return steps - std::max<long>(1, steps / 5); }

BaselineResult run_baseline(const SimConfig& config) {
    const SimState state = run_sim(config);
    BaselineResult result;
    result.history = state.metrics_history;
    result.ledger = state.ledger;
    const long window =
        std::min({config.introduce_ai_step, config.steps - config.introduce_ai_step,
                  static_cast<long>(50)});
    if (window > 0) {
        result.shock = welfare_shock_summary(result.history, config.introduce_ai_step, window);
        result.shock_window = window;
    }
    return result;
}

const std::vector<std::string> kSweepableParameters = {
    "platform_fee",  "recommend_bias",     "n_ai_creators",     "subsidy",
    "introduce_ai_step", "price_sensitivity", "overload_threshold"};

void apply_sweep_parameter(SimConfig& config, const std::string& name, double value) {
    if (name == "platform_fee") config.platform_fee = value;
    else if (name == "recommend_bias") config.recommend_bias = value;
    else if (name == "n_ai_creators") config.n_ai_creators = static_cast<int>(std::lround(value));
    else if (name == "subsidy") config.subsidy = value;
    else if (name == "introduce_ai_step") config.introduce_ai_step = std::lround(value);
    else if (name == "price_sensitivity") config.price_sensitivity = value;
    else if (name == "overload_threshold") config.overload_threshold = value;
    else throw std::invalid_argument("not a sweepable parameter: " + name);
}

std::vector<SweepRow> sensitivity_sweep(const SweepSpec& spec, int n_threads) {
    if (spec.values.empty()) throw std::invalid_argument("sweep: values must be nonempty");
    if (spec.seeds.empty()) throw std::invalid_argument("sweep: seeds must be nonempty");

    const std::size_t n_seeds = spec.seeds.size();
    const std::size_t n_jobs = spec.values.size() * n_seeds;
    std::vector<WindowMeans> cells(n_jobs);
    std::vector<std::string> failures(n_jobs);

    run_jobs(n_jobs, n_threads, [&](std::size_t i) {
        const std::size_t vi = i / n_seeds;
        const std::size_t si = i % n_seeds;
        SimConfig config = spec.base_config;
        apply_sweep_parameter(config, spec.parameter_name, spec.values[vi]);
        config.seed = spec.seeds[si];
        try {
            const SimState state = run_sim(config);
            cells[i] = window_means(state.metrics_history, final_window_start(config.steps));
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n_jobs; ++i) {
        if (!failures[i].empty()) {
            throw std::runtime_error(
                "sweep run failed at value=" + format_double(spec.values[i / n_seeds]) +
                " seed=" + std::to_string(spec.seeds[i % n_seeds]) + ": " + failures[i]);
        }
    }

    std::vector<SweepRow> rows;
    rows.reserve(spec.values.size());
    for (std::size_t vi = 0; vi < spec.values.size(); ++vi) {
        SweepRow row;
        row.parameter = spec.parameter_name;
        row.value = spec.values[vi];
        row.n_seeds = static_cast<int>(n_seeds);
        for (std::size_t si = 0; si < n_seeds; ++si) {
            const WindowMeans& m = cells[vi * n_seeds + si];
            row.mean_w += m.w;
            row.mean_cs += m.cs;
            row.mean_ps += m.ps;
        }
        row.mean_w /= static_cast<double>(n_seeds);
        row.mean_cs /= static_cast<double>(n_seeds);
        row.mean_ps /= static_cast<double>(n_seeds);
        rows.push_back(row);
    }
    return rows;
}

std::vector<GridRow> policy_grid(const GridSpec& spec, int n_threads) {
    if (spec.fees.empty() || spec.biases.empty() || spec.subsidies.empty()) {
        throw std::invalid_argument("grid: fee/bias/subsidy lists must be nonempty");
    }
    if (spec.seeds.empty()) throw std::invalid_argument("grid: seeds must be nonempty");
    const long horizon =
        spec.horizon_split > 0 ? spec.horizon_split : spec.base_config.steps / 2;

    struct Cell {
        double fee, bias, subsidy;
    };
    std::vector<Cell> cells;
    for (double fee : spec.fees)
        for (double bias : spec.biases)
            for (double subsidy : spec.subsidies) cells.push_back({fee, bias, subsidy});

    const std::size_t n_seeds = spec.seeds.size();
    const std::size_t n_jobs = cells.size() * n_seeds;
    std::vector<WindowMeans> results(n_jobs);
    std::vector<std::string> failures(n_jobs);

    run_jobs(n_jobs, n_threads, [&](std::size_t i) {
        const Cell& cell = cells[i / n_seeds];
        SimConfig config = spec.base_config;
        config.platform_fee = cell.fee;
        config.recommend_bias = cell.bias;
        config.subsidy = cell.subsidy;
        config.seed = spec.seeds[i % n_seeds];
        try {
            const SimState state = run_sim(config);
            results[i] = window_means(state.metrics_history, horizon);
        } catch (const std::exception& e) {
            failures[i] = e.what();
        }
    });
    for (std::size_t i = 0; i < n_jobs; ++i) {
        if (!failures[i].empty()) {
            const Cell& cell = cells[i / n_seeds];
            throw std::runtime_error("grid run failed at fee=" + format_double(cell.fee) +
                                     " bias=" + format_double(cell.bias) +
                                     " subsidy=" + format_double(cell.subsidy) +
                                     " seed=" + std::to_string(spec.seeds[i % n_seeds]) +
                                     ": " + failures[i]);
        }
    }

    std::vector<GridRow> rows;
    rows.reserve(cells.size());
    for (std::size_t ci = 0; ci < cells.size(); ++ci) {
        GridRow row;
        row.fee = cells[ci].fee;
        row.bias = cells[ci].bias;
        row.subsidy = cells[ci].subsidy;
        for (std::size_t si = 0; si < n_seeds; ++si) {
            const WindowMeans& m = results[ci * n_seeds + si];
            row.longterm_w += m.w;
            row.longterm_cs += m.cs;
            row.longterm_ps += m.ps;
        }
        row.longterm_w /= static_cast<double>(n_seeds);
        row.longterm_cs /= static_cast<double>(n_seeds);
        row.longterm_ps /= static_cast<double>(n_seeds);
        rows.push_back(row);
    }
    std::sort(rows.begin(), rows.end(), [](const GridRow& a, const GridRow& b) {
        if (a.longterm_w != b.longterm_w) return a.longterm_w > b.longterm_w;
        return std::tie(a.fee, a.bias, a.subsidy) < std::tie(b.fee, b.bias, b.subsidy);
    });
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = static_cast<int>(i + 1);
    return rows;
}

void write_history_csv(const std::string& path, const std::vector<MetricsRow>& history) {
    std::vector<std::string> header(MetricsRow::column_names().begin(),
                                    MetricsRow::column_names().end());
    std::vector<std::vector<std::string>> rows;
    rows.reserve(history.size());
    for (const MetricsRow& r : history) {
        std::vector<std::string> row;
        row.reserve(MetricsRow::kColumns);
        row.push_back(std::to_string(r.tick));
        row.push_back(std::to_string(r.total_content));
        row.push_back(format_double(r.avg_quality));
        row.push_back(format_double(r.avg_price));
        row.push_back(format_double(r.avg_consumer_utility));
        row.push_back(std::to_string(r.n_human_active));
        row.push_back(std::to_string(r.n_ai_active));
        row.push_back(format_double(r.total_revenue));
        row.push_back(format_double(r.gini));
        row.push_back(format_double(r.consumer_surplus));
        row.push_back(format_double(r.producer_surplus));
        row.push_back(format_double(r.social_welfare));
        rows.push_back(std::move(row));
    }
    write_csv(path, header, rows);
}

std::vector<MetricsRow> read_history_csv(const std::string& path) {
    const auto raw = read_csv(path);
    if (raw.empty()) throw std::runtime_error("read_history_csv: empty file " + path);
    std::vector<MetricsRow> history;
    history.reserve(raw.size() - 1);
    for (std::size_t i = 1; i < raw.size(); ++i) {
        const auto& cells = raw[i];
        if (cells.size() != MetricsRow::kColumns) {
            throw std::runtime_error("read_history_csv: bad row in " + path);
        }
        MetricsRow r;
        r.tick = std::stol(cells[0]);
        r.total_content = std::stol(cells[1]);
        r.avg_quality = std::stod(cells[2]);
        r.avg_price = std::stod(cells[3]);
        r.avg_consumer_utility = std::stod(cells[4]);
        r.n_human_active = std::stol(cells[5]);
        r.n_ai_active = std::stol(cells[6]);
        r.total_revenue = std::stod(cells[7]);
        r.gini = std::stod(cells[8]);
        r.consumer_surplus = std::stod(cells[9]);
        r.producer_surplus = std::stod(cells[10]);
        r.social_welfare = std::stod(cells[11]);
        history.push_back(r);
    }
    return history;
}

void write_sweep_csv(const std::string& path, const std::vector<SweepRow>& rows) {
    std::vector<std::vector<std::string>> out;
    out.reserve(rows.size());
    for (const SweepRow& r : rows) {
        out.push_back({r.parameter, format_double(r.value), format_double(r.mean_w),
                       format_double(r.mean_cs), format_double(r.mean_ps),
                       std::to_string(r.n_seeds)});
    }
    write_csv(path, {"parameter", "value", "mean_w", "mean_cs", "mean_ps", "n_seeds"}, out);
}

void write_grid_csv(const std::string& path, const std::vector<GridRow>& rows) {
    std::vector<std::vector<std::string>> out;
    out.reserve(rows.size());
    for (const GridRow& r : rows) {
        out.push_back({format_double(r.fee), format_double(r.bias),
                       format_double(r.subsidy), format_double(r.longterm_w),
                       format_double(r.longterm_cs), format_double(r.longterm_ps),
                       std::to_string(r.rank)});
    }
    write_csv(path, {"fee", "bias", "subsidy", "longterm_w", "longterm_cs",
                     "longterm_ps", "rank"},
              out);
}

}  // namespace marketsim
