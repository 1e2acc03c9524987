// Command-line front end: analytic equilibrium and welfare reports, single
// simulation runs, sensitivity sweeps, and the policy grid.
//
// Exit codes: 0 success, 1 I/O errors, 2 config/validation errors,
// 3 run failures.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "marketsim/config_io.hpp"
#include "marketsim/csv.hpp"
#include "marketsim/equilibrium.hpp"
#include "marketsim/experiments.hpp"
#include "marketsim/model.hpp"
#include "marketsim/svg.hpp"

namespace {

using namespace marketsim;
using nlohmann::json;

constexpr int kExitIo = 1;
constexpr int kExitConfig = 2;
constexpr int kExitRun = 3;

// Default Theorem-6 classification thresholds: "high quality" means at or
// above the human-only optimum for balanced preferences, "low overload"
// means delta_u at or below 1.
constexpr double kQualityThreshold = 1.0;
constexpr double kOverloadThreshold = 1.0;

struct CommonOptions {
    std::string config_path;
    std::string out_dir = ".";
    std::optional<std::uint64_t> seed;
    bool as_json = false;
    int parallel = 0;
};

int resolve_threads(int requested) {
    if (requested > 0) return requested;
    if (const char* env = std::getenv("PLATFORM_SIM_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

ConfigFile load_or_default(const CommonOptions& opts) {
    if (opts.config_path.empty()) return ConfigFile{};
    if (!std::filesystem::exists(opts.config_path)) {
        std::cerr << "config file not found: " << opts.config_path << "\n";
        std::exit(kExitIo);
    }
    try {
        ConfigFile config = load_config(opts.config_path);
        if (opts.seed) config.sim_config.seed = *opts.seed;
        return config;
    } catch (const ConfigError& e) {
        std::cerr << e.what() << "\n";
        std::exit(kExitConfig);
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        std::exit(kExitIo);
    }
}

json equilibrium_json(const EquilibriumSolution& eq, const ModelParams& mp) {
    json j;
    j["p_star"] = eq.p_star;
    j["q_star"] = eq.q_star;
    j["coeff_a"] = eq.coeff_a;
    j["coeff_b"] = eq.coeff_b;
    j["coeff_c"] = eq.coeff_c;
    j["feasible"] = eq.feasible;
    const WelfareReport report =
        make_welfare_report(eq, mp, kQualityThreshold, kOverloadThreshold);
    j["cs_representative"] = report.cs;
    j["cs_integral"] = eq.feasible && mp.p_max > eq.p_star
                           ? consumer_surplus_integral(eq, mp)
                           : 0.0;
    j["ps_human"] = report.ps_human;
    j["ps_ai"] = report.ps_ai;
    j["welfare"] = report.welfare;
    j["case"] = to_string(report.case_label);
    return j;
}

int cmd_analyze(const CommonOptions& opts) {
    const ConfigFile config = load_or_default(opts);
    const ModelParams& mp = config.sim_config.model_params;

    const EquilibriumSolution post = solve_equilibrium(mp);
    const EquilibriumSolution pre = pre_ai_equilibrium(mp);
    const WelfareReport post_report =
        make_welfare_report(post, mp, kQualityThreshold, kOverloadThreshold);
    ModelParams human_only = mp;
    human_only.alpha_ai = human_only.beta_ai = human_only.phi_ai = 0.0;
    const WelfareReport pre_report =
        make_welfare_report(pre, human_only, kQualityThreshold, kOverloadThreshold);
    const WelfareDelta delta = welfare_delta(pre_report, post_report);

    if (opts.as_json) {
        json j;
        j["with_ai"] = equilibrium_json(post, mp);
        j["pre_ai"] = equilibrium_json(pre, human_only);
        j["delta"] = {{"delta_cs", delta.delta_cs},
                      {"delta_ps", delta.delta_ps},
                      {"delta_w", delta.delta_w}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    auto line = [](const std::string& name, double with_ai, double pre_ai) {
        std::cout << "  " << name << ": " << format_double(with_ai)
                  << "   (pre-AI " << format_double(pre_ai)
                  << ", delta " << format_double(with_ai - pre_ai) << ")\n";
    };
    std::cout << "equilibrium (with AI vs human-only)\n";
    line("p*", post.p_star, pre.p_star);
    line("q*", post.q_star, pre.q_star);
    line("A", post.coeff_a, pre.coeff_a);
    line("B", post.coeff_b, pre.coeff_b);
    line("C", post.coeff_c, pre.coeff_c);
    std::cout << "  feasible: " << (post.feasible ? "true" : "false") << " (pre-AI "
              << (pre.feasible ? "true" : "false") << ")\n";
    std::cout << "welfare\n";
    line("CS (representative)", post_report.cs, pre_report.cs);
    std::cout << "  CS (demand integral): "
              << format_double(post.feasible && mp.p_max > post.p_star
                                   ? consumer_surplus_integral(post, mp)
                                   : 0.0)
              << "\n";
    line("PS_H", post_report.ps_human, pre_report.ps_human);
    line("PS_AI", post_report.ps_ai, pre_report.ps_ai);
    line("W", post_report.welfare, pre_report.welfare);
    std::cout << "  delta: dCS=" << format_double(delta.delta_cs)
              << " dPS=" << format_double(delta.delta_ps)
              << " dW=" << format_double(delta.delta_w) << "\n";
    std::cout << "  case: " << to_string(post_report.case_label) << "\n";
    return 0;
}

void ensure_out_dir(const std::string& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        std::cerr << "cannot create output directory " << dir << ": " << ec.message()
                  << "\n";
        std::exit(kExitIo);
    }
}

void emit_history_panels(const std::vector<MetricsRow>& history, const std::string& dir,
                         long introduce_ai_step) {
    std::vector<double> ticks;
    ticks.reserve(history.size());
    for (const MetricsRow& r : history) ticks.push_back(static_cast<double>(r.tick));
    auto column = [&](auto getter) {
        std::vector<double> v;
        v.reserve(history.size());
        for (const MetricsRow& r : history) v.push_back(static_cast<double>(getter(r)));
        return v;
    };
    const double marker = static_cast<double>(introduce_ai_step);
    auto one = [&](const std::string& name, const std::string& title, auto getter) {
        emit_plot({{name, ticks, column(getter)}}, title, dir + "/" + name + ".svg",
                  marker);
    };
    one("total_content", "Total content", [](const MetricsRow& r) { return r.total_content; });
    one("avg_quality", "Average content quality", [](const MetricsRow& r) { return r.avg_quality; });
    one("avg_price", "Average content price", [](const MetricsRow& r) { return r.avg_price; });
    one("avg_consumer_utility", "Average consumer utility",
        [](const MetricsRow& r) { return r.avg_consumer_utility; });
    one("total_revenue", "Gross revenue per tick", [](const MetricsRow& r) { return r.total_revenue; });
    one("gini", "Gini of cumulative creator revenue", [](const MetricsRow& r) { return r.gini; });
    emit_plot({{"human", ticks, column([](const MetricsRow& r) { return r.n_human_active; })},
               {"ai", ticks, column([](const MetricsRow& r) { return r.n_ai_active; })}},
              "Active creators", dir + "/creators.svg", marker);
    emit_plot({{"CS", ticks, column([](const MetricsRow& r) { return r.consumer_surplus; })},
               {"PS", ticks, column([](const MetricsRow& r) { return r.producer_surplus; })},
               {"W", ticks, column([](const MetricsRow& r) { return r.social_welfare; })}},
              "Cumulative welfare", dir + "/welfare.svg", marker);
}

int cmd_run(const CommonOptions& opts) {
    const ConfigFile config = load_or_default(opts);
    ensure_out_dir(opts.out_dir);
    try {
        const BaselineResult result = run_baseline(config.sim_config);
        write_history_csv(opts.out_dir + "/history.csv", result.history);
        emit_history_panels(result.history, opts.out_dir,
                            config.sim_config.introduce_ai_step);
        if (opts.as_json && result.shock) {
            json j;
            const auto& names = MetricsRow::column_names();
            for (std::size_t c = 0; c < names.size(); ++c) {
                j["pre_means"][names[c]] = result.shock->pre_means[c];
                j["post_means"][names[c]] = result.shock->post_means[c];
                j["deltas"][names[c]] = result.shock->deltas[c];
            }
            j["window"] = result.shock_window;
            std::cout << j.dump(2) << "\n";
        }
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return kExitIo;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitRun;
    }
    return 0;
}

int cmd_sweep(const CommonOptions& opts) {
    const ConfigFile config = load_or_default(opts);
    if (!config.sweep) {
        std::cerr << "config has no sweep section\n";
        return kExitConfig;
    }
    ensure_out_dir(opts.out_dir);
    SweepSpec spec = *config.sweep;
    if (opts.seed) spec.base_config.seed = *opts.seed;
    try {
        const auto rows = sensitivity_sweep(spec, resolve_threads(opts.parallel));
        write_sweep_csv(opts.out_dir + "/sweep.csv", rows);
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return std::string(e.what()).find("sweep run failed") != std::string::npos
                   ? kExitRun
                   : kExitIo;
    }
    return 0;
}

int cmd_grid(const CommonOptions& opts) {
    const ConfigFile config = load_or_default(opts);
    if (!config.grid) {
        std::cerr << "config has no grid section\n";
        return kExitConfig;
    }
    ensure_out_dir(opts.out_dir);
    GridSpec spec = *config.grid;
    if (opts.seed) spec.base_config.seed = *opts.seed;
    try {
        const auto rows = policy_grid(spec, resolve_threads(opts.parallel));
        write_grid_csv(opts.out_dir + "/grid.csv", rows);
    } catch (const std::runtime_error& e) {
        std::cerr << e.what() << "\n";
        return std::string(e.what()).find("grid run failed") != std::string::npos
                   ? kExitRun
                   : kExitIo;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-sided content platform market simulator"};
    app.require_subcommand(1);

    CommonOptions opts;
    auto add_common = [&](CLI::App* cmd, bool with_out) {
        cmd->add_option("--config", opts.config_path, "JSON config file");
        if (with_out) cmd->add_option("--out", opts.out_dir, "output directory");
        cmd->add_option("--seed", opts.seed, "override RNG seed");
        cmd->add_flag("--json", opts.as_json, "machine-readable output");
        cmd->add_option("--parallel", opts.parallel,
                        "worker threads (default: PLATFORM_SIM_THREADS or hardware)");
    };
    CLI::App* analyze = app.add_subcommand("analyze", "equilibrium and welfare report");
    CLI::App* run = app.add_subcommand("run", "single simulation run");
    CLI::App* sweep = app.add_subcommand("sweep", "sensitivity sweep");
    CLI::App* grid = app.add_subcommand("grid", "policy combination grid");
    add_common(analyze, false);
    add_common(run, true);
    add_common(sweep, true);
    add_common(grid, true);

    CLI11_PARSE(app, argc, argv);

    if (analyze->parsed()) return cmd_analyze(opts);
    if (run->parsed()) return cmd_run(opts);
    if (sweep->parsed()) return cmd_sweep(opts);
    if (grid->parsed()) return cmd_grid(opts);
    return 0;
}
