#include "marketsim/config_io.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

namespace marketsim {

namespace {

using nlohmann::json;

// Applies known keys through `fields`, rejecting anything unrecognized.
class SectionReader {
   public:
    SectionReader(const json& obj, std::string section) : obj_(obj), section_(std::move(section)) {
        if (!obj.is_object()) throw ConfigError("config section " + section_ + " must be an object");
    }
    ~SectionReader() = default;

    void number(const char* key, double& out) {
        take(key, [&](const json& v) {
            if (!v.is_number()) throw type_error(key, "a number");
            out = v.get<double>();
        });
    }
    void integer(const char* key, int& out) {
        take(key, [&](const json& v) {
            if (!v.is_number_integer()) throw type_error(key, "an integer");
            out = v.get<int>();
        });
    }
    void integer(const char* key, long& out) {
        take(key, [&](const json& v) {
            if (!v.is_number_integer()) throw type_error(key, "an integer");
            out = v.get<long>();
        });
    }
    void unsigned64(const char* key, std::uint64_t& out) {
        take(key, [&](const json& v) {
            if (!v.is_number_unsigned() && !v.is_number_integer()) throw type_error(key, "an integer");
            out = v.get<std::uint64_t>();
        });
    }
    void text(const char* key, std::string& out) {
        take(key, [&](const json& v) {
            if (!v.is_string()) throw type_error(key, "a string");
            out = v.get<std::string>();
        });
    }
    void number_list(const char* key, std::vector<double>& out) {
        take(key, [&](const json& v) {
            if (!v.is_array()) throw type_error(key, "an array of numbers");
            out.clear();
            for (const json& e : v) {
                if (!e.is_number()) throw type_error(key, "an array of numbers");
                out.push_back(e.get<double>());
            }
        });
    }
    void seed_list(const char* key, std::vector<std::uint64_t>& out) {
        take(key, [&](const json& v) {
            if (!v.is_array()) throw type_error(key, "an array of integers");
            out.clear();
            for (const json& e : v) {
                if (!e.is_number_integer() && !e.is_number_unsigned())
                    throw type_error(key, "an array of integers");
                out.push_back(e.get<std::uint64_t>());
            }
        });
    }
    const json* subsection(const char* key) {
        const json* found = nullptr;
        take(key, [&](const json& v) { found = &v; });
        return found;
    }

    void finish() const {
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!seen_.contains(it.key())) {
                throw ConfigError("unknown key " + section_ + "." + it.key());
            }
        }
    }

   private:
    ConfigError type_error(const char* key, const char* expected) const {
        return ConfigError("config key " + section_ + "." + key + " must be " + expected);
    }
    template <class Fn>
    void take(const char* key, Fn&& apply) {
        seen_.insert(key);
        const auto it = obj_.find(key);
        if (it != obj_.end()) apply(*it);
    }

    const json& obj_;
    std::string section_;
    std::set<std::string> seen_;
};

void read_model_params(const json& obj, ModelParams& mp) {
    SectionReader r(obj, "model_params");
    r.number("alpha_h", mp.alpha_h);
    r.number("beta_h", mp.beta_h);
    r.number("phi_h", mp.phi_h);
    r.number("alpha_ai", mp.alpha_ai);
    r.number("beta_ai", mp.beta_ai);
    r.number("phi_ai", mp.phi_ai);
    r.number("c_ai", mp.c_ai);
    r.number("s_max", mp.s_max);
    r.number("gamma", mp.gamma);
    r.number("eta", mp.eta);
    r.number("kappa", mp.kappa);
    r.number("theta_u", mp.theta_u);
    r.number("delta_u", mp.delta_u);
    r.number("traffic_scale", mp.traffic_scale);
    r.number("traffic_exponent", mp.traffic_exponent);
    r.number("pareto_alpha", mp.pareto_alpha);
    r.number("pareto_tmin", mp.pareto_tmin);
    r.number("p_max", mp.p_max);
    r.number("p_min", mp.p_min);
    r.number("cost_fixed", mp.cost_fixed);
    r.number("cost_quad", mp.cost_quad);
    r.finish();
}

void read_sim_config(const json& obj, SimConfig& sc) {
    SectionReader r(obj, "sim_config");
    r.integer("n_human_creators", sc.n_human_creators);
    r.integer("n_ai_creators", sc.n_ai_creators);
    r.integer("n_consumers", sc.n_consumers);
    r.integer("steps", sc.steps);
    r.integer("introduce_ai_step", sc.introduce_ai_step);
    r.number("platform_fee", sc.platform_fee);
    r.number("recommend_bias", sc.recommend_bias);
    r.number("subsidy", sc.subsidy);
    r.number("price_sensitivity", sc.price_sensitivity);
    r.number("overload_threshold", sc.overload_threshold);
    r.integer("slate_size", sc.slate_size);
    r.number("learning_rate", sc.learning_rate);
    r.integer("adjust_block", sc.adjust_block);
    r.integer("exit_window", sc.exit_window);
    r.number("exit_threshold", sc.exit_threshold);
    r.number("ai_quality_mean", sc.ai_quality_mean);
    r.number("ai_quality_growth", sc.ai_quality_growth);
    r.number("heterogeneity", sc.heterogeneity);
    r.unsigned64("seed", sc.seed);
    r.finish();
}

SweepSpec read_sweep(const json& obj, const SimConfig& base) {
    SweepSpec spec;
    spec.base_config = base;
    spec.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    SectionReader r(obj, "sweep");
    r.text("parameter", spec.parameter_name);
    r.number_list("values", spec.values);
    r.seed_list("seeds", spec.seeds);
    r.finish();
    if (spec.parameter_name.empty()) throw ConfigError("sweep.parameter is required");
    if (std::find(kSweepableParameters.begin(), kSweepableParameters.end(),
                  spec.parameter_name) == kSweepableParameters.end()) {
        throw ConfigError("sweep.parameter is not sweepable: " + spec.parameter_name);
    }
    if (spec.values.empty()) throw ConfigError("sweep.values must be nonempty");
    if (spec.seeds.empty()) throw ConfigError("sweep.seeds must be nonempty");
    return spec;
}

GridSpec read_grid(const json& obj, const SimConfig& base) {
    GridSpec spec;
    spec.base_config = base;
    spec.seeds = {1, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    SectionReader r(obj, "grid");
    r.number_list("fees", spec.fees);
    r.number_list("biases", spec.biases);
    r.number_list("subsidies", spec.subsidies);
    r.seed_list("seeds", spec.seeds);
    r.integer("horizon_split", spec.horizon_split);
    r.finish();
    if (spec.fees.empty() || spec.biases.empty() || spec.subsidies.empty()) {
        throw ConfigError("grid.fees/biases/subsidies must be nonempty");
    }
    if (spec.seeds.empty()) throw ConfigError("grid.seeds must be nonempty");
    return spec;
}

}  // namespace

ConfigFile parse_config(const json& doc) {
    ConfigFile config;
    SectionReader top(doc, "(top level)");
    if (const json* mp = top.subsection("model_params")) {
        read_model_params(*mp, config.sim_config.model_params);
    }
    if (const json* sc = top.subsection("sim_config")) {
        read_sim_config(*sc, config.sim_config);
    }
    const json* sweep = top.subsection("sweep");
    const json* grid = top.subsection("grid");
    top.finish();
    // Validate fully before building derived specs.
    try {
        config.sim_config.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (sweep) config.sweep = read_sweep(*sweep, config.sim_config);
    if (grid) config.grid = read_grid(*grid, config.sim_config);
    return config;
}

ConfigFile load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return parse_config(doc);
}

}  // namespace marketsim
