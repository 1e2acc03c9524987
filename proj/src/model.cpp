#include "marketsim/model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marketsim {

double supply_human(double price, double quality, const ModelParams& params) {
    return std::max(0.0, params.alpha_h + params.beta_h * price - params.phi_h * quality);
}

double supply_human_price_only(double price, const ModelParams& params) {
    return params.alpha_h + params.beta_h * price;
}

double supply_ai(double price, double quality, const ModelParams& params) {
    if (price < params.c_ai) return 0.0;
    const double raw = params.alpha_ai + params.beta_ai * price + params.phi_ai * quality;
    return std::min(params.s_max, std::max(0.0, raw));
}

double demand(double price, double quality, const ModelParams& params) {
    return std::max(0.0, params.gamma - params.eta * price + params.kappa * quality);
}

double utility(double quality, const ModelParams& params) {
    if (quality <= 0.0) throw std::domain_error("utility requires quality > 0");
    return params.theta_u * std::log(quality) - 0.5 * params.delta_u * quality * quality;
}

double marginal_utility(double quality, const ModelParams& params) {
    if (quality <= 0.0) throw std::domain_error("marginal_utility requires quality > 0");
    return params.theta_u / quality - params.delta_u * quality;
}

double optimal_quality(const ModelParams& params) {
    return std::sqrt(params.theta_u / params.delta_u);
}

double traffic_share(double quality, const ModelParams& params) {
    if (quality == 0.0) return 0.0;
    return params.traffic_scale * std::pow(quality, params.traffic_exponent);
}

double pareto_density(double traffic, const ModelParams& params) {
    if (traffic < params.pareto_tmin) {
        throw std::domain_error("pareto_density requires traffic >= pareto_tmin");
    }
    const double a = params.pareto_alpha;
    return a * std::pow(params.pareto_tmin, a) / std::pow(traffic, a + 1.0);
}

double human_cost(double quality, const ModelParams& params) {
    return params.cost_fixed + params.cost_quad * quality * quality;
}

}  // namespace marketsim
