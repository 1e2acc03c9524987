#pragma once

#include "marketsim/params.hpp"

namespace marketsim {

// Linear supply curves, clamped at zero off-equilibrium.
double supply_human(double price, double quality, const ModelParams& params);
double supply_human_price_only(double price, const ModelParams& params);

// AI supply: zero below the activation cost c_ai, capped at s_max above it.
double supply_ai(double price, double quality, const ModelParams& params);

double demand(double price, double quality, const ModelParams& params);

// U(q) = theta_u ln(q) - (delta_u/2) q^2. Throws std::domain_error for q <= 0.
double utility(double quality, const ModelParams& params);

// dU/dq = theta_u/q - delta_u q. Throws std::domain_error for q <= 0.
double marginal_utility(double quality, const ModelParams& params);

// Utility-maximizing quality sqrt(theta_u / delta_u).
double optimal_quality(const ModelParams& params);

// T(q) = traffic_scale * q^traffic_exponent.
double traffic_share(double quality, const ModelParams& params);

// Pareto density of the traffic tail; throws std::domain_error below pareto_tmin.
double pareto_density(double traffic, const ModelParams& params);

// C_H(q) = cost_fixed + cost_quad * q^2.
double human_cost(double quality, const ModelParams& params);

}  // namespace marketsim
