#pragma once

#include <string>

namespace marketsim {

// Parameter bundle for the analytic market model: linear supply/demand,
// log-quadratic consumer utility, power-law traffic and its Pareto tail,
// and the quadratic human cost curve.
//
// The utility pair (theta_u, delta_u) and the traffic pair
// (traffic_scale, traffic_exponent) are distinct parameters even though
// the underlying model reuses symbols for both.
struct ModelParams {
    double alpha_h = 2.0;   // baseline human supply
    double beta_h = 1.0;    // human supply price sensitivity, > 0
    double phi_h = 1.0;     // human supply quality sensitivity
    double alpha_ai = 2.0;  // baseline AI supply
    double beta_ai = 1.0;   // AI supply price sensitivity
    double phi_ai = 2.0;    // AI supply quality sensitivity
    double c_ai = 0.05;     // AI marginal cost, near zero
    double s_max = 100.0;   // finite cap standing in for unlimited AI supply
    double gamma = 10.0;    // base demand, > 0
    double eta = 1.0;       // demand price elasticity, > 0
    double kappa = 1.0;     // demand quality elasticity
    double theta_u = 3.0;   // consumer quality preference, > 0
    double delta_u = 0.08;  // information-overload coefficient, > 0
    double traffic_scale = 1.0;
    double traffic_exponent = 2.0;
    double pareto_alpha = 2.0;
    double pareto_tmin = 1.0;
    double p_max = 20.0;    // upper bound of the CS integral
    double p_min = 1.2;     // lower bound of the PS integral; also the ABM price floor
    double cost_fixed = 1.2;
    double cost_quad = 0.35; // C_H(q) = cost_fixed + cost_quad * q^2

    // Throws std::invalid_argument naming the offending field when any
    // sign constraint or ordering constraint is violated.
    void validate() const;
};

}  // namespace marketsim
