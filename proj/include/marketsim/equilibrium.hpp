#pragma once

#include <string>

#include "marketsim/params.hpp"

namespace marketsim {

// Market-clearing solution of A p* + B q* = C with q* pinned by the
// consumer's utility maximum.
struct EquilibriumSolution {
    double p_star = 0.0;
    double q_star = 0.0;
    double coeff_a = 0.0;  // (beta_h + beta_ai) + eta
    double coeff_b = 0.0;  // (-phi_h + phi_ai) - kappa
    double coeff_c = 0.0;  // gamma - (alpha_h + alpha_ai)
    bool feasible = false; // p_star >= 0
};

enum class WelfareCase { WelfareIncreasing, WelfareDecreasing, Ambiguous };

std::string to_string(WelfareCase c);

struct WelfareReport {
    double cs = 0.0;
    double ps_human = 0.0;
    double ps_ai = 0.0;
    double welfare = 0.0;  // always cs + ps_human + ps_ai
    WelfareCase case_label = WelfareCase::Ambiguous;
};

struct WelfareDelta {
    double delta_cs = 0.0;
    double delta_ps = 0.0;
    double delta_w = 0.0;
};

EquilibriumSolution solve_equilibrium(const ModelParams& params);

// Equilibrium of the human-only market (AI supply terms zeroed).
EquilibriumSolution pre_ai_equilibrium(const ModelParams& params);

// Area under the demand curve from p_star to p_max, truncated at the
// demand zero crossing. Closed form; throws std::domain_error when
// p_max <= p_star.
double consumer_surplus_integral(const EquilibriumSolution& eq, const ModelParams& params);

// Representative-consumer form U(q*) - p*; this is the form the welfare
// deltas are built on.
double consumer_surplus_representative(const EquilibriumSolution& eq, const ModelParams& params);

// (p* - C_H(q*)) * S_H(p*, q*); may be negative.
double producer_surplus_human(const EquilibriumSolution& eq, const ModelParams& params);

// p* * S_AI(p*, q*); AI marginal cost treated as zero.
double producer_surplus_ai(const EquilibriumSolution& eq, const ModelParams& params);

WelfareCase classify_welfare_case(const ModelParams& params, double quality_threshold,
                                  double overload_threshold);

WelfareReport make_welfare_report(const EquilibriumSolution& eq, const ModelParams& params,
                                  double quality_threshold, double overload_threshold);

WelfareDelta welfare_delta(const WelfareReport& pre_ai, const WelfareReport& post_ai);

}  // namespace marketsim
