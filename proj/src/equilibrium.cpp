#include "marketsim/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "marketsim/model.hpp"

namespace marketsim {

std::string to_string(WelfareCase c) {
    switch (c) {
        case WelfareCase::WelfareIncreasing: return "WelfareIncreasing";
        case WelfareCase::WelfareDecreasing: return "WelfareDecreasing";
        case WelfareCase::Ambiguous: return "Ambiguous";
    }
    return "Ambiguous";
}

EquilibriumSolution solve_equilibrium(const ModelParams& params) {
    EquilibriumSolution eq;
    eq.coeff_a = (params.beta_h + params.beta_ai) + params.eta;
    eq.coeff_b = (-params.phi_h + params.phi_ai) - params.kappa;
    eq.coeff_c = params.gamma - (params.alpha_h + params.alpha_ai);
    eq.q_star = optimal_quality(params);
    eq.p_star = (eq.coeff_c - eq.coeff_b * eq.q_star) / eq.coeff_a;
    eq.feasible = eq.p_star >= 0.0;
    return eq;
}

EquilibriumSolution pre_ai_equilibrium(const ModelParams& params) {
    ModelParams human_only = params;
    human_only.alpha_ai = 0.0;
    human_only.beta_ai = 0.0;
    human_only.phi_ai = 0.0;
    return solve_equilibrium(human_only);
}

double consumer_surplus_integral(const EquilibriumSolution& eq, const ModelParams& params) {
    if (params.p_max <= eq.p_star) {
        throw std::domain_error("consumer_surplus_integral requires p_max > p_star");
    }
    // D(p, q*) is linear in p; integrate up to its zero crossing or p_max,
    // whichever comes first.
    const double intercept = params.gamma + params.kappa * eq.q_star;
    double upper = params.p_max;
    if (params.eta > 0.0) upper = std::min(upper, intercept / params.eta);
    if (upper <= eq.p_star) return 0.0;
    const double d_lo = intercept - params.eta * eq.p_star;
    const double d_hi = intercept - params.eta * upper;
    return 0.5 * (d_lo + d_hi) * (upper - eq.p_star);
}

double consumer_surplus_representative(const EquilibriumSolution& eq, const ModelParams& params) {
    return utility(eq.q_star, params) - eq.p_star;
}

double producer_surplus_human(const EquilibriumSolution& eq, const ModelParams& params) {
    return (eq.p_star - human_cost(eq.q_star, params)) *
           supply_human(eq.p_star, eq.q_star, params);
}

double producer_surplus_ai(const EquilibriumSolution& eq, const ModelParams& params) {
    return eq.p_star * supply_ai(eq.p_star, eq.q_star, params);
}

WelfareCase classify_welfare_case(const ModelParams& params, double quality_threshold,
                                  double overload_threshold) {
    if (quality_threshold <= 0.0 || overload_threshold <= 0.0) {
        throw std::domain_error("classify_welfare_case thresholds must be > 0");
    }
    const double q_star = optimal_quality(params);
    const bool high_quality = q_star >= quality_threshold;
    const bool low_overload = params.delta_u <= overload_threshold;
    if (high_quality && low_overload) return WelfareCase::WelfareIncreasing;
    if (!high_quality && !low_overload) return WelfareCase::WelfareDecreasing;
    return WelfareCase::Ambiguous;
}

WelfareReport make_welfare_report(const EquilibriumSolution& eq, const ModelParams& params,
                                  double quality_threshold, double overload_threshold) {
    WelfareReport report;
    report.cs = consumer_surplus_representative(eq, params);
    report.ps_human = producer_surplus_human(eq, params);
    report.ps_ai = producer_surplus_ai(eq, params);
    report.welfare = report.cs + report.ps_human + report.ps_ai;
    report.case_label = classify_welfare_case(params, quality_threshold, overload_threshold);
    return report;
}

WelfareDelta welfare_delta(const WelfareReport& pre_ai, const WelfareReport& post_ai) {
    WelfareDelta d;
    d.delta_cs = post_ai.cs - pre_ai.cs;
    d.delta_ps = (post_ai.ps_human + post_ai.ps_ai) - (pre_ai.ps_human + pre_ai.ps_ai);
    d.delta_w = d.delta_cs + d.delta_ps;
    return d;
}

}  // namespace marketsim
