#include "marketsim/params.hpp"

#include <cmath>
#include <stdexcept>

namespace marketsim {

namespace {

void require(bool ok, const char* field, const char* constraint) {
    if (!ok) {
        throw std::invalid_argument(std::string("model_params.") + field +
                                    " must be " + constraint);
    }
}

}  // namespace

void ModelParams::validate() const {
    require(alpha_h >= 0.0, "alpha_h", ">= 0");
    require(beta_h > 0.0, "beta_h", "> 0");
    require(phi_h >= 0.0, "phi_h", ">= 0");
    require(alpha_ai >= 0.0, "alpha_ai", ">= 0");
    require(beta_ai >= 0.0, "beta_ai", ">= 0");
    require(phi_ai >= 0.0, "phi_ai", ">= 0");
    require(c_ai >= 0.0, "c_ai", ">= 0");
    require(s_max > 0.0, "s_max", "> 0");
    require(gamma > 0.0, "gamma", "> 0");
    require(eta > 0.0, "eta", "> 0");
    require(kappa >= 0.0, "kappa", ">= 0");
    require(theta_u > 0.0, "theta_u", "> 0");
    require(delta_u > 0.0, "delta_u", "> 0");
    require(traffic_scale > 0.0, "traffic_scale", "> 0");
    require(traffic_exponent > 0.0, "traffic_exponent", "> 0");
    require(pareto_alpha > 0.0, "pareto_alpha", "> 0");
    require(pareto_tmin > 0.0, "pareto_tmin", "> 0");
    require(p_min >= 0.0, "p_min", ">= 0");
    require(p_min < p_max, "p_min", "< p_max");
    require(cost_fixed >= 0.0, "cost_fixed", ">= 0");
    require(cost_quad >= 0.0, "cost_quad", ">= 0");
    require(std::isfinite(theta_u / delta_u) && theta_u / delta_u > 0.0,
            "theta_u/delta_u", "finite and positive");
}

}  // namespace marketsim
