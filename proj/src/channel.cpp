#include "crsched/channel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "crsched/error.hpp"

namespace crsched {

namespace {

void require_positive(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw domain_error(std::string(what) + " must be positive and finite, got " +
                           std::to_string(v));
    }
}

}  // namespace

double gains_from_distance(double d, double beta) {
    require_positive(d, "distance");
    require_positive(beta, "path-loss exponent");
    return std::pow(d, -beta);
}

user_link user_link::make(double d_sd, double d_sp, double beta) {
    user_link link;
    link.d_sd = d_sd;
    link.d_sp = d_sp;
    link.delta_sd_sq = gains_from_distance(d_sd, beta);
    link.delta_sp_sq = gains_from_distance(d_sp, beta);
    link.alpha = alpha_of(link, beta);
    return link;
}

double alpha_of(const user_link& link, double beta) {
    require_positive(link.d_sd, "d_sd");
    require_positive(link.d_sp, "d_sp");
    require_positive(beta, "path-loss exponent");
    // Same as delta_sp_sq / delta_sd_sq but without the round trip through two powers.
    const double alpha = std::pow(link.d_sd / link.d_sp, beta);
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw domain_error("alpha is not a positive finite number for d_sd = " +
                           std::to_string(link.d_sd) + ", d_sp = " + std::to_string(link.d_sp));
    }
    return alpha;
}

void primary_side::validate() const {
    if (!(p_u >= 0.0) || !std::isfinite(p_u)) {
        throw domain_error("p_u must be nonnegative and finite");
    }
    require_positive(p_a, "p_a");
    require_positive(p_m, "p_m");
    require_positive(eta0, "eta0");
    require_positive(delta_pd_sq, "delta_pd_sq");
}

double transmit_power(double g_sp, const primary_side& p, power_mode mode) {
    require_positive(g_sp, "g_sp");
    const double limited = p.p_a / g_sp;
    return mode == power_mode::exact ? std::min(p.p_m, limited) : limited;
}

double instantaneous_snr(double g_sd, double g_sp, double g_pd, const primary_side& p,
                         power_mode mode) {
    require_positive(g_sd, "g_sd");
    require_positive(g_pd, "g_pd");
    return transmit_power(g_sp, p, mode) * g_sd / (p.eta0 + p.p_u * g_pd);
}

double sample_exponential(double mean, rng_stream& stream) {
    require_positive(mean, "mean");
    // 53 random mantissa bits shifted to (0, 1]; U = 0 would give an infinite variate.
    const double u = static_cast<double>((stream() >> 11) + 1) * 0x1.0p-53;
    return -mean * std::log(u);
}

}  // namespace crsched
