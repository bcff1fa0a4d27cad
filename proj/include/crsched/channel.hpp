#pragma once

// Physical-layer model of the underlay network: distance-based average gains,
// Rayleigh (exponential power) gain samples, interference-limited power control
// and the SNR seen at the cognitive destination.

#include <cstdint>
#include <random>

namespace crsched {

/// Random stream used by every sampling routine. mt19937_64 output is fixed by
/// the standard, so draws are reproducible across platforms.
using rng_stream = std::mt19937_64;

enum class power_mode {
    exact,   ///< min(P_M, P_A / g_sp)
    approx,  ///< P_A / g_sp, i.e. the cap P_M never binds
};

/// Average gain of a link of length `d` under path-loss exponent `beta`: d^-beta.
double gains_from_distance(double d, double beta);

/// One secondary transmitter. Gains are computed once at construction.
struct user_link {
    double d_sd = 0.0;         ///< SU-TX to destination
    double d_sp = 0.0;         ///< SU-TX to PU-RX
    double delta_sd_sq = 0.0;  ///< average gain of the SU-TX -> destination link
    double delta_sp_sq = 0.0;  ///< average gain of the SU-TX -> PU-RX link
    double alpha = 0.0;        ///< delta_sp_sq / delta_sd_sq

    static user_link make(double d_sd, double d_sp, double beta);
};

/// alpha = (d_sd / d_sp)^beta, recomputed from the link's distances.
double alpha_of(const user_link& link, double beta);

/// Primary-side constants. They scale the SNR but never the selection.
struct primary_side {
    double p_u = 1.0;          ///< primary transmit power
    double p_a = 1.0;          ///< interference threshold at PU-RX
    double p_m = 1.0e3;        ///< maximum SU transmit power
    double eta0 = 1.0;         ///< noise power at the destination
    double delta_pd_sq = 1.0;  ///< average gain of the PU-TX -> destination link

    void validate() const;
};

double transmit_power(double g_sp, const primary_side& p, power_mode mode = power_mode::approx);

/// Linear SNR at the destination for one transmission by a secondary user.
double instantaneous_snr(double g_sd, double g_sp, double g_pd, const primary_side& p,
                         power_mode mode = power_mode::approx);

/// Exponential variate with the given mean via -mean * ln(U), U in (0, 1].
double sample_exponential(double mean, rng_stream& stream);

}  // namespace crsched
