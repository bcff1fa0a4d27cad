#pragma once

// Seeded Monte Carlo engine for the opportunistic scheduler.
//
// Trials are grouped in fixed-size blocks. Every (block, user, link) triple
// owns its own random stream derived from the master seed, so the result is
// bit-identical whatever the number of workers.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "crsched/analytics.hpp"
#include "crsched/channel.hpp"

namespace crsched {

inline constexpr std::uint64_t default_seed = 20180415;
inline constexpr std::uint64_t default_trials = 1'000'000;
inline constexpr std::uint64_t trials_per_block = 1u << 16;

struct scenario {
    std::vector<user_link> users;
    double beta = 3.0;
    primary_side primary;
    power_mode power = power_mode::approx;
    std::uint64_t trials = default_trials;
    std::uint64_t seed = default_seed;
    bool record_snr = false;

    /// Builds the links from (d_sd, d_sp) pairs under `beta` and validates.
    static scenario from_distances(std::span<const std::pair<double, double>> distances,
                                   double beta = 3.0);

    void validate() const;
    alpha_vector alphas() const;
};

struct mc_report {
    std::vector<std::uint64_t> counts;
    std::vector<double> freqs;
    std::vector<double> ci95_halfwidth;
    /// Mean of 10 log10(snr) over the trials each user was selected; NaN for a
    /// user never selected. Present only when the scenario records SNR.
    std::optional<std::vector<double>> mean_snr_db;
    /// Trials in which the selected user's power hit the P_M cap (exact mode only).
    std::uint64_t cap_binding = 0;
    std::uint64_t seed = 0;
    std::uint64_t trials = 0;

    bool operator==(const mc_report&) const = default;
};

/// Index of the largest g_sd / g_sp; ties go to the smallest index.
std::size_t select_user(std::span<const double> gains_sd, std::span<const double> gains_sp);

/// `workers` = 0 picks std::thread::hardware_concurrency().
mc_report run_monte_carlo(const scenario& s, unsigned workers = 1);

struct user_comparison {
    double analytic = 0.0;
    double empirical = 0.0;
    double abs_diff = 0.0;
    double ci95 = 0.0;
    double sigma = 0.0;  ///< binomial standard deviation at the analytic probability
    bool within_3sigma = false;
};

struct mc_comparison {
    method analytic_method = method::closed_form;
    std::vector<user_comparison> users;
    bool pass = false;
};

/// Compares analytic probabilities against Monte Carlo frequencies at the
/// 3-sigma binomial bound.
mc_comparison compare(const selection_probabilities& analytic, const mc_report& mc);

/// Runs both sides for `s` and compares them.
mc_comparison mc_vs_analytic(const scenario& s, method m, unsigned workers = 1);

}  // namespace crsched
