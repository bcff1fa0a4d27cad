#include "crsched/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <thread>

#include "crsched/error.hpp"

namespace crsched {

namespace {

enum class link_kind : std::uint64_t { sd = 1, sp = 2, pd = 3 };

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

rng_stream substream(std::uint64_t seed, std::uint64_t user, link_kind link, std::uint64_t block) {
    std::uint64_t key = splitmix64(seed);
    key = splitmix64(key ^ user);
    key = splitmix64(key ^ static_cast<std::uint64_t>(link));
    key = splitmix64(key ^ block);
    return rng_stream(key);
}

struct block_tally {
    std::vector<std::uint64_t> counts;
    std::vector<double> snr_db_sum;
    std::uint64_t cap_binding = 0;
};

block_tally run_block(const scenario& s, std::uint64_t block) {
    const std::size_t k = s.users.size();
    const std::uint64_t first = block * trials_per_block;
    const std::uint64_t n = std::min(trials_per_block, s.trials - first);

    std::vector<rng_stream> sd_streams;
    std::vector<rng_stream> sp_streams;
    sd_streams.reserve(k);
    sp_streams.reserve(k);
    for (std::size_t u = 0; u < k; ++u) {
        sd_streams.push_back(substream(s.seed, u, link_kind::sd, block));
        sp_streams.push_back(substream(s.seed, u, link_kind::sp, block));
    }
    rng_stream pd_stream = substream(s.seed, 0, link_kind::pd, block);

    block_tally tally;
    tally.counts.assign(k, 0);
    if (s.record_snr) {
        tally.snr_db_sum.assign(k, 0.0);
    }
    std::vector<double> g_sd(k);
    std::vector<double> g_sp(k);
    for (std::uint64_t t = 0; t < n; ++t) {
        for (std::size_t u = 0; u < k; ++u) {
            g_sd[u] = sample_exponential(s.users[u].delta_sd_sq, sd_streams[u]);
            g_sp[u] = sample_exponential(s.users[u].delta_sp_sq, sp_streams[u]);
        }
        const std::size_t chosen = select_user(g_sd, g_sp);
        ++tally.counts[chosen];
        if (s.power == power_mode::exact && s.primary.p_a / g_sp[chosen] > s.primary.p_m) {
            ++tally.cap_binding;
        }
        if (s.record_snr) {
            const double g_pd = sample_exponential(s.primary.delta_pd_sq, pd_stream);
            const double snr = instantaneous_snr(g_sd[chosen], g_sp[chosen], g_pd, s.primary, s.power);
            tally.snr_db_sum[chosen] += 10.0 * std::log10(snr);
        }
    }
    return tally;
}

}  // namespace

scenario scenario::from_distances(std::span<const std::pair<double, double>> distances, double beta) {
    scenario s;
    s.beta = beta;
    for (const auto& [d_sd, d_sp] : distances) {
        s.users.push_back(user_link::make(d_sd, d_sp, beta));
    }
    s.validate();
    return s;
}

void scenario::validate() const {
    if (users.size() < 2) {
        throw domain_error("a scenario needs at least two users, got " + std::to_string(users.size()));
    }
    if (!(beta > 0.0) || !std::isfinite(beta)) {
        throw domain_error("beta must be positive and finite");
    }
    if (trials < 1) {
        throw domain_error("trials must be at least 1");
    }
    primary.validate();
    for (const auto& u : users) {
        if (!(u.delta_sd_sq > 0.0) || !(u.delta_sp_sq > 0.0) || !(u.alpha > 0.0)) {
            throw domain_error("user link has nonpositive derived gains; build it with user_link::make");
        }
    }
}

alpha_vector scenario::alphas() const {
    std::vector<double> a;
    a.reserve(users.size());
    for (const auto& u : users) {
        a.push_back(u.alpha);
    }
    return alpha_vector(std::move(a));
}

std::size_t select_user(std::span<const double> gains_sd, std::span<const double> gains_sp) {
    if (gains_sd.size() != gains_sp.size()) {
        throw domain_error("gain lists differ in length");
    }
    if (gains_sd.size() < 2) {
        throw domain_error("selection needs at least two users");
    }
    std::size_t best = 0;
    double best_metric = -1.0;
    for (std::size_t k = 0; k < gains_sd.size(); ++k) {
        if (!(gains_sd[k] > 0.0) || !(gains_sp[k] > 0.0)) {
            throw domain_error("gain samples must be positive");
        }
        const double metric = gains_sd[k] / gains_sp[k];
        if (metric > best_metric) {
            best_metric = metric;
            best = k;
        }
    }
    return best;
}

mc_report run_monte_carlo(const scenario& s, unsigned workers) {
    s.validate();
    const std::size_t k = s.users.size();
    const std::uint64_t blocks = (s.trials + trials_per_block - 1) / trials_per_block;
    if (workers == 0) {
        workers = std::max(1u, std::thread::hardware_concurrency());
    }
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, blocks));

    std::vector<block_tally> tallies(blocks);
    if (workers == 1) {
        for (std::uint64_t b = 0; b < blocks; ++b) {
            tallies[b] = run_block(s, b);
        }
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::uint64_t b = w; b < blocks; b += workers) {
                    tallies[b] = run_block(s, b);
                }
            });
        }
    }

    // Merge in block order so floating-point sums do not depend on scheduling.
    mc_report report;
    report.seed = s.seed;
    report.trials = s.trials;
    report.counts.assign(k, 0);
    std::vector<double> snr_sum(k, 0.0);
    for (const auto& t : tallies) {
        for (std::size_t u = 0; u < k; ++u) {
            report.counts[u] += t.counts[u];
            if (s.record_snr) {
                snr_sum[u] += t.snr_db_sum[u];
            }
        }
        report.cap_binding += t.cap_binding;
    }

    const double n = static_cast<double>(s.trials);
    report.freqs.resize(k);
    report.ci95_halfwidth.resize(k);
    for (std::size_t u = 0; u < k; ++u) {
        const double f = static_cast<double>(report.counts[u]) / n;
        report.freqs[u] = f;
        report.ci95_halfwidth[u] = 1.96 * std::sqrt(f * (1.0 - f) / n);
    }
    if (s.record_snr) {
        std::vector<double> mean(k, std::numeric_limits<double>::quiet_NaN());
        for (std::size_t u = 0; u < k; ++u) {
            if (report.counts[u] > 0) {
                mean[u] = snr_sum[u] / static_cast<double>(report.counts[u]);
            }
        }
        report.mean_snr_db = std::move(mean);
    }
    return report;
}

mc_comparison compare(const selection_probabilities& analytic, const mc_report& mc) {
    if (analytic.probs.size() != mc.freqs.size()) {
        throw domain_error("analytic and Monte Carlo results cover different numbers of users");
    }
    mc_comparison out;
    out.analytic_method = analytic.source;
    out.pass = true;
    const double n = static_cast<double>(mc.trials);
    for (std::size_t u = 0; u < mc.freqs.size(); ++u) {
        user_comparison c;
        c.analytic = analytic.probs[u];
        c.empirical = mc.freqs[u];
        c.abs_diff = std::abs(c.analytic - c.empirical);
        c.ci95 = mc.ci95_halfwidth[u];
        c.sigma = std::sqrt(c.analytic * (1.0 - c.analytic) / n);
        c.within_3sigma = c.abs_diff <= 3.0 * c.sigma;
        out.pass = out.pass && c.within_3sigma;
        out.users.push_back(c);
    }
    return out;
}

mc_comparison mc_vs_analytic(const scenario& s, method m, unsigned workers) {
    const auto analytic = selection_probabilities_of(s.alphas(), m);
    return compare(analytic, run_monte_carlo(s, workers));
}

}  // namespace crsched
