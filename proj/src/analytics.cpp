#include "crsched/analytics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

#include "crsched/error.hpp"

namespace crsched {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0) || !std::isfinite(alpha)) {
        throw domain_error("alpha must be positive and finite, got " + std::to_string(alpha));
    }
}

// log(x / y) as log1p((x - y) / y): keeps full relative accuracy when x ~ y,
// where log(x) - log(y) would cancel.
double log_ratio(double x, double y) {
    return std::log1p((x - y) / y);
}

double clamp_unit(double p) {
    return std::clamp(p, 0.0, 1.0);
}

// Probability that the first argument's user wins against the other two.
// Expands F_2 F_3 = 1 - (1 + a2 y)^-1 - (1 + a3 y)^-1 + (1 + a2 y)^-1 (1 + a3 y)^-1
// under a1 (1 + a1 y)^-2 and integrates term by term.
double first_of_three(double a1, double a2, double a3) {
    return a1 * (identity_i1(a1) - identity_i2(a1, a2) - identity_i2(a1, a3) +
                 identity_i3(a1, a2, a3));
}

double first_of_two(double a1, double a2) {
    return a1 * (identity_i1(a1) - identity_i2(a1, a2));
}

// Divided difference of ln over `x` (repeated points allowed). A tight
// cluster is expanded in a series around its mean; otherwise the extreme
// points are peeled off so every division is by the widest spread.
double log_divided_difference(std::vector<double> x) {
    if (x.size() == 1) {
        return std::log(x.front());
    }
    const auto [lo_it, hi_it] = std::minmax_element(x.begin(), x.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (hi - lo <= 0.1 * lo) {
        // ln(m (1 + d)) = ln m + sum_j (-1)^(j+1) d^j / j; the divided difference
        // of d^j over n + 1 points is the complete symmetric polynomial h_(j-n).
        const std::size_t n = x.size() - 1;
        const double m = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(x.size());
        constexpr std::size_t terms = 48;
        std::array<double, terms> h{};
        h[0] = 1.0;
        for (double xi : x) {
            const double d = (xi - m) / m;
            for (std::size_t k = 1; k < terms; ++k) {
                h[k] += d * h[k - 1];
            }
        }
        double sum = 0.0;
        for (std::size_t k = terms; k-- > 0;) {
            const std::size_t j = n + k;
            sum += (j % 2 == 1 ? 1.0 : -1.0) * h[k] / static_cast<double>(j);
        }
        return sum / std::pow(m, static_cast<double>(n));
    }
    std::vector<double> without_lo = x;
    without_lo.erase(without_lo.begin() + (lo_it - x.begin()));
    std::vector<double> without_hi = x;
    without_hi.erase(without_hi.begin() + (hi_it - x.begin()));
    return (log_divided_difference(std::move(without_lo)) -
            log_divided_difference(std::move(without_hi))) / (hi - lo);
}

// Same closed form, rearranged for near-equal alphas. With r_l = a_l / a_k and
// w = 1 / (a_k y), P_k = prod r_l * integral_0^inf dw / ((1 + w)^2 prod (r_l + w)),
// which is (-1)^(K+1) prod r_l * ln[1, 1, r_1, ..., r_(K-1)].
double winner_probability_clustered(std::span<const double> alphas, std::size_t k) {
    std::vector<double> points = {1.0, 1.0};
    double product = 1.0;
    for (std::size_t l = 0; l < alphas.size(); ++l) {
        if (l != k) {
            const double r = alphas[l] / alphas[k];
            points.push_back(r);
            product *= r;
        }
    }
    const double sign = points.size() % 2 == 0 ? 1.0 : -1.0;
    return sign * product * log_divided_difference(std::move(points));
}

double min_relative_gap(std::span<const double> v) {
    double gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < v.size(); ++i) {
        for (std::size_t j = i + 1; j < v.size(); ++j) {
            gap = std::min(gap, std::abs(v[i] - v[j]) / std::max(v[i], v[j]));
        }
    }
    return gap;
}

bool all_equal(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [&](double x) { return x == v.front(); });
}

selection_probabilities by_quadrature(const alpha_vector& alphas, const quadrature_config& cfg) {
    selection_probabilities out;
    out.source = method::quadrature;
    out.probs.resize(alphas.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < alphas.size(); ++k) {
        out.probs[k] = quadrature_selection(alphas, k, cfg);
        sum += out.probs[k];
    }
    out.sum_defect = sum - 1.0;
    if (std::abs(out.sum_defect) > cfg.abs_tol) {
        for (auto& p : out.probs) {
            p /= sum;
        }
        out.renormalized = true;
    }
    for (auto& p : out.probs) {
        p = clamp_unit(p);
    }
    return out;
}

selection_probabilities symmetric(std::size_t k, method source) {
    selection_probabilities out;
    out.source = source;
    out.probs.assign(k, 1.0 / static_cast<double>(k));
    return out;
}

}  // namespace

alpha_vector::alpha_vector(std::vector<double> alphas) : values_(std::move(alphas)) {
    if (values_.size() < 2) {
        throw domain_error("at least two users are required, got " + std::to_string(values_.size()));
    }
    for (double a : values_) {
        require_alpha(a);
    }
}

std::string_view to_string(method m) {
    switch (m) {
        case method::closed_form:
            return "closed-form";
        case method::quadrature:
            return "quadrature";
        case method::monte_carlo:
            return "monte-carlo";
    }
    return "unknown";
}

bool near_degenerate(double a, double b) noexcept {
    return std::abs(a - b) <= near_degenerate_rel_gap * std::max(a, b);
}

double cdf_metric(double y, double alpha) {
    require_alpha(alpha);
    if (y <= 0.0) {
        return 0.0;
    }
    // 1 - (1 + alpha y)^-1, written without the subtraction.
    const double ay = alpha * y;
    return ay / (1.0 + ay);
}

double pdf_metric(double y, double alpha) {
    require_alpha(alpha);
    if (y < 0.0) {
        return 0.0;
    }
    const double s = 1.0 + alpha * y;
    return alpha / (s * s);
}

double identity_i1(double a) {
    require_alpha(a);
    return 1.0 / a;
}

double identity_i2(double a, double b) {
    require_alpha(a);
    require_alpha(b);
    if (near_degenerate(a, b)) {
        throw near_degenerate_error("identity_i2: a and b coincide within the relative gap threshold");
    }
    const double d = a - b;
    return (1.0 - b * log_ratio(a, b) / d) / d;
}

double identity_i3(double a, double b, double c) {
    require_alpha(a);
    require_alpha(b);
    require_alpha(c);
    if (near_degenerate(a, b) || near_degenerate(a, c) || near_degenerate(b, c)) {
        throw near_degenerate_error("identity_i3: parameters coincide within the relative gap threshold");
    }
    const double ab = a - b;
    const double ac = a - c;
    const double bc = b - c;
    // The coefficients of log a, log b, log c sum to zero, so every log is
    // taken relative to a and the log a term drops out.
    return a / (ab * ac) + b * b * log_ratio(b, a) / (ab * ab * bc) -
           c * c * log_ratio(c, a) / (ac * ac * bc);
}

selection_probabilities closed_form_k2(const alpha_vector& alphas) {
    if (alphas.size() != 2) {
        throw domain_error("closed_form_k2 needs exactly two alphas");
    }
    const double a1 = alphas[0];
    const double a2 = alphas[1];
    if (a1 == a2) {
        return symmetric(2, method::closed_form);
    }
    selection_probabilities out;
    out.source = method::closed_form;
    const double p1 = clamp_unit(min_relative_gap(alphas.values()) >= identity_route_min_gap
                                     ? first_of_two(a1, a2)
                                     : winner_probability_clustered(alphas.values(), 0));
    out.probs = {p1, 1.0 - p1};
    return out;
}

selection_probabilities closed_form_k3(const alpha_vector& alphas) {
    if (alphas.size() != 3) {
        throw domain_error("closed_form_k3 needs exactly three alphas");
    }
    if (all_equal(alphas.values())) {
        return symmetric(3, method::closed_form);
    }
    const double a1 = alphas[0];
    const double a2 = alphas[1];
    const double a3 = alphas[2];
    const bool separated = min_relative_gap(alphas.values()) >= identity_route_min_gap;
    selection_probabilities out;
    out.source = method::closed_form;
    // Second user: the same expression with users 1 and 2 relabelled.
    const double p1 = clamp_unit(separated ? first_of_three(a1, a2, a3)
                                           : winner_probability_clustered(alphas.values(), 0));
    const double p2 = clamp_unit(separated ? first_of_three(a2, a1, a3)
                                           : winner_probability_clustered(alphas.values(), 1));
    out.probs = {p1, p2, clamp_unit(1.0 - p1 - p2)};
    out.sum_defect = (out.probs[0] + out.probs[1] + out.probs[2]) - 1.0;
    return out;
}

double quadrature_selection(const alpha_vector& alphas, std::size_t k, const quadrature_config& cfg) {
    if (k >= alphas.size()) {
        throw domain_error("user index " + std::to_string(k) + " out of range for K = " +
                           std::to_string(alphas.size()));
    }
    const auto values = alphas.values();
    auto integrand = [&](double y) {
        double v = pdf_metric(y, values[k]);
        for (std::size_t l = 0; l < values.size(); ++l) {
            if (l != k) {
                v *= cdf_metric(y, values[l]);
            }
        }
        return v;
    };
    // The metric of user k has median 1 / alpha_k.
    return integrate_half_line(integrand, 1.0 / values[k], cfg).value;
}

selection_probabilities selection_probabilities_of(const alpha_vector& alphas, method m,
                                                   const quadrature_config& cfg) {
    switch (m) {
        case method::closed_form:
            if (alphas.size() == 2) {
                return closed_form_k2(alphas);
            }
            if (alphas.size() == 3) {
                return closed_form_k3(alphas);
            }
            throw unsupported_k_error(alphas.size());
        case method::quadrature:
            return by_quadrature(alphas, cfg);
        case method::monte_carlo:
            break;
    }
    throw std::invalid_argument("monte-carlo probabilities come from run_monte_carlo, not analytics");
}

}  // namespace crsched
