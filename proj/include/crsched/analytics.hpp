#pragma once

// Selection probabilities of the opportunistic scheduler. User k's metric
// G_k = g_sd / g_sp has CDF 1 - 1/(1 + alpha_k y); the scheduler picks the
// largest metric, so user k wins with probability
//
//   P_k = integral_0^inf f_k(y) prod_{l != k} F_l(y) dy.
//
// Closed forms exist for K = 2 and K = 3 and are assembled from three
// integral identities I1, I2, I3. Generic K is handled by quadrature.

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

#include "crsched/quadrature.hpp"

namespace crsched {

/// Relative gap at or below which the I2 / I3 identities refuse to evaluate.
inline constexpr double near_degenerate_rel_gap = 1e-6;

/// The closed forms use the I1 / I2 / I3 expansion only when every pair of
/// alphas is at least this far apart (relative); its rounding error grows like
/// eps / gap^2. Closer alphas go through the divided-difference form.
inline constexpr double identity_route_min_gap = 1e-2;

/// Per-user alpha parameters, K >= 2, all positive and finite.
class alpha_vector {
public:
    explicit alpha_vector(std::vector<double> alphas);

    std::size_t size() const noexcept { return values_.size(); }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<const double> values() const noexcept { return values_; }

private:
    std::vector<double> values_;
};

enum class method { closed_form, quadrature, monte_carlo };

std::string_view to_string(method m);

struct selection_probabilities {
    std::vector<double> probs;
    method source = method::closed_form;
    /// Raw sum of the computed entries minus one, before any renormalization.
    double sum_defect = 0.0;
    bool renormalized = false;
};

/// True when |a - b| / max(a, b) is at or below near_degenerate_rel_gap.
bool near_degenerate(double a, double b) noexcept;

double cdf_metric(double y, double alpha);
double pdf_metric(double y, double alpha);

/// integral_0^inf (1 + a y)^-2 dy = 1 / a
double identity_i1(double a);
/// integral_0^inf (1 + a y)^-2 (1 + b y)^-1 dy, a != b
double identity_i2(double a, double b);
/// integral_0^inf (1 + a y)^-2 (1 + b y)^-1 (1 + c y)^-1 dy, a, b, c pairwise distinct
double identity_i3(double a, double b, double c);

/// Two users: P_1 = a1 (I1(a1) - I2(a1, a2)), P_2 = 1 - P_1. Valid for any
/// alphas, including equal or nearly equal ones.
selection_probabilities closed_form_k2(const alpha_vector& alphas);
/// Three users: P_1 = a1 (I1 - I2(a1, a2) - I2(a1, a3) + I3(a1, a2, a3)),
/// P_2 the same with users 1 and 2 swapped, P_3 = 1 - P_1 - P_2.
selection_probabilities closed_form_k3(const alpha_vector& alphas);

/// P_k by adaptive quadrature; any K >= 2, equal alphas allowed.
double quadrature_selection(const alpha_vector& alphas, std::size_t k, const quadrature_config& cfg = {});

/// Dispatches on `m`. Closed forms for K = 2, 3 (unsupported_k_error beyond);
/// quadrature for any K. Monte Carlo lives in the simulator.
selection_probabilities selection_probabilities_of(const alpha_vector& alphas, method m,
                                                   const quadrature_config& cfg = {});

}  // namespace crsched
