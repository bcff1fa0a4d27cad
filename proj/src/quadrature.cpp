#include "crsched/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>
#include <vector>

#include "crsched/error.hpp"

namespace crsched {

namespace {

// Kronrod 15-point abscissae (positive half) and weights; every second node
// is shared with the embedded 7-point Gauss rule.
constexpr std::array<double, 8> kronrod_x = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kronrod_w = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> gauss_w = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct segment {
    double lo;
    double hi;
    double value;
    double error;
    bool operator<(const segment& other) const { return error < other.error; }
};

segment gauss_kronrod_15(const std::function<double(double)>& f, double lo, double hi) {
    const double center = 0.5 * (lo + hi);
    const double half = 0.5 * (hi - lo);
    const double fc = f(center);
    double kronrod = fc * kronrod_w[7];
    double gauss = fc * gauss_w[3];
    for (std::size_t i = 0; i < 7; ++i) {
        const double dx = half * kronrod_x[i];
        const double pair = f(center - dx) + f(center + dx);
        kronrod += kronrod_w[i] * pair;
        if (i % 2 == 1) {
            gauss += gauss_w[i / 2] * pair;
        }
    }
    kronrod *= half;
    gauss *= half;
    return {lo, hi, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

void quadrature_config::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw domain_error("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw domain_error("max_subdivisions must be at least 1");
    }
}

quadrature_result integrate(const std::function<double(double)>& f, double lo, double hi,
                            const quadrature_config& cfg) {
    cfg.validate();
    if (!(lo <= hi)) {
        throw domain_error("integration bounds out of order");
    }
    if (lo == hi) {
        return {};
    }

    std::priority_queue<segment> pending;
    const segment first = gauss_kronrod_15(f, lo, hi);
    pending.push(first);
    double total = first.value;
    double total_error = first.error;
    int subdivisions = 0;

    auto converged = [&] { return total_error <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };

    while (!converged()) {
        if (subdivisions >= cfg.max_subdivisions) {
            throw convergence_failure(total, total_error, subdivisions);
        }
        const segment worst = pending.top();
        pending.pop();
        const double mid = 0.5 * (worst.lo + worst.hi);
        if (!(mid > worst.lo && mid < worst.hi)) {
            // Interval can no longer be split in double precision.
            throw convergence_failure(total, total_error, subdivisions);
        }
        const segment left = gauss_kronrod_15(f, worst.lo, mid);
        const segment right = gauss_kronrod_15(f, mid, worst.hi);
        total += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        pending.push(left);
        pending.push(right);
        ++subdivisions;
    }

    // Re-sum from the partition to drop the drift of the running updates.
    double value = 0.0;
    double error = 0.0;
    std::vector<segment> parts;
    parts.reserve(pending.size());
    while (!pending.empty()) {
        parts.push_back(pending.top());
        pending.pop();
    }
    std::sort(parts.begin(), parts.end(),
              [](const segment& a, const segment& b) { return a.lo < b.lo; });
    for (const auto& s : parts) {
        value += s.value;
        error += s.error;
    }
    return {value, error, subdivisions};
}

quadrature_result integrate_half_line(const std::function<double(double)>& f, double scale,
                                      const quadrature_config& cfg) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw domain_error("half-line scale must be positive and finite");
    }
    auto mapped = [&](double t) {
        const double one_minus_t = 1.0 - t;
        const double y = scale * t / one_minus_t;
        return f(y) * scale / (one_minus_t * one_minus_t);
    };
    return integrate(mapped, 0.0, 1.0, cfg);
}

}  // namespace crsched
