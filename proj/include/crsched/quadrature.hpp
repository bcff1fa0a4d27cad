#pragma once

#include <functional>

namespace crsched {

struct quadrature_config {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    int max_subdivisions = 2000;

    void validate() const;
};

struct quadrature_result {
    double value = 0.0;
    double error = 0.0;  ///< summed |K15 - G7| over the final partition
    int subdivisions = 0;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration over [lo, hi].
/// The interval with the largest error estimate is bisected until the total
/// estimate meets max(abs_tol, rel_tol * |value|). Throws convergence_failure
/// (carrying the best estimate) when max_subdivisions is exhausted.
quadrature_result integrate(const std::function<double(double)>& f, double lo, double hi,
                            const quadrature_config& cfg = {});

/// Integral of f over [0, inf) through y = scale * t / (1 - t), t in [0, 1).
/// `scale` should be of the order of the integrand's characteristic length.
quadrature_result integrate_half_line(const std::function<double(double)>& f, double scale,
                                      const quadrature_config& cfg = {});

}  // namespace crsched
