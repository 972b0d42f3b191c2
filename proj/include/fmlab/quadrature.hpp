#pragma once

#include "fmlab/weights.hpp"

#include <functional>

namespace fmlab {

struct QuadResult {
    double value;
    double abs_error;
};

/// Adaptive Gauss-Kronrod on a finite interval.
QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol = 1e-10);

/// Double-exponential quadrature on [0, inf).
QuadResult integrate_half_line(const std::function<double(double)>& f, double rel_tol = 1e-10);

/// log of the integral of w(x)^s over [a, b], with its relative error estimate.
/// log_value = +inf signals a divergent integral (e.g. |x|^{-1.2} across 0).
struct LogIntegral {
    double log_value;
    double rel_error;
    bool closed_form;
};

LogIntegral log_power_integral(const WeightSpec& w, double s, double a, double b);

/// log of the essential supremum of w^s over (a, b), for s = +1 or -1.
double log_power_ess_sup(const WeightSpec& w, double s, double a, double b);

}  // namespace fmlab
