#pragma once

#include "fmlab/grid.hpp"
#include "fmlab/weights.hpp"

#include <limits>
#include <span>
#include <vector>

namespace fmlab {

/// X = L^p(R, w): the norm of f is ||f w||_{L^p}.
struct SpaceSpec {
    double p;
    WeightSpec weight;

    static constexpr double kInfinity = std::numeric_limits<double>::infinity();

    bool is_sup() const noexcept { return p == kInfinity; }
    /// Hoelder conjugate p'.
    double conjugate() const noexcept;
};

/// Validates p in [1, inf] and the weight parameters.
SpaceSpec make_space(double p, WeightSpec weight);

/// (h sum |f w|^p)^{1/p}, or the grid maximum of |f w| for p = inf.
double weighted_lp_norm(const SampledFunction& f, const SpaceSpec& space);

/// ||chi_{(y-R, y+R)}||_{L^p(w)}; closed forms where the weight family has one,
/// adaptive quadrature (relative tolerance 1e-8) otherwise.
double ball_indicator_norm(const SpaceSpec& space, double y, double R);
double log_ball_indicator_norm(const SpaceSpec& space, double y, double R);

/// ||chi_{(y-R, y+R)}||_{L^{p'}(1/w)}, the associate-space ball norm.
double log_dual_ball_indicator_norm(const SpaceSpec& space, double y, double R);

/// ||chi_{B(y, tau R)}|| / ||chi_{B(y, R)}||.
double doubling_ratio(const SpaceSpec& space, double tau, double y, double R);

/**
 * Finite-search estimate of the doubling constant D_{X,tau}.
 *
 * ratios[r][i] is the ratio at (y_search[i], R_schedule[r]); per_R_inf[r]
 * is the infimum over the searched centres, and liminf_estimate the minimum
 * of per_R_inf over the tail half of the schedule. Because the centres are
 * only a finite set, this is an upper bound for the true constant.
 */
struct DoublingReport {
    double tau;
    std::vector<double> R_schedule;
    std::vector<double> y_search;
    std::vector<std::vector<double>> ratios;
    std::vector<double> per_R_inf;
    std::vector<double> per_R_argmin_y;
    double liminf_estimate;
};

DoublingReport doubling_constant_estimate(const SpaceSpec& space, double tau, std::span<const double> R_schedule,
                                          std::span<const double> y_search);

struct WitnessPoint {
    int j;
    double y;
    double R;
    double ratio;
};

/// Centres y_j = j + m and radii R_j = phi(j)^{-1/2} along which the doubling
/// ratio of a subexponential weight stays bounded.
struct WitnessSequence {
    double tau;
    int shift;                 ///< the m keeping B(y_j, tau R_j) inside x > 0
    double predicted_bound;    ///< exp((tau + 1) phi(1)^{1/2})
    std::vector<WitnessPoint> points;
};

WitnessSequence weak_doubling_witness(const SpaceSpec& space, double tau, int count = 20);

struct Interval {
    double lo;
    double hi;
};

/// Dyadic intervals [m 2^l, (m+1) 2^l], l = -K..K, with centres in [-2^K, 2^K].
std::vector<Interval> dyadic_family(int K);

struct ApReport {
    double value;          ///< +inf when some interval integral diverges
    double coarse_value;   ///< same sup over the K-2 family (convergence diagnostic)
    int K;
    Interval argmax;
};

/// Muckenhoupt constant sup_Q (avg_Q w^p)^{1/p} (avg_Q w^{-p'})^{1/p'} over the dyadic family.
ApReport ap_constant(const SpaceSpec& space, int K = 10);
double ap_constant(const SpaceSpec& space, std::span<const Interval> family);

/// sup_Q |Q|^{-1} ||chi_Q||_{L^p(w)} ||chi_Q||_{L^{p'}(1/w)}, through ball norms.
ApReport ax_constant(const SpaceSpec& space, int K = 10);
double ax_constant(const SpaceSpec& space, std::span<const Interval> family);

/// inf over |x|, |y| <= eps (step eps/64) of w(x_k + x) / w(x_k - x0 + y), x_k = (k+1) x0.
double lofstrom_ratio(const WeightSpec& w, double x0, double eps, int k);

}  // namespace fmlab
