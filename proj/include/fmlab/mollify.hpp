#pragma once

#include "fmlab/grid.hpp"
#include "fmlab/norms.hpp"
#include "fmlab/weights.hpp"

#include <limits>
#include <vector>

namespace fmlab {

class MultiplierSymbol;

// ---------------------------------------------------------------------------
// The base bump e^{1/(x^2-1)} on |x| < 1 and quantities derived from it.

double bump(double x);
/// Integral of bump over [-1, 1] (about 0.443994).
double bump_mass();
/// Integral of bump / bump_mass over [-1, u]; exactly 0 for u <= -1, 1 for u >= 1,
/// and bump_cdf(-u) == 1 - bump_cdf(u).
double bump_cdf(double u);
/// (1 / bump_mass) * integral of bump(x) exp(-i x zeta) dx, for complex zeta.
cplx bump_transform(cplx zeta);

/// rho_j(x) = j rho(j x) / integral(rho): unit mass, support [-1/j, 1/j].
struct MollifierSpec {
    int j;
    double operator()(double x) const;
    double radius() const { return 1.0 / j; }
};

/// rho_j sampled and renormalised so that h * sum = 1. Needs h <= 1/(8j).
SampledFunction mollifier(int j, const Grid& grid);

/**
 * Approximation integral at a frequency eta:
 *   I(delta) = integral |a(xi) - a(eta)| |psi_delta(eta - xi)| dxi,  psi_delta(xi) = psi(xi/delta)/delta,
 * evaluated after the substitution xi = eta - delta*zeta on psi's own nodes.
 * psi must decay on its grid (checked against a (1+|zeta|)^{-2} envelope).
 */
double lebesgue_point_integral(const MultiplierSymbol& a, double eta, const SampledFunction& psi, double delta);

/// max |psi(zeta)| (1 + |zeta|)^sigma over psi's nodes.
double decay_constant(const SampledFunction& psi, double sigma = 2.0);

struct ApproxStage {
    int j;
    double radius;            ///< truncation radius R_j
    double truncation_error;  ///< ||u - chi_{B(0,R_j)} u||_2 <= 2^{-j}
    double l2_error;          ///< ||u - v_j||_2
    double weighted_norm;     ///< ||v_j||_X
    SampledFunction v;
};

struct ApproxSequence {
    std::vector<ApproxStage> stages;
    double u_l2_norm;
    double u_weighted_norm;
    /// max of weighted_norm over the last five stages (finite stand-in for the limsup).
    double limsup_proxy;
};

/// v_j = rho_j * (chi_{B(0,R_j)} u), j = 1..stages. Rejects discontinuous weights.
ApproxSequence bounded_l2_approx_sequence(const SampledFunction& u, const SpaceSpec& space, int stages);

/// The closed set Omega = [lo, hi] that must contain supp kappa.
struct SupportConstraint {
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    bool contains(double x) const { return x >= lo && x <= hi; }
};

struct YoungCheck {
    double lhs;  ///< ||kappa * f||_{L^p(w)}
    double rhs;  ///< ||kappa||_{L^1(w*)} ||f||_{L^p(w)}
    bool holds;
    bool preset; ///< hypothesis certified by a known preset rather than sampling
};

/**
 * Weighted Young inequality check. The kernel hypothesis
 * w*(y) w(x - y) / w(x) >= 1 for y in Omega is certified for the presets
 * (e^{cx}, e^{cx}, R) and (e^{c phi}, e^{c phi}, (-inf, 0]) and otherwise
 * sampled on a 128 x 128 lattice; a violation throws PreconditionError.
 * The convolution is a direct sum over the nonzero samples of kappa.
 */
YoungCheck weighted_young_check(const SampledFunction& kappa, const SampledFunction& f, const WeightSpec& w_star,
                                const WeightSpec& w, double p, SupportConstraint omega);

}  // namespace fmlab
