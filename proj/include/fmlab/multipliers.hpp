#pragma once

#include "fmlab/grid.hpp"
#include "fmlab/norms.hpp"

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace fmlab {

/**
 * A frequency-domain symbol a(xi).
 *
 * Symbols are immutable expression trees. Besides real evaluation some
 * families extend analytically into the upper half-plane, which is what the
 * exponential-weight probe route needs (see analytic_height()).
 */
class MultiplierSymbol {
public:
    enum class Kind { Constant, MollifierTransform, AMinusAlpha, BandIndicator, Modulation, Lorentzian, Tabulated,
                      Shifted, Product, Power };

    static MultiplierSymbol constant(cplx c);
    /// F rho_j, the transform of the j-th mollifier.
    static MultiplierSymbol mollifier_transform(int j);
    /// lim_{eps->0+} (xi + i eps)^{-alpha}, 0 < alpha < 1; singular at xi = 0.
    static MultiplierSymbol a_minus_alpha(double alpha);
    /// 1 on [lo, hi], 0 elsewhere.
    static MultiplierSymbol band_indicator(double lo, double hi);
    /// e^{-i xi y}: translation by y.
    static MultiplierSymbol modulation(double y);
    /// 1 / (1 + xi^2).
    static MultiplierSymbol lorentzian();
    /// Values at the frequency lattice of `grid`, linearly interpolated, 0 outside.
    static MultiplierSymbol tabulated(const Grid& grid, std::vector<cplx> values);
    /// xi -> a(xi + eta).
    static MultiplierSymbol shifted(const MultiplierSymbol& a, double eta);
    static MultiplierSymbol product(const MultiplierSymbol& a, const MultiplierSymbol& b);
    static MultiplierSymbol power(const MultiplierSymbol& a, int m);

    Kind kind() const noexcept;

    /// a(xi) at a real frequency; throws NumericalError at a singular point.
    cplx operator()(double xi) const;

    /// Analytic continuation a(zeta) for 0 <= Im zeta < analytic_height().
    cplx at_complex(cplx zeta) const;
    /// Height of the strip above the real axis where at_complex is valid
    /// (0: no continuation, +inf: entire in the upper half-plane).
    double analytic_height() const noexcept;

    /// a at the frequency lattice of `grid`; a singular xi = 0 bin is read at
    /// xi + i*dxi/2 (half-bin regularisation).
    std::vector<cplx> sample(const Grid& grid) const;

    std::string describe() const;

    struct Node;

private:
    explicit MultiplierSymbol(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    cplx eval(double xi, double regularisation) const;
    std::shared_ptr<const Node> node_;
};

/// Symbol DSL: const:re=..,im=.. | lorentz | band:lo=..,hi=.. | mod:y=.. | mollifier:j=.. | aminus:alpha=..
MultiplierSymbol parse_symbol_spec(std::string_view text);

/// F^{-1} k for a multiplier: sampled, or k_alpha f^-_{alpha-1} with f^-_{alpha-1}(x) = |x|^{alpha-1} on x < 0.
class KernelSpec {
public:
    static KernelSpec sampled(SampledFunction k);
    static KernelSpec singular(double alpha, cplx k_alpha);

    bool is_singular() const noexcept { return !samples_.has_value(); }
    const SampledFunction& samples() const { return *samples_; }
    double alpha() const noexcept { return alpha_; }
    cplx k_alpha() const noexcept { return k_alpha_; }

private:
    KernelSpec() = default;
    std::optional<SampledFunction> samples_;
    double alpha_ = 0.0;
    cplx k_alpha_{0.0, 0.0};
};

/// F^{-1}[a F f] on the grid (periodic, no padding).
SampledFunction apply_multiplier(const MultiplierSymbol& a, const SampledFunction& f);

/// e^{cx} (W_a f), computed as F^{-1}[a(xi + ic) F(e^{cx} f)]; needs analytic_height() > c.
SampledFunction exp_conjugated_image(const MultiplierSymbol& a, const SampledFunction& f, double c);

/// Smooth even plateau: 1 on |x| <= 1, 0 on |x| >= rho, values in [0, 1].
/// It is chi_{[-(1+rho)/2, (1+rho)/2]} convolved with the mollifier of radius (rho-1)/2.
class PlateauProfile {
public:
    explicit PlateauProfile(double rho);
    double rho() const noexcept { return rho_; }
    double operator()(double x) const;

private:
    double rho_, centre_, width_;
};

/// phi(delta (x - y)) on the grid; throws if fewer than 16 samples cover a transition band.
SampledFunction smooth_plateau_bump(double rho, const Grid& grid, double delta = 1.0, double y = 0.0);

enum class ProbeRoute {
    Periodic,        ///< apply_multiplier on the grid
    ExpConjugated,   ///< exp_conjugated_image; space weight must be Exp(c)
};

/// One modulated-plateau probe f(x) = e^{-i eta x} phi(delta (x - y)).
struct ProbeCertificate {
    double eta;
    double delta;
    double y;
    double rho;
    double lower_bound;          ///< ||W_a f||_X / ||f||_X
    double doubling_correction;  ///< ||chi_{B(y, rho/delta)}||_X / ||chi_{B(y, 1/delta)}||_X
};

ProbeCertificate probe_lower_bound(const MultiplierSymbol& a, const SpaceSpec& space, const Grid& grid, double eta,
                                   double delta, double y, double rho = 2.0, ProbeRoute route = ProbeRoute::Periodic);

/// delta = 1, 1/2, 1/4, ... while the probe support B(y, rho/delta) fits in [-L/2, L/2] and delta >= 8/L.
std::vector<double> default_delta_schedule(const Grid& grid, double rho = 2.0);

struct SweepRow {
    double eta;
    double symbol_modulus;  ///< |a(eta)| when finite, else NaN
    ProbeCertificate best;
};

struct CertificateSweep {
    std::vector<SweepRow> rows;
    double overall;  ///< max over rows of best.lower_bound
};

/// For every eta, the best probe over the delta schedule and the candidate centres
/// (centres whose probe support leaves [-L/2, L/2] are skipped).
CertificateSweep certificate_sweep(const MultiplierSymbol& a, const SpaceSpec& space, const Grid& grid,
                                   std::span<const double> etas, std::span<const double> deltas,
                                   std::span<const double> centres, double rho = 2.0,
                                   ProbeRoute route = ProbeRoute::Periodic);

/**
 * Largest singular value of M_w F^{-1} diag(a) F M_w^{-1} on the grid with the
 * same half-width and n_small nodes (n_small <= 512): the exact norm of the
 * discretised operator on weighted l^2.
 */
double discrete_l2_operator_norm(const MultiplierSymbol& a, const WeightSpec& w, const Grid& grid,
                                 std::size_t n_small = 256);

struct KernelBound {
    double value;   ///< ||F^{-1} a||_{L^1(w)}, +inf when divergent
    bool caveat;    ///< weight outside the e^{cx} / e^{c phi} families
};

KernelBound kernel_l1_upper_bound(const KernelSpec& k, const WeightSpec& w);

struct KAlphaCalibration {
    cplx k_alpha;
    double residual;  ///< max |k F f^- (xi) - a_{-alpha}(xi)| over the reference frequencies
};

/// Fits k_alpha with k_alpha F f^-_{alpha-1} = a_{-alpha} at xi in {-2, -1, 1, 2}.
KAlphaCalibration calibrate_k_alpha(double alpha, const Grid& grid);

}  // namespace fmlab
