#include "fmlab/mollify.hpp"

#include "fmlab/errors.hpp"
#include "fmlab/multipliers.hpp"
#include "fmlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

namespace fmlab {

namespace {

// Cumulative bump table on [-1, 0]; cubic Hermite between nodes (derivative is known exactly).
// Cells are narrow enough for a fixed 10-point Gauss rule.
constexpr int kCdfCells = 4096;

struct CdfTable {
    std::array<double, kCdfCells + 1> value{};
    double step = 1.0 / kCdfCells;

    CdfTable() {
        const double z = bump_mass();
        value[0] = 0.0;
        for (int i = 0; i < kCdfCells; ++i) {
            const double a = -1.0 + i * step, b = a + step;
            value[i + 1] = value[i] + boost::math::quadrature::gauss<double, 10>::integrate(bump, a, b) / z;
        }
    }
};

const CdfTable& cdf_table() {
    static const CdfTable table;
    return table;
}

// Trapezoid nodes of the even integrand on [0, 1]; exact up to aliasing for |Re zeta| < pi * kTrapezoid.
constexpr int kTrapezoid = 2048;
constexpr double kAliasGuard = 3000.0;

const std::array<double, kTrapezoid + 1>& trapezoid_weights() {
    static const auto table = [] {
        std::array<double, kTrapezoid + 1> w{};
        const double dx = 1.0 / kTrapezoid;
        for (int m = 0; m <= kTrapezoid; ++m) w[m] = 2.0 * dx * bump(m * dx) / bump_mass();
        w[0] *= 0.5;
        return w;
    }();
    return table;
}

}  // namespace

double bump(double x) {
    const double d = x * x - 1.0;
    return d < 0.0 ? std::exp(1.0 / d) : 0.0;
}

double bump_mass() {
    static const double z = integrate(bump, -1.0, 1.0, 1e-15).value;
    return z;
}

double bump_cdf(double u) {
    if (u <= -1.0) return 0.0;
    if (u >= 1.0) return 1.0;
    if (u > 0.0) return 1.0 - bump_cdf(-u);
    const CdfTable& t = cdf_table();
    const double s = (u + 1.0) / t.step;
    const int i = std::min(kCdfCells - 1, static_cast<int>(s));
    const double r = s - i, a = -1.0 + i * t.step, z = bump_mass();
    const double d0 = bump(a) / z * t.step, d1 = bump(a + t.step) / z * t.step;
    const double r2 = r * r, r3 = r2 * r;
    // Hermite undershoots by a few ulp right next to -1
    return std::max(0.0, (2 * r3 - 3 * r2 + 1) * t.value[i] + (r3 - 2 * r2 + r) * d0 +
                             (-2 * r3 + 3 * r2) * t.value[i + 1] + (r3 - r2) * d1);
}

cplx bump_transform(cplx zeta) {
    if (std::abs(zeta.real()) > kAliasGuard) return {0.0, 0.0};
    const auto& w = trapezoid_weights();
    const double dx = 1.0 / kTrapezoid;
    if (zeta.imag() == 0.0) {
        double sum = 0.0;
        for (int m = 0; m < kTrapezoid; ++m) sum += w[m] * std::cos(m * dx * zeta.real());
        return {sum, 0.0};
    }
    cplx sum{0.0, 0.0};
    for (int m = 0; m < kTrapezoid; ++m) sum += w[m] * std::cos(m * dx * zeta);
    return sum;
}

double MollifierSpec::operator()(double x) const { return j * bump(j * x) / bump_mass(); }

SampledFunction mollifier(int j, const Grid& grid) {
    if (j < 1) throw PreconditionError("mollifier index j must be positive");
    if (grid.spacing() > 1.0 / (8.0 * j))
        throw PreconditionError("grid spacing " + std::to_string(grid.spacing()) + " does not resolve the support of rho_" +
                                std::to_string(j) + " (need h <= 1/(8j))");
    const MollifierSpec rho{j};
    std::vector<cplx> v(grid.size());
    double sum = 0.0;
    for (std::size_t n = 0; n < grid.size(); ++n) {
        const double r = rho(grid.node(n));
        v[n] = r;
        sum += r;
    }
    const double scale = 1.0 / (grid.spacing() * sum);
    for (auto& x : v) x *= scale;
    return SampledFunction(grid, std::move(v));
}

double decay_constant(const SampledFunction& psi, double sigma) {
    double c = 0.0;
    for (std::size_t n = 0; n < psi.size(); ++n)
        c = std::max(c, std::abs(psi[n]) * std::pow(1.0 + std::abs(psi.grid().node(n)), sigma));
    return c;
}

double lebesgue_point_integral(const MultiplierSymbol& a, double eta, const SampledFunction& psi, double delta) {
    if (!(delta > 0.0)) throw PreconditionError("lebesgue_point_integral needs delta > 0");
    const Grid& g = psi.grid();
    // envelope fitted on the inner half, required to hold (within 10x) on the outer half
    double inner = 0.0, outer = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const double z = g.node(n), env = std::abs(psi[n]) * std::pow(1.0 + std::abs(z), 2.0);
        double& slot = std::abs(z) <= g.half_width() / 2 ? inner : outer;
        slot = std::max(slot, env);
    }
    if (outer > 10.0 * inner)
        throw PreconditionError("psi does not decay like (1+|xi|)^{-2} on its grid");

    const cplx centre = a(eta);
    double sum = 0.0;
    for (std::size_t n = 0; n < g.size(); ++n) {
        const double m = std::abs(psi[n]);
        if (m == 0.0) continue;
        sum += std::abs(a(eta - delta * g.node(n)) - centre) * m;
    }
    return g.spacing() * sum;
}

ApproxSequence bounded_l2_approx_sequence(const SampledFunction& u, const SpaceSpec& space, int stages) {
    if (!is_continuous(space.weight))
        throw PreconditionError(
            "bounded L2 approximation needs a continuous weight; the fat-Cantor weights are exactly the "
            "counterexample where the property fails");
    if (stages < 1) throw PreconditionError("need at least one stage");
    const Grid& g = u.grid();
    const std::size_t n_nodes = g.size();

    // tail(R) = ||u chi_{|x| >= R}||_2 is nonincreasing in R
    auto truncated = [&](double R) {
        std::vector<cplx> v(n_nodes);
        for (std::size_t n = 0; n < n_nodes; ++n)
            if (std::abs(g.node(n)) < R) v[n] = u[n];
        return SampledFunction(g, std::move(v));
    };
    auto tail = [&](double R) {
        double s = 0.0;
        for (std::size_t n = 0; n < n_nodes; ++n)
            if (std::abs(g.node(n)) >= R) s += std::norm(u[n]);
        return std::sqrt(g.spacing() * s);
    };

    ApproxSequence seq{{}, l2_norm(u), weighted_lp_norm(u, space), 0.0};
    for (int j = 1; j <= stages; ++j) {
        const double target = std::ldexp(1.0, -j);
        double lo = 0.0, hi = g.half_width() + g.spacing();
        if (tail(lo) > target) {
            for (int it = 0; it < 60 && hi - lo > 0.25 * g.spacing(); ++it) {
                const double mid = 0.5 * (lo + hi);
                (tail(mid) <= target ? hi : lo) = mid;
            }
        } else {
            hi = 0.0;
        }
        const double R = hi;
        const SampledFunction cut = truncated(R);
        SampledFunction v = convolve(mollifier(j, g), cut).value;
        const double err = l2_norm(u - v);
        const double wn = weighted_lp_norm(v, space);
        seq.stages.push_back({j, R, tail(R), err, wn, std::move(v)});
    }
    const std::size_t first = seq.stages.size() > 5 ? seq.stages.size() - 5 : 0;
    for (std::size_t i = first; i < seq.stages.size(); ++i)
        seq.limsup_proxy = std::max(seq.limsup_proxy, seq.stages[i].weighted_norm);
    return seq;
}

namespace {

bool is_exp_preset(const WeightSpec& ws, const WeightSpec& w) {
    const auto* a = std::get_if<weight::Exp>(&ws);
    const auto* b = std::get_if<weight::Exp>(&w);
    return a && b && a->c == b->c;
}

bool is_phi_preset(const WeightSpec& ws, const WeightSpec& w, const SupportConstraint& omega) {
    const auto* a = std::get_if<weight::PhiExp>(&ws);
    const auto* b = std::get_if<weight::PhiExp>(&w);
    return a && b && a->c == b->c && omega.hi <= 0.0;
}

}  // namespace

YoungCheck weighted_young_check(const SampledFunction& kappa, const SampledFunction& f, const WeightSpec& w_star,
                                const WeightSpec& w, double p, SupportConstraint omega) {
    if (!(kappa.grid() == f.grid())) throw PreconditionError("kappa and f must share a grid");
    if (!(p >= 1.0)) throw RangeError("p must be >= 1");
    validate(w_star);
    validate(w);
    const Grid& g = f.grid();
    const std::size_t N = g.size();

    std::vector<std::size_t> support;
    for (std::size_t m = 0; m < N; ++m) {
        if (kappa[m] == cplx{0.0, 0.0}) continue;
        if (!omega.contains(g.node(m)))
            throw PreconditionError("supp kappa is not contained in Omega (node x = " + std::to_string(g.node(m)) + ")");
        support.push_back(m);
    }

    const bool preset = is_exp_preset(w_star, w) || is_phi_preset(w_star, w, omega);
    if (!preset) {
        constexpr int kLattice = 128;
        const double ylo = std::max(omega.lo, -g.half_width()), yhi = std::min(omega.hi, g.half_width());
        for (int i = 0; i < kLattice; ++i) {
            const double x = -g.half_width() + 2.0 * g.half_width() * i / (kLattice - 1);
            for (int k = 0; k < kLattice; ++k) {
                const double y = ylo + (yhi - ylo) * k / (kLattice - 1);
                const double lhs = log_weight(w_star, y) + log_weight(w, x - y) - log_weight(w, x);
                if (lhs < -1e-12)
                    throw PreconditionError("kernel hypothesis w*(y) w(x-y) / w(x) >= 1 fails at x = " +
                                            std::to_string(x) + ", y = " + std::to_string(y));
            }
        }
    }

    // (kappa * f)(x_n) = h sum_m kappa(x_m) f(x_n - x_m); x_n - x_m is node n - m + N/2
    std::vector<cplx> conv(N);
    const auto half = static_cast<std::ptrdiff_t>(N / 2);
    for (std::size_t m : support) {
        const cplx km = kappa[m] * g.spacing();
        for (std::size_t n = 0; n < N; ++n) {
            const std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(n) - static_cast<std::ptrdiff_t>(m) + half;
            if (idx < 0 || idx >= static_cast<std::ptrdiff_t>(N)) continue;
            conv[n] += km * f[static_cast<std::size_t>(idx)];
        }
    }
    const SpaceSpec X{p, w};
    const double lhs = weighted_lp_norm(SampledFunction(g, std::move(conv)), X);
    const double rhs = weighted_lp_norm(kappa, SpaceSpec{1.0, w_star}) * weighted_lp_norm(f, X);
    return YoungCheck{lhs, rhs, lhs <= rhs * (1.0 + 1e-6) + 1e-9, preset};
}

}  // namespace fmlab
