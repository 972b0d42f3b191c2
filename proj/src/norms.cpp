#include "fmlab/norms.hpp"

#include "fmlab/errors.hpp"
#include "fmlab/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fmlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kBallRelTol = 1e-8;

void require_radius(double R) {
    if (!(R > 0.0) || !std::isfinite(R)) throw PreconditionError("ball radius must be positive and finite");
}

double checked_log_integral(const WeightSpec& w, double s, double a, double b) {
    const LogIntegral li = log_power_integral(w, s, a, b);
    if (!li.closed_form && li.rel_error > kBallRelTol)
        throw NumericalError("ball norm quadrature did not reach relative tolerance 1e-8", li.rel_error);
    return li.log_value;
}

void require_interior_p(const SpaceSpec& space, const char* what) {
    if (!(space.p > 1.0) || space.is_sup()) throw PreconditionError(std::string(what) + " requires 1 < p < inf");
}

}  // namespace

double SpaceSpec::conjugate() const noexcept {
    if (p == 1.0) return kInfinity;
    if (is_sup()) return 1.0;
    return p / (p - 1.0);
}

SpaceSpec make_space(double p, WeightSpec weight) {
    if (!(p >= 1.0)) throw RangeError("exponent p must satisfy p >= 1 (or be inf)");
    validate(weight);
    return SpaceSpec{p, std::move(weight)};
}

double weighted_lp_norm(const SampledFunction& f, const SpaceSpec& space) {
    const Grid& g = f.grid();
    std::vector<double> mags(f.size());
    double peak = 0.0;
    for (std::size_t n = 0; n < f.size(); ++n) {
        const double a = std::abs(f[n]);
        if (a == 0.0) continue;
        const double w = eval_weight(space.weight, g.node(n));
        if (!(w <= 1e300)) throw NumericalError("weight exceeds 1e300 on the support of f", w);
        mags[n] = a * w;
        peak = std::max(peak, mags[n]);
    }
    if (peak == 0.0) return 0.0;
    if (space.is_sup()) return peak;
    double sum = 0.0;
    for (double m : mags) sum += std::pow(m / peak, space.p);
    return peak * std::pow(g.spacing() * sum, 1.0 / space.p);
}

double log_ball_indicator_norm(const SpaceSpec& space, double y, double R) {
    require_radius(R);
    if (space.is_sup()) return log_power_ess_sup(space.weight, 1.0, y - R, y + R);
    return checked_log_integral(space.weight, space.p, y - R, y + R) / space.p;
}

double ball_indicator_norm(const SpaceSpec& space, double y, double R) {
    return std::exp(log_ball_indicator_norm(space, y, R));
}

double log_dual_ball_indicator_norm(const SpaceSpec& space, double y, double R) {
    require_radius(R);
    const double q = space.conjugate();
    if (q == kInf) return log_power_ess_sup(space.weight, -1.0, y - R, y + R);
    return checked_log_integral(space.weight, -q, y - R, y + R) / q;
}

double doubling_ratio(const SpaceSpec& space, double tau, double y, double R) {
    if (!(tau > 1.0)) throw PreconditionError("doubling ratio needs tau > 1");
    return std::exp(log_ball_indicator_norm(space, y, tau * R) - log_ball_indicator_norm(space, y, R));
}

DoublingReport doubling_constant_estimate(const SpaceSpec& space, double tau, std::span<const double> R_schedule,
                                          std::span<const double> y_search) {
    if (R_schedule.empty() || y_search.empty()) throw PreconditionError("doubling estimate needs nonempty schedules");
    if (!std::is_sorted(R_schedule.begin(), R_schedule.end()))
        throw PreconditionError("R schedule must be increasing");
    DoublingReport rep{tau, {R_schedule.begin(), R_schedule.end()}, {y_search.begin(), y_search.end()}, {}, {}, {}, 0.0};
    rep.ratios.assign(R_schedule.size(), std::vector<double>(y_search.size()));
    for (std::size_t r = 0; r < R_schedule.size(); ++r) {
        double best = kInf, best_y = y_search.front();
        for (std::size_t i = 0; i < y_search.size(); ++i) {
            const double v = doubling_ratio(space, tau, y_search[i], R_schedule[r]);
            rep.ratios[r][i] = v;
            if (v < best) {
                best = v;
                best_y = y_search[i];
            }
        }
        rep.per_R_inf.push_back(best);
        rep.per_R_argmin_y.push_back(best_y);
    }
    const std::size_t n = rep.per_R_inf.size();
    rep.liminf_estimate = *std::min_element(rep.per_R_inf.begin() + static_cast<std::ptrdiff_t>(n / 2), rep.per_R_inf.end());
    return rep;
}

WitnessSequence weak_doubling_witness(const SpaceSpec& space, double tau, int count) {
    const auto* sub = std::get_if<weight::SubExp>(&space.weight);
    if (!sub) throw PreconditionError("weak doubling witness is constructed for subexponential weights only");
    if (!(sub->beta < 1.0)) throw PreconditionError("witness needs beta < 1 so that phi(r) = c r^{beta-1} decreases");
    if (!(tau > 1.0) || count < 1) throw PreconditionError("witness needs tau > 1 and count >= 1");

    auto phi = [&](double r) { return sub->c * std::pow(r, sub->beta - 1.0); };
    auto radius = [&](int j) { return 1.0 / std::sqrt(phi(static_cast<double>(j))); };

    int shift = 0;
    for (int j = 1; j <= count; ++j) {
        const double need = tau * radius(j) - j;  // y_j - tau R_j > 0  <=>  m > need
        if (need >= shift) shift = static_cast<int>(std::floor(need)) + 1;
    }
    WitnessSequence seq{tau, shift, std::exp((tau + 1.0) * std::sqrt(phi(1.0))), {}};
    for (int j = 1; j <= count; ++j) {
        const double y = static_cast<double>(j + shift), R = radius(j);
        seq.points.push_back({j, y, R, doubling_ratio(space, tau, y, R)});
    }
    return seq;
}

std::vector<Interval> dyadic_family(int K) {
    if (K < 0 || K > 20) throw PreconditionError("dyadic family level K must lie in [0, 20]");
    std::vector<Interval> out;
    const double reach = std::ldexp(1.0, K);
    for (int l = -K; l <= K; ++l) {
        const double len = std::ldexp(1.0, l);
        // centres (m + 1/2) len in [-reach, reach]
        const auto m_lo = static_cast<long long>(std::ceil(-reach / len - 0.5));
        const auto m_hi = static_cast<long long>(std::floor(reach / len - 0.5));
        for (long long m = m_lo; m <= m_hi; ++m) out.push_back({static_cast<double>(m) * len, static_cast<double>(m + 1) * len});
    }
    return out;
}

namespace {

template <class PerInterval>
std::pair<double, Interval> sup_over(std::span<const Interval> family, PerInterval&& log_value) {
    double best = -kInf;
    Interval arg{0.0, 0.0};
    for (const auto& q : family) {
        const double v = log_value(q);
        if (v > best || std::isnan(v)) {
            best = std::isnan(v) ? kInf : v;
            arg = q;
        }
        if (best == kInf) break;
    }
    return {best, arg};
}

double log_ap_term(const SpaceSpec& space, const Interval& q) {
    const double p = space.p, pc = space.conjugate();
    const double log_len = std::log(q.hi - q.lo);
    const double up = log_power_integral(space.weight, p, q.lo, q.hi).log_value;
    const double down = log_power_integral(space.weight, -pc, q.lo, q.hi).log_value;
    if (up == kInf || down == kInf) return kInf;
    return (up - log_len) / p + (down - log_len) / pc;
}

double log_ax_term(const SpaceSpec& space, const Interval& q) {
    const double centre = 0.5 * (q.lo + q.hi), half = 0.5 * (q.hi - q.lo);
    const double primal = log_ball_indicator_norm(space, centre, half);
    const double dual = log_dual_ball_indicator_norm(space, centre, half);
    if (primal == kInf || dual == kInf) return kInf;
    return primal + dual - std::log(q.hi - q.lo);
}

}  // namespace

double ap_constant(const SpaceSpec& space, std::span<const Interval> family) {
    require_interior_p(space, "A_p constant");
    return std::exp(sup_over(family, [&](const Interval& q) { return log_ap_term(space, q); }).first);
}

double ax_constant(const SpaceSpec& space, std::span<const Interval> family) {
    require_interior_p(space, "A_X constant");
    return std::exp(sup_over(family, [&](const Interval& q) { return log_ax_term(space, q); }).first);
}

ApReport ap_constant(const SpaceSpec& space, int K) {
    require_interior_p(space, "A_p constant");
    const auto fine = dyadic_family(K);
    const auto [best, arg] = sup_over(std::span<const Interval>(fine), [&](const Interval& q) { return log_ap_term(space, q); });
    const auto coarse = dyadic_family(std::max(0, K - 2));
    return ApReport{std::exp(best), ap_constant(space, coarse), K, arg};
}

ApReport ax_constant(const SpaceSpec& space, int K) {
    require_interior_p(space, "A_X constant");
    const auto fine = dyadic_family(K);
    const auto [best, arg] = sup_over(std::span<const Interval>(fine), [&](const Interval& q) { return log_ax_term(space, q); });
    const auto coarse = dyadic_family(std::max(0, K - 2));
    return ApReport{std::exp(best), ax_constant(space, coarse), K, arg};
}

double lofstrom_ratio(const WeightSpec& w, double x0, double eps, int k) {
    if (x0 == 0.0 || !(eps > 0.0) || !(eps < std::abs(x0) / 2.0))
        throw PreconditionError("lofstrom ratio needs x0 != 0 and 0 < eps < |x0|/2");
    if (k < 1) throw PreconditionError("lofstrom ratio needs k >= 1");
    const double xk = (k + 1.0) * x0;
    constexpr int kSteps = 64;
    double num_min = kInf, den_max = -kInf;
    for (int i = -kSteps; i <= kSteps; ++i) {
        const double t = eps * static_cast<double>(i) / kSteps;
        num_min = std::min(num_min, log_weight(w, xk + t));
        den_max = std::max(den_max, log_weight(w, xk - x0 + t));
    }
    return std::exp(num_min - den_max);
}

}  // namespace fmlab
