#include "fmlab/quadrature.hpp"

#include "fmlab/errors.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace fmlab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double log_add(double x, double y) {
    if (x == -kInf) return y;
    if (y == -kInf) return x;
    if (x == kInf || y == kInf) return kInf;
    const double m = std::max(x, y);
    return m + std::log1p(std::exp(std::min(x, y) - m));
}

// log of integral of e^{k x} over [a, b].
double log_exp_integral(double k, double a, double b) {
    if (!(b > a)) return -kInf;
    const double len = b - a;
    if (k == 0.0) return std::log(len);
    if (k > 0.0) return k * b + std::log(-std::expm1(-k * len)) - std::log(k);
    return k * a + std::log(-std::expm1(k * len)) - std::log(-k);
}

// log of integral of r^t over [u, v], 0 <= u < v.
double log_radial_power(double t, double u, double v) {
    if (!(v > u)) return -kInf;
    const double e = t + 1.0;
    if (u == 0.0 && e <= 0.0) return kInf;
    if (e == 0.0) return std::log(std::log(v / u));
    // v^e - u^e = v^e (1 - (u/v)^e) for e > 0, u^e (1 - (v/u)^e) magnitude for e < 0.
    if (e > 0.0) {
        const double ratio_term = (u == 0.0) ? -1.0 : std::expm1(e * std::log(u / v));
        return e * std::log(v) + std::log(-ratio_term) - std::log(e);
    }
    return e * std::log(u) + std::log(-std::expm1(e * std::log(v / u))) - std::log(-e);
}

// Level sets of a piecewise-constant (Cantor) weight over [a, b]: (value, measure).
std::vector<std::pair<double, double>> cantor_levels(const WeightSpec& w, double a, double b) {
    std::vector<std::pair<double, double>> levels;
    if (const auto* s = std::get_if<weight::CantorFlat>(&w)) {
        const double in_g = FatCantorSet(s->depth).measure_within(a, b);
        levels.emplace_back(1.0, in_g);
        levels.emplace_back(2.0, std::max(0.0, (b - a) - in_g));
        return levels;
    }
    const auto& s = std::get<weight::CantorSeq>(w);
    const FatCantorSet g(s.depth);
    double covered = 0.0;
    auto scan = [&](double lo, double hi) {  // a sub-range of [0, inf)
        if (!(hi > lo)) return;
        const int m_first = std::max(1, static_cast<int>(std::floor((lo - 1.0) / 2.0)));
        const int m_last = static_cast<int>(std::ceil(hi / 2.0));
        for (int m = m_first; m <= m_last; ++m) {
            const double base = 2.0 * m;
            const double part = g.measure_within(std::max(lo, base) - base, std::min(hi, base + 1.0) - base);
            if (part > 0.0) {
                levels.emplace_back(s.b(m), part);
                covered += part;
            }
        }
    };
    scan(std::max(a, 0.0), b);
    scan(std::max(-b, 0.0), -a);
    levels.emplace_back(1.0, std::max(0.0, (b - a) - covered));
    return levels;
}

bool is_cantor(const WeightSpec& w) { return !is_continuous(w); }

}  // namespace

QuadResult integrate(const std::function<double(double)>& f, double a, double b, double rel_tol) {
    double err = 0.0;
    const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(f, a, b, 20, rel_tol, &err);
    return {v, err};  // boost reports an absolute estimate
}

QuadResult integrate_half_line(const std::function<double(double)>& f, double rel_tol) {
    boost::math::quadrature::exp_sinh<double> integrator;
    double err = 0.0, l1 = 0.0;
    const double v = integrator.integrate(f, rel_tol, &err, &l1);
    return {v, err};
}

LogIntegral log_power_integral(const WeightSpec& w, double s, double a, double b) {
    if (!(b > a)) return {-kInf, 0.0, true};
    if (const auto* c = std::get_if<weight::Constant>(&w)) return {s * std::log(c->c) + std::log(b - a), 0.0, true};
    if (const auto* e = std::get_if<weight::Exp>(&w)) return {log_exp_integral(s * e->c, a, b), 0.0, true};
    if (const auto* e = std::get_if<weight::ExpAbs>(&w)) {
        const double k = s * e->c;
        double v = -kInf;
        if (a < 0.0) v = log_add(v, log_exp_integral(-k, a, std::min(b, 0.0)));
        if (b > 0.0) v = log_add(v, log_exp_integral(k, std::max(a, 0.0), b));
        return {v, 0.0, true};
    }
    if (const auto* pw = std::get_if<weight::PowerAbs>(&w)) {
        const double t = s * pw->gamma;
        double v = -kInf;
        if (a < 0.0) v = log_add(v, log_radial_power(t, std::max(0.0, -b), -a));
        if (b > 0.0) v = log_add(v, log_radial_power(t, std::max(0.0, a), b));
        return {v, 0.0, true};
    }
    if (const auto* pw = std::get_if<weight::PowerOnePlus>(&w)) {
        const double t = s * pw->alpha;
        double v = -kInf;
        if (a < 0.0) v = log_add(v, log_radial_power(t, 1.0 + std::max(0.0, -b), 1.0 - a));
        if (b > 0.0) v = log_add(v, log_radial_power(t, 1.0 + std::max(0.0, a), 1.0 + b));
        return {v, 0.0, true};
    }
    if (is_cantor(w)) {
        double v = -kInf;
        for (auto [level, measure] : cantor_levels(w, a, b))
            if (measure > 0.0) v = log_add(v, s * std::log(level) + std::log(measure));
        return {v, 0.0, true};
    }

    // Smooth families without a closed form: integrate exp(s log w - M) piecewise.
    std::vector<double> cuts{a};
    for (double x : breakpoints(w, a, b)) cuts.push_back(x);
    cuts.push_back(b);
    double total = -kInf, worst = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        const double shift = std::max(s * log_weight(w, lo), s * log_weight(w, hi));
        auto g = [&](double x) { return std::exp(s * log_weight(w, x) - shift); };
        // x = +-t^2 on pieces ending at 0 removes |x|^beta cusps (SubExp)
        QuadResult r;
        if (lo == 0.0)
            r = integrate([&](double t) { return 2.0 * t * g(t * t); }, 0.0, std::sqrt(hi), 1e-12);
        else if (hi == 0.0)
            r = integrate([&](double t) { return 2.0 * t * g(-t * t); }, 0.0, std::sqrt(-lo), 1e-12);
        else
            r = integrate(g, lo, hi, 1e-12);
        if (!(r.value > 0.0)) throw NumericalError("weight power integral vanished or failed", r.abs_error);
        worst = std::max(worst, r.abs_error / r.value);
        total = log_add(total, shift + std::log(r.value));
    }
    return {total, worst, false};
}

double log_power_ess_sup(const WeightSpec& w, double s, double a, double b) {
    if (is_cantor(w)) {
        double best = -kInf;
        for (auto [level, measure] : cantor_levels(w, a, b))
            if (measure > 0.0) best = std::max(best, s * std::log(level));
        return best;
    }
    double best = std::max(s * log_weight(w, a), s * log_weight(w, b));
    if (a < 0.0 && b > 0.0) best = std::max(best, s * log_weight(w, 0.0));
    return best;
}

}  // namespace fmlab
