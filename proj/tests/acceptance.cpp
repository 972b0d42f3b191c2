// Acceptance gate: one pass/fail line per criterion, each under its time budget.
#include "oracles.hpp"

#include "fmlab/mollify.hpp"
#include "fmlab/multipliers.hpp"
#include "fmlab/norms.hpp"
#include "fmlab/scenarios.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

using namespace fmlab;
namespace w = fmlab::weight;

namespace {

struct Outcome {
    bool ok;
    std::string detail;
};

double max_grid_abs(const MultiplierSymbol& a, const Grid& g) {
    double m = 0;
    for (auto v : a.sample(g)) m = std::max(m, std::abs(v));
    return m;
}

// 1. w = 1: dense norm equals max |a| on the lattice
Outcome l2_identity() {
    Grid g(16.0, 256);
    std::mt19937_64 rng(1001);
    double worst = 0;
    for (int t = 0; t < 100; ++t) {
        auto a = random_symbol(g, rng(), 0.1 + 2.0 * double(rng() % 100) / 100);
        const double n = discrete_l2_operator_norm(a, w::Constant{1}, g, 256), m = max_grid_abs(a, g);
        worst = std::max(worst, std::abs(n - m) / m);
    }
    return {worst <= 1e-10, "max relative error " + std::to_string(worst)};
}

// 2. certificate for 1/(1+xi^2) on L^2((1+|x|)^0.2), and its stability under refinement
Outcome certificate_convergence() {
    auto a = MultiplierSymbol::lorentzian();
    auto space = make_space(2, w::PowerOnePlus{0.2});
    const std::vector<double> etas{0.0}, ys{0.0};
    Grid g(32.0, 2048), fine(64.0, 4096);
    auto d = default_delta_schedule(g), df = default_delta_schedule(fine);
    const double best = certificate_sweep(a, space, g, etas, d, ys).overall;
    const double refined = certificate_sweep(a, space, fine, etas, df, ys).overall;
    const bool ok = best >= 0.95 && refined >= best - 1e-3;
    return {ok, "best " + std::to_string(best) + " (delta down to " + std::to_string(d.back()) + "), refined " +
                    std::to_string(refined) + " (delta down to " + std::to_string(df.back()) + ")"};
}

// 3. every probe below the dense norm on the same grid
Outcome certificate_soundness() {
    std::mt19937_64 rng(3003);
    Grid g(32.0, 512);
    std::vector<MultiplierSymbol> symbols{MultiplierSymbol::lorentzian(), MultiplierSymbol::band_indicator(-1, 1),
                                          MultiplierSymbol::mollifier_transform(1), MultiplierSymbol::modulation(1.5),
                                          random_symbol(g, 17), random_symbol(g, 18)};
    std::vector<WeightSpec> weights{w::Constant{1},  w::PowerOnePlus{0.2}, w::PowerOnePlus{-0.3}, w::Exp{0.3},
                                    w::ExpAbs{0.2},  w::SubExp{1, 0.5},    w::CantorFlat{6}};
    std::map<std::pair<std::size_t, std::size_t>, double> norms;
    std::uniform_real_distribution<double> ueta(-3, 3), uy(-8, 8);
    const std::vector<double> deltas{0.5, 0.25};
    double worst = -1e300;
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t si = rng() % symbols.size(), wi = rng() % weights.size();
        auto key = std::make_pair(si, wi);
        if (!norms.count(key)) norms[key] = discrete_l2_operator_norm(symbols[si], weights[wi], g, 512);
        const double delta = deltas[rng() % 2];
        const double y = delta == 0.25 ? 0.0 : uy(rng);
        const double lb = probe_lower_bound(symbols[si], make_space(2, weights[wi]), g, ueta(rng), delta, y).lower_bound;
        worst = std::max(worst, lb - norms[key]);
        if (lb > norms[key] + 1e-6) ++bad;
    }
    return {bad == 0, std::to_string(bad) + " violations, max(lb - norm) " + std::to_string(worst)};
}

// 4. doubling dichotomy
Outcome doubling_dichotomy() {
    std::string msg;
    bool ok = true;
    const std::vector<double> R{1, 4, 16, 64}, ys{-5, 0, 7};
    for (double p : {1.0, 2.0, 3.0})
        for (double tau : {1.5, 2.0, 4.0}) {
            auto rep = doubling_constant_estimate(make_space(p, w::Constant{1}), tau, R, ys);
            ok = ok && std::abs(rep.liminf_estimate - std::pow(tau, 1 / p)) <= 1e-10;
        }
    msg += ok ? "const ok; " : "const FAILED; ";

    const double c = 1, tau = 2;
    const std::vector<double> Re{4, 8, 16};
    std::vector<double> yse;
    for (int y = -20; y <= 20; y += 5) yse.push_back(y);
    auto e = doubling_constant_estimate(make_space(2, w::Exp{c}), tau, Re, yse);
    bool grow = true;
    for (std::size_t i = 1; i < Re.size(); ++i) {
        const double need = 0.9 * std::exp(c * (tau - 1) * (Re[i] - Re[i - 1]) / 2);
        grow = grow && e.per_R_inf[i] > e.per_R_inf[i - 1] && e.per_R_inf[i] / e.per_R_inf[i - 1] > need;
    }
    msg += grow ? "exp growth ok; " : "exp growth FAILED; ";

    auto wit = weak_doubling_witness(make_space(2, w::SubExp{1, 0.5}), 2, 20);
    double wmax = 0;
    for (const auto& pt : wit.points) wmax = std::max(wmax, pt.ratio);
    const bool bounded = wmax <= std::exp(3.0);
    msg += "subexp witness max " + std::to_string(wmax);
    return {ok && grow && bounded, msg};
}

// 5. A_p classifier
Outcome ap_classifier() {
    bool ok = true;
    std::string msg;
    for (double g : {-0.3, 0.0, 0.2}) {
        auto space = make_space(2, w::PowerAbs{g});
        const double a8 = ap_constant(space, 8).value, a10 = ap_constant(space, 10).value;
        const bool st = std::isfinite(a10) && std::abs(a10 - a8) <= 0.01 * a8;
        ok = ok && st;
        msg += "gamma=" + std::to_string(g).substr(0, 5) + ": " + std::to_string(a10) + (st ? "" : " UNSTABLE") + "; ";
    }
    for (double g : {-0.6, 0.6}) {
        const bool inf = std::isinf(ap_constant(make_space(2, w::PowerAbs{g}), 10).value);
        ok = ok && inf;
        msg += std::string("gamma=") + (g < 0 ? "-0.6" : "0.6") + (inf ? ": inf; " : ": FINITE; ");
    }
    const double one = ap_constant(make_space(2, w::Constant{1}), 10).value;
    ok = ok && one == 1.0;
    msg += "const: " + std::to_string(one);
    return {ok, msg};
}

// 6. weighted Young under the two presets
Outcome young_presets() {
    std::mt19937_64 rng(6006);
    Grid g(16.0, 1024);
    std::uniform_real_distribution<double> uc(0.2, 1.5), ushift(-3, 3), uwidth(0.1, 0.8), uamp(0.2, 2);
    int bad = 0;
    double worst = 0;
    for (int t = 0; t < 200; ++t) {
        const double c = uc(rng);
        const bool phi = t % 2;
        const double width = uwidth(rng);
        // kappa: a random bump, inside (-inf, 0] for the PhiExp preset
        const double centre = phi ? -width - std::abs(ushift(rng)) : ushift(rng);
        const double amp = uamp(rng), freq = 3 * uamp(rng);
        auto kappa = SampledFunction::from(g, [&](double x) {
            const double u = (x - centre) / width;
            return u * u < 1 ? amp * std::exp(1 / (u * u - 1)) * std::cos(freq * x) : 0.0;
        });
        auto f = oracle::random_smooth(g, rng, 2.0);
        const double p = 1 + 2 * uwidth(rng);
        YoungCheck yc = phi ? weighted_young_check(kappa, f, w::PhiExp{c}, w::PhiExp{c}, p, {-SpaceSpec::kInfinity, 0.0})
                            : weighted_young_check(kappa, f, w::Exp{c}, w::Exp{c}, p, {});
        if (!yc.holds) ++bad;
        if (yc.rhs > 0) worst = std::max(worst, yc.lhs / yc.rhs);
    }
    return {bad == 0, std::to_string(bad) + " violations, max lhs/rhs " + std::to_string(worst)};
}

Outcome scenario_outcome(const ScenarioReport& r) {
    int failed = 0;
    std::string first;
    for (const auto& row : r.rows)
        if (!row.pass) {
            if (!failed) first = row.label;
            ++failed;
        }
    return {r.overall_pass(), std::to_string(r.rows.size()) + " rows, " + std::to_string(failed) + " failing" +
                                  (failed ? " (first: " + first + ")" : "")};
}

// 7.
Outcome two_classes() { return scenario_outcome(two_classes_demo({8, 1.0, 0, 5})); }

// 8.
Outcome exp_unbounded() { return scenario_outcome(exp_weight_unbounded_demo({1.0, 0.5, 2.0})); }

// 9. Lebesgue point lemma for 1/(1+xi^2).
// Away from the critical point eta=0 the slope term only takes over below delta=1/2, so the
// halving sequence starts there; at eta=0 it starts at 1.
Outcome lebesgue() {
    Grid g(32.0, 2048);
    auto psi = forward_transform(smooth_plateau_bump(2.0, g)).as_function();
    auto a = MultiplierSymbol::lorentzian();
    bool ok = true;
    std::string msg;
    for (double eta : {0.0, 0.5, 1.0, -2.0}) {
        const int k0 = eta == 0.0 ? 0 : 1;
        std::vector<double> I;
        for (int k = k0; k <= 11; ++k) I.push_back(lebesgue_point_integral(a, eta, psi, std::ldexp(1.0, -k)));
        double worst = 0;
        for (std::size_t i = 1; i < I.size(); ++i) ok = ok && I[i] < I[i - 1];
        for (std::size_t i = 3; i < I.size(); ++i) worst = std::max(worst, I[i] / I[i - 3]);
        ok = ok && worst < 0.25;
        msg += "eta=" + std::to_string(eta).substr(0, 4) + " from 2^-" + std::to_string(k0) +
               " max I(d/8)/I(d)=" + std::to_string(worst) + "; ";
    }
    return {ok, msg};
}

// 10. submultiplicativity and powers
Outcome algebra() {
    std::mt19937_64 rng(10010);
    Grid g(16.0, 128);
    int bad = 0;
    double worst = -1e300;
    for (int t = 0; t < 50; ++t) {
        auto a = random_symbol(g, rng(), 1.5), b = random_symbol(g, rng(), 1.5);
        auto spec = oracle::random_catalog_weight(rng);
        const double na = discrete_l2_operator_norm(a, spec, g, 128), nb = discrete_l2_operator_norm(b, spec, g, 128);
        const double nab = discrete_l2_operator_norm(MultiplierSymbol::product(a, b), spec, g, 128);
        worst = std::max(worst, nab - na * nb);
        if (nab > na * nb + 1e-8) ++bad;
        for (int m = 2; m <= 5; ++m) {
            const double nm = discrete_l2_operator_norm(MultiplierSymbol::power(a, m), spec, g, 128);
            const double bound = std::pow(na, m);
            if (nm > bound + 1e-8 * std::max(1.0, bound)) ++bad;
        }
    }
    return {bad == 0, std::to_string(bad) + " violations, max(norm(ab) - norm(a)norm(b)) " + std::to_string(worst)};
}

// 11. triviality ratio, Exp contrast included in the report rows
Outcome superexp() {
    auto r = superexp_triviality_demo();
    auto out = scenario_outcome(r);
    double spread = 0;
    for (int k = 1; k <= 20; ++k)
        spread = std::max(spread, std::abs(lofstrom_ratio(w::Exp{1}, 1, 0.25, k) / lofstrom_ratio(w::Exp{1}, 1, 0.25, 1) - 1));
    out.ok = out.ok && spread < 1e-12;
    out.detail += ", Exp(1) spread over k " + std::to_string(spread);
    return out;
}

// 12. transform fidelity
Outcome transforms() {
    bool ok = true;
    std::string msg;
    {
        Grid g(20.0, 1024);
        auto f = SampledFunction::from(g, [](double x) { return std::exp(-x * x / 2); });
        auto S = forward_transform(f);
        auto D = oracle::direct_dft(g, f.values());
        double e1 = 0, e2 = 0;
        for (std::size_t i = 0; i < S.size(); ++i) {
            const double xi = S.frequency(i);
            e1 = std::max(e1, std::abs(S[i] - D[i]));
            e2 = std::max(e2, std::abs(S[i] - std::sqrt(2 * oracle::kPi) * std::exp(-xi * xi / 2)));
        }
        ok = ok && e1 <= 1e-8 && e2 <= 1e-8;
        msg += "gaussian " + std::to_string(std::max(e1, e2)) + "; ";
    }
    std::mt19937_64 rng(12012);
    Grid g(16.0, 1024);
    double plan = 0, modl = 0, conv = 0;
    for (int t = 0; t < 10; ++t) {
        auto f = oracle::random_smooth(g, rng, 2.0), h = oracle::random_smooth(g, rng, 2.0);
        auto S = forward_transform(f);
        double s2 = 0;
        for (auto v : S.values()) s2 += std::norm(v);
        s2 *= g.frequency_step() / (2 * oracle::kPi);
        plan = std::max(plan, std::abs(s2 - std::pow(l2_norm(f), 2)) / std::pow(l2_norm(f), 2));

        const int shift = int(rng() % 64) - 32;
        const double eta = shift * g.frequency_step();
        auto Sm = forward_transform(pointwise_product(SampledFunction::from(g, [&](double x) { return std::polar(1.0, -eta * x); }), f));
        for (std::size_t i = 0; i < S.size(); ++i) {
            const long j = long(i) + shift;
            if (j >= 0 && j < long(S.size())) modl = std::max(modl, std::abs(Sm[i] - S[std::size_t(j)]));
        }

        Grid g2(32.0, 2048);
        auto embed = [&](const SampledFunction& s) {
            std::vector<cplx> v(2048);
            for (std::size_t n = 0; n < 1024; ++n) v[n + 512] = s[n];
            return SampledFunction(g2, v);
        };
        auto Fc = forward_transform(embed(convolve(f, h).value)), Ff = forward_transform(embed(f)),
             Fh = forward_transform(embed(h));
        double m = 0, sc = 0;
        for (std::size_t i = 0; i < Fc.size(); ++i) {
            m = std::max(m, std::abs(Fc[i] - Ff[i] * Fh[i]));
            sc = std::max(sc, std::abs(Ff[i] * Fh[i]));
        }
        conv = std::max(conv, m / sc);
    }
    ok = ok && plan <= 1e-6 && modl <= 1e-10 && conv <= 1e-6;
    msg += "plancherel " + std::to_string(plan) + ", modulation " + std::to_string(modl) + ", convolution " +
           std::to_string(conv);
    return {ok, msg};
}

struct Criterion {
    int id;
    const char* name;
    double budget_s;
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "L2 diagonalization identity", 5, l2_identity},
        {2, "certificate convergence", 30, certificate_convergence},
        {3, "certificate soundness", 60, certificate_soundness},
        {4, "doubling dichotomy", 10, doubling_dichotomy},
        {5, "A_p classifier", 20, ap_classifier},
        {6, "weighted Young inequality", 30, young_presets},
        {7, "two-classes separation", 60, two_classes},
        {8, "unbounded-multiplier signature", 30, exp_unbounded},
        {9, "Lebesgue-point integral", 10, lebesgue},
        {10, "submultiplicativity and powers", 30, algebra},
        {11, "triviality ratio", 5, superexp},
        {12, "transform fidelity", 10, transforms},
    };
    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = secs < c.budget_s;
        const bool pass = o.ok && in_time;
        if (!pass) ++failures;
        std::printf("criterion %2d %-32s %s  %7.2f s / %3.0f s%s  %s\n", c.id, c.name, pass ? "PASS" : "FAIL", secs,
                    c.budget_s, in_time ? "" : " (over budget)", o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", int(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
