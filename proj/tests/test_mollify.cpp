#include "doctest.h"
#include "oracles.hpp"

#include "fmlab/errors.hpp"
#include "fmlab/mollify.hpp"
#include "fmlab/multipliers.hpp"

#include <cmath>
#include <random>

using namespace fmlab;
namespace w = fmlab::weight;

namespace {
const double kBumpMass = 0.44399381616807944;  // mpmath, 30 digits

SampledFunction plateau_psi(const Grid& g) { return forward_transform(smooth_plateau_bump(2.0, g)).as_function(); }
}  // namespace

TEST_CASE("bump and its mass") {
    CHECK(bump(0.0) == doctest::Approx(std::exp(-1.0)));
    CHECK(bump(1.0) == 0.0);
    CHECK(bump(-1.3) == 0.0);
    CHECK(bump_mass() == doctest::Approx(kBumpMass).epsilon(1e-13));
    CHECK(oracle::simpson([](double x) { return bump(x); }, -1, 1) == doctest::Approx(kBumpMass).epsilon(1e-9));
}

TEST_CASE("bump cdf") {
    CHECK(bump_cdf(-1.0) == 0.0);
    CHECK(bump_cdf(-4.0) == 0.0);
    CHECK(bump_cdf(1.0) == 1.0);
    CHECK(bump_cdf(0.0) == doctest::Approx(0.5).epsilon(1e-14));
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> u(-1, 1);
    for (int t = 0; t < 200; ++t) {
        const double x = u(rng);
        CHECK(std::abs(bump_cdf(-x) - (1 - bump_cdf(x))) <= 1e-15);
        CHECK(bump_cdf(x) >= 0.0);
        if (t % 10 == 0) {
            const double ref = oracle::simpson([](double s) { return bump(s); }, -1, x, 20000) / kBumpMass;
            CHECK(std::abs(bump_cdf(x) - ref) <= 1e-9);
        }
    }
}

TEST_CASE("bump transform") {
    CHECK(std::abs(bump_transform(0.0) - 1.0) < 1e-12);
    for (cplx z : {cplx(1.5, 0), cplx(7, 0), cplx(-3, 0.5), cplx(0.3, 2)}) {
        const double re = oracle::simpson([&](double x) { return (bump(x) * std::exp(-cplx(0, 1) * x * z)).real(); }, -1, 1);
        const double im = oracle::simpson([&](double x) { return (bump(x) * std::exp(-cplx(0, 1) * x * z)).imag(); }, -1, 1);
        CHECK(std::abs(bump_transform(z) - cplx(re, im) / kBumpMass) <= 1e-9);
    }
}

TEST_CASE("mollifier samples") {
    Grid g(4.0, 4096);
    auto r1 = mollifier(1, g);
    CHECK(r1[g.nearest_node(0.0)].real() == doctest::Approx(0.82856883986910515).epsilon(1e-9));
    for (int j : {1, 2, 4, 8, 16, 64}) {
        auto r = mollifier(j, g);
        double s = 0;
        for (auto v : r.values()) {
            s += v.real();
            CHECK(v.real() >= 0);
            CHECK(v.imag() == 0);
        }
        CHECK(std::abs(g.spacing() * s - 1) <= 1e-14);
        for (std::size_t n = 0; n < g.size(); ++n)
            if (std::abs(g.node(n)) >= 1.0 / j) CHECK(r[n] == cplx(0, 0));
    }
    CHECK(MollifierSpec{4}(0.25) == 0.0);
    CHECK(MollifierSpec{4}.radius() == 0.25);
    CHECK_THROWS_AS(mollifier(128, g), PreconditionError);
}

TEST_CASE("mollifier is an approximate identity") {
    Grid g(8.0, 4096);
    auto f = SampledFunction::from(g, [](double x) { return x * x < 4 ? std::exp(-1 / (4 - x * x)) * std::cos(x) : 0.0; });
    double prev = 1e300;
    for (int j : {1, 2, 4, 8, 16}) {
        const double err = l2_norm(convolve(mollifier(j, g), f).value - f);
        CHECK(err <= prev * 1.05);
        prev = err;
    }
    CHECK(prev < 2e-3);
}

TEST_CASE("lebesgue point integral") {
    Grid g(32.0, 2048);
    auto psi = plateau_psi(g);
    CHECK(decay_constant(psi) > 0);
    CHECK(lebesgue_point_integral(MultiplierSymbol::constant(3.0), 0.7, psi, 0.5) == 0.0);

    auto lor = MultiplierSymbol::lorentzian();
    std::vector<double> I;
    for (double d : {1.0, 0.5, 0.25, 0.125}) I.push_back(lebesgue_point_integral(lor, 0.0, psi, d));
    for (std::size_t i = 1; i < I.size(); ++i) CHECK(I[i] < I[i - 1]);
    CHECK(I[3] < I[0] / 4);

    // independent oracle: psi by Simpson from the plateau profile, the outer integral as a lattice sum
    PlateauProfile prof(2.0);
    const Grid fg = g.frequency_grid();
    double ref = 0;
    for (std::size_t n = 0; n < fg.size(); n += 1) {
        const double z = fg.node(n);
        const double re = oracle::simpson([&](double x) { return prof(x) * std::cos(x * z); }, -2, 2, 40000);
        ref += std::abs(1 / (1 + 0.25 * z * z) - 1) * std::abs(re);
    }
    ref *= fg.spacing();
    // the discrete psi aliases: the bump transform only decays like exp(-sqrt(|z| r)), at 2 pi / h that is ~1e-5
    CHECK(I[1] == doctest::Approx(ref).epsilon(1e-4));

    auto band = MultiplierSymbol::band_indicator(-1, 1);
    const double b1 = lebesgue_point_integral(band, 0.0, psi, 1.0), b16 = lebesgue_point_integral(band, 0.0, psi, 1.0 / 16);
    CHECK(b16 < b1 / 4);
}

TEST_CASE("property: lebesgue integral ignores constant offsets") {
    Grid g(32.0, 2048);
    auto psi = plateau_psi(g);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> u(-1, 1);
    // the table has to cover eta + z/d for every z in the psi window, it is 0 outside
    Grid tab(4.0, 4096);
    auto base = MultiplierSymbol::lorentzian().sample(tab);
    for (int t = 0; t < 10; ++t) {
        const cplx c{u(rng), u(rng)};
        auto shifted = base;
        for (auto& v : shifted) v += c;
        auto a = MultiplierSymbol::tabulated(tab, base), b = MultiplierSymbol::tabulated(tab, shifted);
        const double eta = 3 * u(rng), d = 0.25 + std::abs(u(rng));
        CHECK(std::abs(lebesgue_point_integral(a, eta, psi, d) - lebesgue_point_integral(b, eta, psi, d)) <= 1e-12);
    }
}

TEST_CASE("lebesgue integral rejects a psi without quadratic decay") {
    Grid g(32.0, 1024);
    auto slow = SampledFunction::from(g, [](double x) { return (1 + std::abs(x)) * (1 + std::abs(x)); });
    CHECK_THROWS_AS(lebesgue_point_integral(MultiplierSymbol::lorentzian(), 0, slow, 1), PreconditionError);
}

TEST_CASE("bounded L2 approximation") {
    Grid g(16.0, 4096);
    auto u = SampledFunction::from(g, [](double x) { return std::exp(-x * x / 8); });
    auto seq = bounded_l2_approx_sequence(u, make_space(2, w::Constant{1}), 12);
    REQUIRE(seq.stages.size() == 12);
    double prev = 1e300;
    for (const auto& st : seq.stages) {
        CHECK(st.truncation_error <= std::ldexp(1.0, -st.j));
        CHECK(st.l2_error <= prev * 1.05);
        prev = st.l2_error;
        // support of rho_j * (chi u) within B(0, R_j + 1/j)
        for (std::size_t n = 0; n < g.size(); ++n)
            if (std::abs(g.node(n)) > st.radius + 1.0 / st.j + g.spacing()) CHECK(std::abs(st.v[n]) < 1e-13);
        // truncation costs up to 2^-j, the mollifier the rest
        CHECK(st.l2_error <= std::ldexp(1.0, -st.j) + 1e-3);
        if (st.j >= 8) {
            CHECK(st.weighted_norm <= seq.u_l2_norm * 1.05);
        }
    }

    auto sub = bounded_l2_approx_sequence(u, make_space(2, w::SubExp{0.5, 0.5}), 12);
    CHECK(sub.limsup_proxy <= 1.1 * sub.u_weighted_norm);

    auto zero = bounded_l2_approx_sequence(SampledFunction(g), make_space(2, w::Constant{1}), 3);
    for (const auto& st : zero.stages) CHECK(st.v.max_abs() == 0.0);

    CHECK_THROWS_AS(bounded_l2_approx_sequence(u, make_space(2, w::CantorFlat{4}), 3), PreconditionError);
}

TEST_CASE("weighted young") {
    Grid g(16.0, 2048);
    auto f = SampledFunction::from(g, [](double x) { return std::exp(-x * x / 2); });
    auto k2 = mollifier(2, g);
    auto y1 = weighted_young_check(k2, f, w::Exp{1}, w::Exp{1}, 2, {});
    CHECK(y1.holds);
    CHECK(y1.preset);

    // lhs against a direct double sum
    double s = 0;
    for (std::size_t n = 0; n < g.size(); n += 1) {
        cplx c = 0;
        for (std::size_t m = 0; m < g.size(); ++m)
            if (k2[m] != cplx(0, 0)) c += k2[m] * std::exp(-std::pow(g.node(n) - g.node(m), 2) / 2);
        s += std::norm(c * g.spacing() * std::exp(g.node(n)));
    }
    CHECK(y1.lhs == doctest::Approx(std::sqrt(g.spacing() * s)).epsilon(1e-6));

    auto zero = weighted_young_check(SampledFunction(g), f, w::Exp{1}, w::Exp{1}, 2, {});
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.holds);

    std::mt19937_64 rng(3);
    auto fr = oracle::random_smooth(g, rng, 2.0);
    auto kneg = SampledFunction::from(g, [](double x) { return x >= -2 && x <= -1 ? std::sin(3 * x) + 1.5 : 0.0; });
    auto y2 = weighted_young_check(kneg, fr, w::PhiExp{1}, w::PhiExp{1}, 2, {-SpaceSpec::kInfinity, 0.0});
    CHECK(y2.holds);
    CHECK(y2.preset);

    // supp kappa outside Omega
    CHECK_THROWS_AS(weighted_young_check(k2, f, w::PhiExp{1}, w::PhiExp{1}, 2, {-SpaceSpec::kInfinity, 0.0}),
                    PreconditionError);
    // sampled hypothesis: Peetre's inequality makes (1+|x|)^a a valid pair with itself
    auto y3 = weighted_young_check(k2, fr, w::PowerOnePlus{0.5}, w::PowerOnePlus{0.5}, 1.5, {});
    CHECK(y3.holds);
    CHECK_FALSE(y3.preset);
    // w* = 1 against e^{x}: w(x - y)/w(x) = e^{-y} < 1 for y > 0
    CHECK_THROWS_AS(weighted_young_check(k2, f, w::Constant{1}, w::Exp{1}, 2, {}), PreconditionError);
}
