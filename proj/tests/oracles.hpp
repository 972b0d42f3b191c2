#pragma once
// Independent reference computations. Nothing here calls the code under test
// except for the plain data types (Grid, SampledFunction).

#include "fmlab/grid.hpp"
#include "fmlab/weights.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using fmlab::cplx;
using fmlab::Grid;

inline constexpr double kPi = 3.14159265358979323846;

// plain O(N^2) sum, value[k] = h sum f(x_n) exp(-i x_n xi_k)
inline std::vector<cplx> direct_dft(const Grid& g, std::span<const cplx> f) {
    const std::size_t N = g.size();
    std::vector<cplx> out(N);
    const double dxi = kPi / g.half_width();
    for (std::size_t i = 0; i < N; ++i) {
        const double xi = dxi * (double(i) - double(N / 2));
        cplx s = 0;
        for (std::size_t n = 0; n < N; ++n) {
            const double x = -g.half_width() + double(n) * g.spacing();
            s += f[n] * std::polar(1.0, -x * xi);
        }
        out[i] = g.spacing() * s;
    }
    return out;
}

// Riemann double sum (f*g)(x) = h sum_m f(y_m) g(x - y_m), g evaluated from a closure
inline cplx direct_convolution_at(const Grid& g, std::span<const cplx> f, const std::function<cplx(double)>& gfun,
                                  double x) {
    cplx s = 0;
    for (std::size_t m = 0; m < g.size(); ++m) s += f[m] * gfun(x - (-g.half_width() + double(m) * g.spacing()));
    return g.spacing() * s;
}

// composite Simpson with n (even) panels
inline double simpson(const std::function<double(double)>& f, double a, double b, int n = 20000) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
    return s * h / 3.0;
}

// Fat Cantor intervals by explicit removal, kept as (lo, hi) pairs.
struct Iv {
    double lo, hi;
};
inline std::vector<Iv> cantor_intervals(int depth) {
    std::vector<Iv> cur{{0.0, 1.0}};
    for (int k = 1; k <= depth; ++k) {
        const double gap = std::ldexp(1.0, -2 * k);
        std::vector<Iv> next;
        for (auto iv : cur) {
            const double mid = 0.5 * (iv.lo + iv.hi);
            next.push_back({iv.lo, mid - gap / 2});
            next.push_back({mid + gap / 2, iv.hi});
        }
        cur = std::move(next);
    }
    return cur;
}
inline bool in_intervals(const std::vector<Iv>& ivs, double x) {
    for (auto iv : ivs)
        if (x >= iv.lo && x <= iv.hi) return true;
    return false;
}

// Dense operator M_w F^{-1} diag(a) F M_w^{-1} from explicit DFT matrices, then BDCSVD.
inline double dense_weighted_norm(const Grid& g, const std::vector<cplx>& a_samples,
                                  const std::function<double(double)>& log_w) {
    const int N = int(g.size());
    const double dxi = kPi / g.half_width();
    Eigen::MatrixXcd F(N, N), Finv(N, N);
    for (int k = 0; k < N; ++k)
        for (int n = 0; n < N; ++n) {
            const double x = -g.half_width() + n * g.spacing();
            const double xi = dxi * (k - N / 2);
            F(k, n) = g.spacing() * std::polar(1.0, -x * xi);
            Finv(n, k) = dxi / (2 * kPi) * std::polar(1.0, x * xi);
        }
    Eigen::VectorXcd a(N);
    for (int k = 0; k < N; ++k) a(k) = a_samples[std::size_t(k)];
    Eigen::MatrixXcd T = Finv * a.asDiagonal() * F;
    Eigen::VectorXd lw(N);
    for (int n = 0; n < N; ++n) lw(n) = log_w(-g.half_width() + n * g.spacing());
    Eigen::MatrixXcd A(N, N);
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) A(i, j) = T(i, j) * std::exp(lw(i) - lw(j));
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    return svd.singularValues()(0);
}

// A handful of randomly drawn catalog weights that are positive at every node.
inline fmlab::WeightSpec random_catalog_weight(std::mt19937_64& rng) {
    namespace w = fmlab::weight;
    std::uniform_real_distribution<double> u(0.05, 0.5);
    switch (rng() % 7) {
    case 0: return w::Constant{1.0};
    case 1: return w::PowerOnePlus{u(rng)};
    case 2: return w::PowerOnePlus{-u(rng)};
    case 3: return w::Exp{u(rng)};
    case 4: return w::ExpAbs{u(rng)};
    case 5: return w::SubExp{u(rng), 0.5};
    default: return w::CantorFlat{6};
    }
}

// smooth test function with random Gaussian bumps, compactly decaying
inline fmlab::SampledFunction random_smooth(const Grid& g, std::mt19937_64& rng, double spread = 3.0) {
    std::uniform_real_distribution<double> c(-spread, spread), s(0.4, 1.2), amp(-1.0, 1.0);
    struct Bump {
        double c, s;
        cplx a;
    };
    std::vector<Bump> bumps(3);
    for (auto& b : bumps) {
        b.c = c(rng);
        b.s = s(rng);
        b.a = {amp(rng), amp(rng)};
    }
    return fmlab::SampledFunction::from(g, [&](double x) {
        cplx v = 0;
        for (auto& b : bumps) v += b.a * std::exp(-(x - b.c) * (x - b.c) / (2 * b.s * b.s));
        return v;
    });
}

}  // namespace oracle
