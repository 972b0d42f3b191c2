#include "fmlab/grid.hpp"

#include "fmlab/errors.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>

namespace fmlab {

namespace {

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// FFTW plans are created once per (size, sign) and executed with the
// new-array interface, which is thread-safe. Plan creation is not.
class PlanCache {
public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t n, int sign) {
        std::lock_guard lock(mutex_);
        auto key = std::make_pair(n, sign);
        if (auto it = plans_.find(key); it != plans_.end()) return it->second;
        std::vector<cplx> in(n), out(n);
        fftw_plan plan = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(in.data()),
                                          reinterpret_cast<fftw_complex*>(out.data()), sign,
                                          FFTW_ESTIMATE | FFTW_UNALIGNED);
        plans_.emplace(key, plan);
        return plan;
    }

    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

private:
    std::mutex mutex_;
    std::map<std::pair<std::size_t, int>, fftw_plan> plans_;
};

std::vector<cplx> dft(std::span<const cplx> in, int sign) {
    std::vector<cplx> src(in.begin(), in.end());
    std::vector<cplx> out(in.size());
    fftw_execute_dft(PlanCache::instance().get(in.size(), sign), reinterpret_cast<fftw_complex*>(src.data()),
                     reinterpret_cast<fftw_complex*>(out.data()));
    return out;
}

// Index range [first, last] of samples above a relative threshold; empty -> first > last.
std::pair<std::ptrdiff_t, std::ptrdiff_t> support_extent(const SampledFunction& f) {
    const double cut = 1e-14 * f.max_abs();
    std::ptrdiff_t first = 0, last = -1;
    bool found = false;
    for (std::size_t n = 0; n < f.size(); ++n) {
        if (std::abs(f[n]) > cut && f.max_abs() > 0.0) {
            if (!found) first = static_cast<std::ptrdiff_t>(n);
            last = static_cast<std::ptrdiff_t>(n);
            found = true;
        }
    }
    return {first, last};
}

}  // namespace

Grid::Grid(double half_width, std::size_t count) : half_width_(half_width), count_(count) {
    if (!(half_width > 0.0) || !std::isfinite(half_width)) throw PreconditionError("grid half-width must be positive");
    if (count < 8 || !is_power_of_two(count)) throw PreconditionError("grid size must be a power of two >= 8");
    spacing_ = 2.0 * half_width / static_cast<double>(count);
}

double Grid::frequency_step() const noexcept { return std::numbers::pi / half_width_; }

double Grid::nyquist() const noexcept { return std::numbers::pi / spacing_; }

std::size_t Grid::nearest_node(double x) const noexcept {
    const double idx = std::round((x + half_width_) / spacing_);
    if (idx <= 0.0) return 0;
    return std::min(static_cast<std::size_t>(idx), count_ - 1);
}

Grid Grid::frequency_grid() const { return Grid(nyquist(), count_); }

SampledFunction::SampledFunction(Grid grid) : grid_(grid), values_(grid.size()) {}

SampledFunction::SampledFunction(Grid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw PreconditionError("sample count does not match grid size");
    for (const auto& v : values_)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("non-finite sample value");
}

double SampledFunction::max_abs() const noexcept {
    double m = 0.0;
    for (const auto& v : values_) m = std::max(m, std::abs(v));
    return m;
}

Spectrum::Spectrum(Grid grid, std::vector<cplx> values) : grid_(grid), values_(std::move(values)) {
    if (values_.size() != grid_.size()) throw PreconditionError("spectrum length does not match grid size");
}

SampledFunction Spectrum::as_function() const { return SampledFunction(grid_.frequency_grid(), values_); }

Spectrum forward_transform(const SampledFunction& f) {
    const Grid& g = f.grid();
    const std::size_t n = g.size(), half = n / 2;
    const auto raw = dft(f.values(), FFTW_FORWARD);
    // exp(-i x_n xi_k) = (-1)^k exp(-2 pi i n k / N) because x_0 = -L and xi_k L = pi k.
    std::vector<cplx> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(half);
        const std::size_t slot = static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        out[i] = g.spacing() * sign * raw[slot];
    }
    return Spectrum(g, std::move(out));
}

SampledFunction inverse_transform(const Spectrum& s) {
    const Grid& g = s.grid();
    const std::size_t n = g.size(), half = n / 2;
    std::vector<cplx> in(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::ptrdiff_t k = static_cast<std::ptrdiff_t>(i) - static_cast<std::ptrdiff_t>(half);
        const std::size_t slot = static_cast<std::size_t>((k + static_cast<std::ptrdiff_t>(n)) % static_cast<std::ptrdiff_t>(n));
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        in[slot] = sign * s[i];
    }
    auto raw = dft(in, FFTW_BACKWARD);
    // dxi / (2 pi) = 1 / (2L) = 1 / (N h)
    const double scale = 1.0 / (static_cast<double>(n) * g.spacing());
    for (auto& v : raw) v *= scale;
    return SampledFunction(g, std::move(raw));
}

Convolution convolve(const SampledFunction& f, const SampledFunction& g) {
    if (!(f.grid() == g.grid())) throw PreconditionError("convolve: operands live on different grids");
    const Grid& grid = f.grid();
    const std::size_t n = grid.size();
    const Grid padded(2.0 * grid.half_width(), 2 * n);

    auto embed = [&](const SampledFunction& s) {
        std::vector<cplx> v(2 * n);
        std::copy(s.values().begin(), s.values().end(), v.begin() + static_cast<std::ptrdiff_t>(n / 2));
        return SampledFunction(padded, std::move(v));
    };
    const auto fs = forward_transform(embed(f));
    const auto gs = forward_transform(embed(g));
    std::vector<cplx> prod(2 * n);
    for (std::size_t i = 0; i < 2 * n; ++i) prod[i] = fs[i] * gs[i];
    const auto full = inverse_transform(Spectrum(padded, std::move(prod)));

    std::vector<cplx> out(full.values().begin() + static_cast<std::ptrdiff_t>(n / 2),
                          full.values().begin() + static_cast<std::ptrdiff_t>(n / 2 + n));

    // Node index of x_a + x_b on the original grid is a + b - N/2.
    const auto [fa, fb] = support_extent(f);
    const auto [ga, gb] = support_extent(g);
    bool warn = false;
    if (fa <= fb && ga <= gb) {
        const std::ptrdiff_t half = static_cast<std::ptrdiff_t>(n / 2);
        warn = (fa + ga - half) < 0 || (fb + gb - half) > static_cast<std::ptrdiff_t>(n) - 1;
    }
    return Convolution{SampledFunction(grid, std::move(out)), warn};
}

double l2_norm(const SampledFunction& f) {
    double s = 0.0;
    for (const auto& v : f.values()) s += std::norm(v);
    return std::sqrt(f.grid().spacing() * s);
}

namespace {
template <class Op>
SampledFunction zip(const SampledFunction& a, const SampledFunction& b, Op op) {
    if (!(a.grid() == b.grid())) throw PreconditionError("operands live on different grids");
    std::vector<cplx> v(a.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = op(a[i], b[i]);
    return SampledFunction(a.grid(), std::move(v));
}
}  // namespace

SampledFunction operator+(const SampledFunction& a, const SampledFunction& b) {
    return zip(a, b, [](cplx x, cplx y) { return x + y; });
}
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b) {
    return zip(a, b, [](cplx x, cplx y) { return x - y; });
}
SampledFunction pointwise_product(const SampledFunction& a, const SampledFunction& b) {
    return zip(a, b, [](cplx x, cplx y) { return x * y; });
}
SampledFunction operator*(cplx s, const SampledFunction& a) {
    std::vector<cplx> v(a.values().begin(), a.values().end());
    for (auto& x : v) x *= s;
    return SampledFunction(a.grid(), std::move(v));
}

}  // namespace fmlab
