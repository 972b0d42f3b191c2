#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace fmlab {

using cplx = std::complex<double>;

/**
 * Uniform symmetric grid on [-L, L) with N nodes.
 *
 * Nodes are x_n = -L + n h, h = 2L/N, so x_0 = -L and the last node is L - h.
 * The dual frequency grid is xi_k = pi k / L for k = -N/2 .. N/2-1.
 */
class Grid {
public:
    Grid(double half_width, std::size_t count);

    double half_width() const noexcept { return half_width_; }
    std::size_t size() const noexcept { return count_; }
    double spacing() const noexcept { return spacing_; }

    double node(std::size_t n) const noexcept { return -half_width_ + static_cast<double>(n) * spacing_; }

    /// Frequency of spectrum slot i (i = k + N/2).
    double frequency(std::size_t i) const noexcept {
        return frequency_step() * (static_cast<double>(i) - static_cast<double>(count_ / 2));
    }
    double frequency_step() const noexcept;
    double nyquist() const noexcept;

    /// Index of the node nearest to x (clamped to the grid).
    std::size_t nearest_node(double x) const noexcept;

    /// The frequency lattice viewed as a spatial grid: nodes coincide with frequency(i).
    Grid frequency_grid() const;

    /// Grid with the same half-width and `count` nodes.
    Grid resampled(std::size_t count) const { return Grid(half_width_, count); }

    bool operator==(const Grid& other) const noexcept {
        return half_width_ == other.half_width_ && count_ == other.count_;
    }

private:
    double half_width_;
    std::size_t count_;
    double spacing_;
};

/// Complex samples of a function on a Grid.
class SampledFunction {
public:
    explicit SampledFunction(Grid grid);  // zero function
    SampledFunction(Grid grid, std::vector<cplx> values);

    template <class F>
    static SampledFunction from(const Grid& grid, F&& fn) {
        std::vector<cplx> v(grid.size());
        for (std::size_t n = 0; n < grid.size(); ++n) v[n] = fn(grid.node(n));
        return SampledFunction(grid, std::move(v));
    }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    cplx operator[](std::size_t n) const noexcept { return values_[n]; }
    std::size_t size() const noexcept { return values_.size(); }

    /// Largest modulus over the grid.
    double max_abs() const noexcept;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

/// Samples of a Fourier transform on the frequency lattice of a Grid.
class Spectrum {
public:
    Spectrum(Grid grid, std::vector<cplx> values);

    const Grid& grid() const noexcept { return grid_; }
    std::span<const cplx> values() const noexcept { return values_; }
    cplx operator[](std::size_t i) const noexcept { return values_[i]; }
    std::size_t size() const noexcept { return values_.size(); }
    double frequency(std::size_t i) const noexcept { return grid_.frequency(i); }

    /// The spectrum as a function sampled on grid().frequency_grid().
    SampledFunction as_function() const;

private:
    Grid grid_;
    std::vector<cplx> values_;
};

/// value[k] = h * sum_n f(x_n) exp(-i x_n xi_k).
Spectrum forward_transform(const SampledFunction& f);

/// f(x_n) = (dxi / 2pi) * sum_k S[k] exp(+i x_n xi_k); exact inverse of forward_transform.
SampledFunction inverse_transform(const Spectrum& s);

struct Convolution {
    SampledFunction value;
    /// Combined support of the operands exceeds [-L, L): the result was truncated.
    bool support_warning = false;
};

/// Riemann approximation of (f*g)(x_n), spectral with zero padding to 2N.
Convolution convolve(const SampledFunction& f, const SampledFunction& g);

/// Discrete L^2 norm (h * sum |f|^2)^{1/2}.
double l2_norm(const SampledFunction& f);

/// Pointwise combination helpers used throughout the tests and scenarios.
SampledFunction operator+(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator-(const SampledFunction& a, const SampledFunction& b);
SampledFunction operator*(cplx s, const SampledFunction& a);
SampledFunction pointwise_product(const SampledFunction& a, const SampledFunction& b);

}  // namespace fmlab
