#pragma once

#include "fmlab/grid.hpp"
#include "fmlab/multipliers.hpp"
#include "fmlab/report.hpp"
#include "fmlab/weights.hpp"

#include <cstdint>
#include <vector>

namespace fmlab {

struct TwoClassesParams {
    int depth = 8;
    double b_power = 1.0;  ///< b_m = (m+1)^{-b_power}
    int j = 0;             ///< mollifier index; 0 selects from {4, 8, 16, 32, 64} by local density
    int m_max = 5;
};

/// Bounded side: ||rho_j * u||_{L^inf(w)} <= 1 for smooth |u| <= 1.
/// Growth side: |rho_j * u_m| near x^(m) = 2m + x0 exceeds 1/(4 b_m) for u_m = chi_{G_m} / b_m.
ScenarioReport two_classes_demo(const TwoClassesParams& params = {});

struct ExpUnboundedParams {
    double c = 1.0;
    double alpha = 0.5;
    double p = 2.0;
    double L = 32.0;
    std::size_t N = 2048;
    std::size_t refine_from = 1024;  ///< growth row compares Grid(L', refine_from) with Grid(2L', 2 refine_from)
    int probes = 50;
    std::uint64_t seed = 1;
};

/// a_{-alpha} on L^p(e^{cx}): finite kernel bound, random probes below it, and the
/// half-bin grid maximum growing by 2^alpha per refinement of the frequency lattice.
ScenarioReport exp_weight_unbounded_demo(const ExpUnboundedParams& params = {});

struct NondoublingParams {
    double c = 1.0;
    double tau = 2.0;
    double p = 2.0;
    std::vector<double> R_schedule{4.0, 8.0, 16.0};
    std::vector<double> y_search{-20.0, -10.0, 0.0, 10.0, 20.0};
    int witness_count = 20;
};

/// Exp(c) doubling ratios against K e^{c(tau-1)R/2}/R, plus the bounded SubExp(c, 1/2) witness for contrast.
ScenarioReport nondoubling_growth_demo(const NondoublingParams& params = {});

/// (max|a|)^m == max|a^m| and ||a^m|| <= ||a||^m for m = 1..m_max (dense weighted l^2 norms).
ScenarioReport power_trick_check(const MultiplierSymbol& a, const WeightSpec& w, const Grid& grid,
                                 std::size_t n_small = 256, int m_max = 5);

/// A bounded random symbol tabulated on the frequency lattice of `grid`, |a| <= amplitude.
MultiplierSymbol random_symbol(const Grid& grid, std::uint64_t seed, double amplitude = 1.0);

struct SuperExpParams {
    double alpha1 = 2.0;
    double alpha2 = 2.0;
    std::vector<double> x0_list{1.0, -1.0, 2.0, -2.0};
    double eps = 0.25;
    int k_max = 20;
    double threshold = 1e6;
};

/// Loefstrom ratios for the superexponential weight blow up (strictly increasing, > threshold
/// by k_max) while Exp(1) stays constant in k.
ScenarioReport superexp_triviality_demo(const SuperExpParams& params = {});

}  // namespace fmlab
