#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace fmlab {

/**
 * Smith-Volterra-Cantor set of finite depth d inside [0, 1].
 *
 * Round k = 1..d removes, from the middle of each of the 2^{k-1} surviving
 * closed intervals, an open interval of length 4^{-k}. The survivors have
 * total length 1/2 + 2^{-d-1}. Membership and partial measures are computed
 * by descending the removal tree, so nothing of size 2^d is stored.
 */
class FatCantorSet {
public:
    static constexpr int kMaxDepth = 30;
    static constexpr int kMaxListedDepth = 20;

    struct Interval {
        double lo;
        double hi;
    };

    explicit FatCantorSet(int depth);

    int depth() const noexcept { return depth_; }
    std::uint64_t interval_count() const noexcept { return std::uint64_t{1} << depth_; }

    /// Exact measure as numerator / denominator = (2^d + 1) / 2^{d+1}.
    std::uint64_t measure_numerator() const noexcept { return (std::uint64_t{1} << depth_) + 1; }
    std::uint64_t measure_denominator() const noexcept { return std::uint64_t{1} << (depth_ + 1); }
    double measure() const noexcept;

    bool contains(double x) const noexcept;

    /// |G ∩ [a, b]|.
    double measure_within(double a, double b) const noexcept;

    /// Sorted surviving intervals; depth must not exceed kMaxListedDepth.
    std::vector<Interval> intervals() const;

private:
    int depth_;
};

/// b_m = (m + 1)^{-power}; power = 1 gives the default 1/(m+1).
struct BSequence {
    double power = 1.0;
    double operator()(int m) const;
    bool operator==(const BSequence&) const = default;
};

namespace weight {

struct Constant {
    double c = 1.0;
    bool operator==(const Constant&) const = default;
};
/// (1 + |x|)^alpha
struct PowerOnePlus {
    double alpha;
    bool operator==(const PowerOnePlus&) const = default;
};
/// |x|^gamma
struct PowerAbs {
    double gamma;
    bool operator==(const PowerAbs&) const = default;
};
/// e^{c x}
struct Exp {
    double c;
    bool operator==(const Exp&) const = default;
};
/// e^{c |x|}
struct ExpAbs {
    double c;
    bool operator==(const ExpAbs&) const = default;
};
/// exp(c |x|^beta), beta in (0, 1]
struct SubExp {
    double c;
    double beta;
    bool operator==(const SubExp&) const = default;
};
/// exp(|x|^alpha1) for x < 0, exp(x^alpha2) for x >= 0
struct SuperExp {
    double alpha1;
    double alpha2;
    bool operator==(const SuperExp&) const = default;
};
/// e^{c phi(x)}, phi(x) = x for x <= 0 and x + x^2 for x >= 0
struct PhiExp {
    double c;
    bool operator==(const PhiExp&) const = default;
};
/// 1 on the fat Cantor set G, 2 elsewhere
struct CantorFlat {
    int depth;
    bool operator==(const CantorFlat&) const = default;
};
/// b_m on 2m + G (m >= 1), 1 elsewhere, mirrored to x < 0
struct CantorSeq {
    int depth;
    BSequence b;
    bool operator==(const CantorSeq&) const = default;
};

}  // namespace weight

using WeightSpec = std::variant<weight::Constant, weight::PowerOnePlus, weight::PowerAbs, weight::Exp,
                                weight::ExpAbs, weight::SubExp, weight::SuperExp, weight::PhiExp,
                                weight::CantorFlat, weight::CantorSeq>;

/// Parses the weight DSL, e.g. "exp:c=1", "subexp:c=0.5,beta=0.5", "cantorseq:depth=8".
WeightSpec parse_weight_spec(std::string_view text);

/// Canonical DSL text; parse_weight_spec(format_weight_spec(w)) == w.
std::string format_weight_spec(const WeightSpec& w);

/// Throws RangeError when parameters are out of range.
void validate(const WeightSpec& w);

double eval_weight(const WeightSpec& w, double x);

/// log w(x); finite where eval_weight would overflow.
double log_weight(const WeightSpec& w, double x);

/// True for the families with a continuous density (everything but the Cantor weights).
bool is_continuous(const WeightSpec& w);

/// Points where the weight (or a derivative) is singular or jumps, inside [a, b].
std::vector<double> breakpoints(const WeightSpec& w, double a, double b);

FatCantorSet build_fat_cantor(int depth);

/// The phi of the PhiExp family.
double phi_exp_profile(double x);

/// max over sampled |x| >= R, |y| <= eps of w(x + y) / w(x).
double weight_regularity_ratio(const WeightSpec& w, double R, double eps, std::span<const double> x_samples,
                               std::span<const double> y_samples);

}  // namespace fmlab
