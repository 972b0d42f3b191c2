#include "fmlab/weights.hpp"

#include "fmlab/errors.hpp"
#include "fmlab/spec_syntax.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fmlab {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

long double gap_length(int round) { return std::ldexp(1.0L, -2 * round); }

}  // namespace

// ---------------------------------------------------------------------------
// FatCantorSet

FatCantorSet::FatCantorSet(int depth) : depth_(depth) {
    if (depth < 0 || depth > kMaxDepth)
        throw RangeError("fat Cantor depth must lie in [0, " + std::to_string(kMaxDepth) + "]");
}

double FatCantorSet::measure() const noexcept {
    return static_cast<double>(measure_numerator()) / static_cast<double>(measure_denominator());
}

bool FatCantorSet::contains(double x) const noexcept {
    const long double t = x;
    long double lo = 0.0L, len = 1.0L;
    if (t < lo || t > lo + len) return false;
    for (int k = 0; k < depth_; ++k) {
        const long double g = gap_length(k + 1);
        const long double child = (len - g) / 2.0L;
        if (t <= lo + child) {
            len = child;
        } else if (t >= lo + child + g) {
            lo = lo + child + g;
            len = child;
        } else {
            return false;
        }
    }
    return true;
}

double FatCantorSet::measure_within(double a, double b) const noexcept {
    if (!(b > a)) return 0.0;
    const long double A = a, B = b;
    const long double total = static_cast<long double>(measure_numerator()) / measure_denominator();
    auto rec = [&](auto&& self, long double lo, long double len, int k) -> long double {
        const long double hi = lo + len;
        if (B <= lo || A >= hi) return 0.0L;
        if (A <= lo && B >= hi) return std::ldexp(total, -k);
        if (k == depth_) return std::min(B, hi) - std::max(A, lo);
        const long double g = gap_length(k + 1);
        const long double child = (len - g) / 2.0L;
        return self(self, lo, child, k + 1) + self(self, lo + child + g, child, k + 1);
    };
    return static_cast<double>(rec(rec, 0.0L, 1.0L, 0));
}

std::vector<FatCantorSet::Interval> FatCantorSet::intervals() const {
    if (depth_ > kMaxListedDepth)
        throw RangeError("interval listing limited to depth " + std::to_string(kMaxListedDepth));
    std::vector<std::pair<long double, long double>> cur{{0.0L, 1.0L}};
    for (int k = 1; k <= depth_; ++k) {
        const long double g = gap_length(k);
        std::vector<std::pair<long double, long double>> next;
        next.reserve(cur.size() * 2);
        for (auto [lo, len] : cur) {
            const long double child = (len - g) / 2.0L;
            next.emplace_back(lo, child);
            next.emplace_back(lo + child + g, child);
        }
        cur = std::move(next);
    }
    std::vector<Interval> out;
    out.reserve(cur.size());
    for (auto [lo, len] : cur) out.push_back({static_cast<double>(lo), static_cast<double>(lo + len)});
    return out;
}

FatCantorSet build_fat_cantor(int depth) { return FatCantorSet(depth); }

double BSequence::operator()(int m) const { return std::pow(static_cast<double>(m) + 1.0, -power); }

// ---------------------------------------------------------------------------
// Evaluation

double phi_exp_profile(double x) { return x <= 0.0 ? x : x + x * x; }

namespace {

// Index m >= 1 with y in 2m + G, or 0 when y lies in no translated copy.
int cantor_copy_index(const FatCantorSet& g, double y) {
    y = std::abs(y);
    const double m = std::floor(y / 2.0);
    if (m < 1.0) return 0;
    if (m > static_cast<double>(std::numeric_limits<int>::max() / 2)) return 0;
    return g.contains(y - 2.0 * m) ? static_cast<int>(m) : 0;
}

}  // namespace

double eval_weight(const WeightSpec& w, double x) {
    return std::visit(
        overloaded{
            [](const weight::Constant& s) { return s.c; },
            [&](const weight::PowerOnePlus& s) { return std::pow(1.0 + std::abs(x), s.alpha); },
            [&](const weight::PowerAbs& s) { return std::pow(std::abs(x), s.gamma); },
            [&](const weight::Exp& s) { return std::exp(s.c * x); },
            [&](const weight::ExpAbs& s) { return std::exp(s.c * std::abs(x)); },
            [&](const weight::SubExp& s) { return std::exp(s.c * std::pow(std::abs(x), s.beta)); },
            [&](const weight::SuperExp& s) {
                return x < 0.0 ? std::exp(std::pow(-x, s.alpha1)) : std::exp(std::pow(x, s.alpha2));
            },
            [&](const weight::PhiExp& s) { return std::exp(s.c * phi_exp_profile(x)); },
            [&](const weight::CantorFlat& s) { return FatCantorSet(s.depth).contains(x) ? 1.0 : 2.0; },
            [&](const weight::CantorSeq& s) {
                const int m = cantor_copy_index(FatCantorSet(s.depth), x);
                return m == 0 ? 1.0 : s.b(m);
            },
        },
        w);
}

double log_weight(const WeightSpec& w, double x) {
    return std::visit(
        overloaded{
            [](const weight::Constant& s) { return std::log(s.c); },
            [&](const weight::PowerOnePlus& s) { return s.alpha * std::log1p(std::abs(x)); },
            [&](const weight::PowerAbs& s) { return s.gamma == 0.0 ? 0.0 : s.gamma * std::log(std::abs(x)); },
            [&](const weight::Exp& s) { return s.c * x; },
            [&](const weight::ExpAbs& s) { return s.c * std::abs(x); },
            [&](const weight::SubExp& s) { return s.c * std::pow(std::abs(x), s.beta); },
            [&](const weight::SuperExp& s) { return x < 0.0 ? std::pow(-x, s.alpha1) : std::pow(x, s.alpha2); },
            [&](const weight::PhiExp& s) { return s.c * phi_exp_profile(x); },
            [&](const auto& s) { return std::log(eval_weight(s, x)); },
        },
        w);
}

bool is_continuous(const WeightSpec& w) {
    return !std::holds_alternative<weight::CantorFlat>(w) && !std::holds_alternative<weight::CantorSeq>(w);
}

std::vector<double> breakpoints(const WeightSpec& w, double a, double b) {
    std::vector<double> out;
    const bool kink_at_zero = !std::holds_alternative<weight::Constant>(w) && !std::holds_alternative<weight::Exp>(w);
    if (kink_at_zero && a < 0.0 && b > 0.0) out.push_back(0.0);
    return out;
}

// ---------------------------------------------------------------------------
// DSL

void validate(const WeightSpec& w) {
    auto positive = [](double v, const char* what) {
        if (!(v > 0.0) || !std::isfinite(v)) throw RangeError(std::string(what) + " must be a positive finite number");
    };
    auto finite = [](double v, const char* what) {
        if (!std::isfinite(v)) throw RangeError(std::string(what) + " must be finite");
    };
    auto depth_ok = [](int d) {
        if (d < 0 || d > FatCantorSet::kMaxDepth) throw RangeError("depth must lie in [0, 30]");
    };
    std::visit(overloaded{
                   [&](const weight::Constant& s) { positive(s.c, "const c"); },
                   [&](const weight::PowerOnePlus& s) { finite(s.alpha, "power alpha"); },
                   [&](const weight::PowerAbs& s) { finite(s.gamma, "powerabs gamma"); },
                   [&](const weight::Exp& s) { positive(s.c, "exp c"); },
                   [&](const weight::ExpAbs& s) { positive(s.c, "expabs c"); },
                   [&](const weight::SubExp& s) {
                       positive(s.c, "subexp c");
                       if (!(s.beta > 0.0 && s.beta <= 1.0)) throw RangeError("subexp beta must lie in (0, 1]");
                   },
                   [&](const weight::SuperExp& s) {
                       if (!(s.alpha1 > 1.0 && s.alpha2 > 1.0) || !std::isfinite(s.alpha1) || !std::isfinite(s.alpha2))
                           throw RangeError("superexp exponents must exceed 1");
                   },
                   [&](const weight::PhiExp& s) { positive(s.c, "phiexp c"); },
                   [&](const weight::CantorFlat& s) { depth_ok(s.depth); },
                   [&](const weight::CantorSeq& s) {
                       depth_ok(s.depth);
                       positive(s.b.power, "cantorseq bpow");
                   },
               },
               w);
}

namespace {

int integer_param(const ParsedSpec& p, const char* key) {
    const double v = p.require(key);
    if (v != std::floor(v) || std::abs(v) > 1e6) throw RangeError(std::string(key) + " must be an integer");
    return static_cast<int>(v);
}

}  // namespace

WeightSpec parse_weight_spec(std::string_view text) {
    static const std::vector<std::string> names{"const",    "power",  "powerabs", "exp",    "expabs",
                                                "subexp",   "superexp", "phiexp", "cantor", "cantorseq"};
    const ParsedSpec p = parse_spec_syntax(text, names);
    WeightSpec w;
    if (p.name == "const") {
        p.restrict_keys({"c"});
        w = weight::Constant{p.get("c").value_or(1.0)};
    } else if (p.name == "power") {
        p.restrict_keys({"alpha"});
        w = weight::PowerOnePlus{p.require("alpha")};
    } else if (p.name == "powerabs") {
        p.restrict_keys({"gamma"});
        w = weight::PowerAbs{p.require("gamma")};
    } else if (p.name == "exp") {
        p.restrict_keys({"c"});
        w = weight::Exp{p.require("c")};
    } else if (p.name == "expabs") {
        p.restrict_keys({"c"});
        w = weight::ExpAbs{p.require("c")};
    } else if (p.name == "subexp") {
        p.restrict_keys({"c", "beta"});
        w = weight::SubExp{p.require("c"), p.require("beta")};
    } else if (p.name == "superexp") {
        p.restrict_keys({"alpha1", "alpha2"});
        w = weight::SuperExp{p.require("alpha1"), p.require("alpha2")};
    } else if (p.name == "phiexp") {
        p.restrict_keys({"c"});
        w = weight::PhiExp{p.require("c")};
    } else if (p.name == "cantor") {
        p.restrict_keys({"depth"});
        w = weight::CantorFlat{integer_param(p, "depth")};
    } else {
        p.restrict_keys({"depth", "bpow"});
        w = weight::CantorSeq{integer_param(p, "depth"), BSequence{p.get("bpow").value_or(1.0)}};
    }
    validate(w);
    return w;
}

std::string format_weight_spec(const WeightSpec& w) {
    auto kv = [](const char* k, double v) { return std::string(k) + "=" + format_number(v); };
    return std::visit(
        overloaded{
            [&](const weight::Constant& s) { return "const:" + kv("c", s.c); },
            [&](const weight::PowerOnePlus& s) { return "power:" + kv("alpha", s.alpha); },
            [&](const weight::PowerAbs& s) { return "powerabs:" + kv("gamma", s.gamma); },
            [&](const weight::Exp& s) { return "exp:" + kv("c", s.c); },
            [&](const weight::ExpAbs& s) { return "expabs:" + kv("c", s.c); },
            [&](const weight::SubExp& s) { return "subexp:" + kv("c", s.c) + "," + kv("beta", s.beta); },
            [&](const weight::SuperExp& s) {
                return "superexp:" + kv("alpha1", s.alpha1) + "," + kv("alpha2", s.alpha2);
            },
            [&](const weight::PhiExp& s) { return "phiexp:" + kv("c", s.c); },
            [&](const weight::CantorFlat& s) { return "cantor:" + kv("depth", s.depth); },
            [&](const weight::CantorSeq& s) {
                return "cantorseq:" + kv("depth", s.depth) + "," + kv("bpow", s.b.power);
            },
        },
        w);
}

double weight_regularity_ratio(const WeightSpec& w, double R, double eps, std::span<const double> x_samples,
                               std::span<const double> y_samples) {
    if (!(R > 0.0) || !(eps > 0.0)) throw PreconditionError("regularity ratio needs R > 0 and eps > 0");
    double best = -std::numeric_limits<double>::infinity();
    for (double x : x_samples) {
        if (std::abs(x) < R) continue;
        const double lx = log_weight(w, x);
        for (double y : y_samples) {
            if (std::abs(y) > eps) continue;
            best = std::max(best, log_weight(w, x + y) - lx);
        }
    }
    if (best == -std::numeric_limits<double>::infinity())
        throw PreconditionError("regularity ratio: no sample pair with |x| >= R and |y| <= eps");
    return std::exp(best);
}

}  // namespace fmlab
