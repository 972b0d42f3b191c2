#include "fmlab/multipliers.hpp"

#include "fmlab/errors.hpp"
#include "fmlab/mollify.hpp"
#include "fmlab/quadrature.hpp"
#include "fmlab/spec_syntax.hpp"

#include <Eigen/Dense>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace fmlab {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;
}  // namespace

struct MultiplierSymbol::Node {
    Kind kind;
    cplx c{0.0, 0.0};
    double p0 = 0.0, p1 = 0.0;
    int n = 0;
    std::shared_ptr<const Node> lhs, rhs;
    std::optional<Grid> table_grid;
    std::vector<cplx> table;
};

namespace {

using NodePtr = std::shared_ptr<MultiplierSymbol::Node>;

NodePtr make_node(MultiplierSymbol::Kind k) {
    auto node = std::make_shared<MultiplierSymbol::Node>();
    node->kind = k;
    return node;
}

cplx a_minus_alpha_real(double alpha, double xi) {
    const double mod = std::pow(std::abs(xi), -alpha);
    if (xi > 0.0) return {mod, 0.0};
    return std::polar(mod, -kPi * alpha);  // arg(xi + i0) = pi
}

}  // namespace

MultiplierSymbol MultiplierSymbol::constant(cplx c) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw RangeError("constant symbol must be finite");
    auto node = make_node(Kind::Constant);
    node->c = c;
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::mollifier_transform(int j) {
    if (j < 1) throw RangeError("mollifier index j must be positive");
    auto node = make_node(Kind::MollifierTransform);
    node->n = j;
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::a_minus_alpha(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("a_{-alpha} needs 0 < alpha < 1");
    auto node = make_node(Kind::AMinusAlpha);
    node->p0 = alpha;
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::band_indicator(double lo, double hi) {
    if (!(lo < hi)) throw RangeError("band indicator needs lo < hi");
    auto node = make_node(Kind::BandIndicator);
    node->p0 = lo;
    node->p1 = hi;
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::modulation(double y) {
    if (!std::isfinite(y)) throw RangeError("modulation shift must be finite");
    auto node = make_node(Kind::Modulation);
    node->p0 = y;
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::lorentzian() { return MultiplierSymbol(make_node(Kind::Lorentzian)); }

MultiplierSymbol MultiplierSymbol::tabulated(const Grid& grid, std::vector<cplx> values) {
    if (values.size() != grid.size()) throw PreconditionError("tabulated symbol needs one value per frequency");
    for (const cplx& v : values)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw RangeError("tabulated symbol must be finite");
    auto node = make_node(Kind::Tabulated);
    node->table_grid = grid;
    node->table = std::move(values);
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::shifted(const MultiplierSymbol& a, double eta) {
    auto node = make_node(Kind::Shifted);
    node->lhs = a.node_;
    node->p0 = eta;
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::product(const MultiplierSymbol& a, const MultiplierSymbol& b) {
    auto node = make_node(Kind::Product);
    node->lhs = a.node_;
    node->rhs = b.node_;
    return MultiplierSymbol(node);
}

MultiplierSymbol MultiplierSymbol::power(const MultiplierSymbol& a, int m) {
    if (m < 0) throw RangeError("symbol power must be nonnegative");
    auto node = make_node(Kind::Power);
    node->lhs = a.node_;
    node->n = m;
    return MultiplierSymbol(node);
}

MultiplierSymbol::Kind MultiplierSymbol::kind() const noexcept { return node_->kind; }

cplx MultiplierSymbol::eval(double xi, double reg) const {
    const Node& nd = *node_;
    switch (nd.kind) {
        case Kind::Constant: return nd.c;
        case Kind::MollifierTransform: return bump_transform(cplx{xi / nd.n, 0.0});
        case Kind::AMinusAlpha:
            if (xi == 0.0) {
                if (!(reg > 0.0)) throw NumericalError("a_{-alpha} is singular at xi = 0");
                return std::exp(-nd.p0 * std::log(cplx{0.0, reg}));
            }
            return a_minus_alpha_real(nd.p0, xi);
        case Kind::BandIndicator: return (xi >= nd.p0 && xi <= nd.p1) ? 1.0 : 0.0;
        case Kind::Modulation: return std::polar(1.0, -xi * nd.p0);
        case Kind::Lorentzian: return 1.0 / (1.0 + xi * xi);
        case Kind::Tabulated: {
            const Grid& g = *nd.table_grid;
            const double s = xi / g.frequency_step() + static_cast<double>(g.size() / 2);
            if (s < 0.0 || s > static_cast<double>(g.size() - 1)) return 0.0;
            const auto i = std::min(static_cast<std::size_t>(s), g.size() - 2);
            const double r = s - static_cast<double>(i);
            return (1.0 - r) * nd.table[i] + r * nd.table[i + 1];
        }
        case Kind::Shifted: return MultiplierSymbol(nd.lhs).eval(xi + nd.p0, reg);
        case Kind::Product: return MultiplierSymbol(nd.lhs).eval(xi, reg) * MultiplierSymbol(nd.rhs).eval(xi, reg);
        case Kind::Power: {
            const cplx base = MultiplierSymbol(nd.lhs).eval(xi, reg);
            cplx out{1.0, 0.0};
            for (int k = 0; k < nd.n; ++k) out *= base;
            return out;
        }
    }
    return {0.0, 0.0};
}

cplx MultiplierSymbol::operator()(double xi) const { return eval(xi, 0.0); }

double MultiplierSymbol::analytic_height() const noexcept {
    const Node& nd = *node_;
    switch (nd.kind) {
        case Kind::Constant:
        case Kind::MollifierTransform:
        case Kind::AMinusAlpha:
        case Kind::Modulation: return kInf;
        case Kind::Lorentzian: return 1.0;
        case Kind::BandIndicator:
        case Kind::Tabulated: return 0.0;
        case Kind::Shifted:
        case Kind::Power: return MultiplierSymbol(nd.lhs).analytic_height();
        case Kind::Product:
            return std::min(MultiplierSymbol(nd.lhs).analytic_height(), MultiplierSymbol(nd.rhs).analytic_height());
    }
    return 0.0;
}

cplx MultiplierSymbol::at_complex(cplx zeta) const {
    if (zeta.imag() == 0.0) return eval(zeta.real(), 0.0);
    if (zeta.imag() < 0.0 || zeta.imag() >= analytic_height())
        throw PreconditionError("symbol has no analytic continuation at Im zeta = " + std::to_string(zeta.imag()));
    const Node& nd = *node_;
    switch (nd.kind) {
        case Kind::Constant: return nd.c;
        case Kind::MollifierTransform: return bump_transform(zeta / static_cast<double>(nd.n));
        case Kind::AMinusAlpha: return std::exp(-nd.p0 * std::log(zeta));
        case Kind::Modulation: return std::exp(cplx{0.0, -nd.p0} * zeta);
        case Kind::Lorentzian: return 1.0 / (1.0 + zeta * zeta);
        case Kind::Shifted: return MultiplierSymbol(nd.lhs).at_complex(zeta + nd.p0);
        case Kind::Product: return MultiplierSymbol(nd.lhs).at_complex(zeta) * MultiplierSymbol(nd.rhs).at_complex(zeta);
        case Kind::Power: {
            const cplx base = MultiplierSymbol(nd.lhs).at_complex(zeta);
            cplx out{1.0, 0.0};
            for (int k = 0; k < nd.n; ++k) out *= base;
            return out;
        }
        default: break;
    }
    throw PreconditionError("symbol has no analytic continuation");
}

std::vector<cplx> MultiplierSymbol::sample(const Grid& grid) const {
    std::vector<cplx> out(grid.size());
    const double reg = 0.5 * grid.frequency_step();
    for (std::size_t i = 0; i < grid.size(); ++i) out[i] = eval(grid.frequency(i), reg);
    return out;
}

std::string MultiplierSymbol::describe() const {
    const Node& nd = *node_;
    std::ostringstream os;
    switch (nd.kind) {
        case Kind::Constant: os << "const:re=" << format_number(nd.c.real()) << ",im=" << format_number(nd.c.imag()); break;
        case Kind::MollifierTransform: os << "mollifier:j=" << nd.n; break;
        case Kind::AMinusAlpha: os << "aminus:alpha=" << format_number(nd.p0); break;
        case Kind::BandIndicator: os << "band:lo=" << format_number(nd.p0) << ",hi=" << format_number(nd.p1); break;
        case Kind::Modulation: os << "mod:y=" << format_number(nd.p0); break;
        case Kind::Lorentzian: os << "lorentz"; break;
        case Kind::Tabulated: os << "table[" << nd.table.size() << "]"; break;
        case Kind::Shifted: os << "shift(" << MultiplierSymbol(nd.lhs).describe() << "," << format_number(nd.p0) << ")"; break;
        case Kind::Product:
            os << "(" << MultiplierSymbol(nd.lhs).describe() << ")*(" << MultiplierSymbol(nd.rhs).describe() << ")";
            break;
        case Kind::Power: os << "(" << MultiplierSymbol(nd.lhs).describe() << ")^" << nd.n; break;
    }
    return os.str();
}

MultiplierSymbol parse_symbol_spec(std::string_view text) {
    const ParsedSpec s = parse_spec_syntax(text, {"const", "lorentz", "band", "mod", "mollifier", "aminus"});
    if (s.name == "const") {
        s.restrict_keys({"re", "im"});
        return MultiplierSymbol::constant({s.get("re").value_or(1.0), s.get("im").value_or(0.0)});
    }
    if (s.name == "lorentz") {
        s.restrict_keys({});
        return MultiplierSymbol::lorentzian();
    }
    if (s.name == "band") {
        s.restrict_keys({"lo", "hi"});
        return MultiplierSymbol::band_indicator(s.require("lo"), s.require("hi"));
    }
    if (s.name == "mod") {
        s.restrict_keys({"y"});
        return MultiplierSymbol::modulation(s.require("y"));
    }
    if (s.name == "mollifier") {
        s.restrict_keys({"j"});
        const double j = s.require("j");
        if (j != std::floor(j) || j < 1 || j > 1e6) throw RangeError("mollifier index j must be a positive integer");
        return MultiplierSymbol::mollifier_transform(static_cast<int>(j));
    }
    s.restrict_keys({"alpha"});
    return MultiplierSymbol::a_minus_alpha(s.require("alpha"));
}

KernelSpec KernelSpec::sampled(SampledFunction k) {
    KernelSpec out;
    out.samples_ = std::move(k);
    return out;
}

KernelSpec KernelSpec::singular(double alpha, cplx k_alpha) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("singular kernel needs 0 < alpha < 1");
    KernelSpec out;
    out.alpha_ = alpha;
    out.k_alpha_ = k_alpha;
    return out;
}

SampledFunction apply_multiplier(const MultiplierSymbol& a, const SampledFunction& f) {
    const Spectrum s = forward_transform(f);
    const std::vector<cplx> sym = a.sample(f.grid());
    std::vector<cplx> prod(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        prod[i] = sym[i] * s[i];
        if (!std::isfinite(sym[i].real()) || !std::isfinite(sym[i].imag()))
            throw NumericalError("symbol is not finite at xi = " + std::to_string(s.frequency(i)));
    }
    return inverse_transform(Spectrum(f.grid(), std::move(prod)));
}

SampledFunction exp_conjugated_image(const MultiplierSymbol& a, const SampledFunction& f, double c) {
    if (!(c > 0.0)) throw PreconditionError("exp conjugation needs c > 0");
    if (!(a.analytic_height() > c))
        throw PreconditionError("symbol does not extend analytically to Im xi = " + std::to_string(c));
    const Grid& g = f.grid();
    const SampledFunction lifted =
        SampledFunction(g, [&] {
            std::vector<cplx> v(g.size());
            for (std::size_t n = 0; n < g.size(); ++n) v[n] = std::exp(c * g.node(n)) * f[n];
            return v;
        }());
    const Spectrum s = forward_transform(lifted);
    std::vector<cplx> prod(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) prod[i] = a.at_complex({s.frequency(i), c}) * s[i];
    return inverse_transform(Spectrum(g, std::move(prod)));
}

PlateauProfile::PlateauProfile(double rho) : rho_(rho), centre_(0.5 * (1.0 + rho)), width_(0.5 * (rho - 1.0)) {
    if (!(rho > 1.0) || !std::isfinite(rho)) throw RangeError("plateau ratio rho must exceed 1");
}

double PlateauProfile::operator()(double x) const {
    return bump_cdf((x + centre_) / width_) - bump_cdf((x - centre_) / width_);
}

SampledFunction smooth_plateau_bump(double rho, const Grid& grid, double delta, double y) {
    const PlateauProfile phi(rho);
    if (!(delta > 0.0)) throw PreconditionError("plateau scale delta must be positive");
    if ((rho - 1.0) / delta < 16.0 * grid.spacing())
        throw PreconditionError("grid too coarse: fewer than 16 samples across the plateau transition band");
    return SampledFunction::from(grid, [&](double x) { return cplx{phi(delta * (x - y)), 0.0}; });
}

ProbeCertificate probe_lower_bound(const MultiplierSymbol& a, const SpaceSpec& space, const Grid& grid, double eta,
                                   double delta, double y, double rho, ProbeRoute route) {
    if (!(delta > 0.0)) throw PreconditionError("probe needs delta > 0");
    const double reach = rho / delta, half = 0.5 * grid.half_width();
    if (y - reach < -half - 1e-12 || y + reach > half + 1e-12)
        throw PreconditionError("probe support B(y, rho/delta) leaves [-L/2, L/2]");
    if (std::abs(eta) > grid.nyquist()) throw PreconditionError("probe frequency beyond the Nyquist range");

    const SampledFunction bump_part = smooth_plateau_bump(rho, grid, delta, y);
    std::vector<cplx> v(grid.size());
    for (std::size_t n = 0; n < grid.size(); ++n) v[n] = std::polar(1.0, -eta * grid.node(n)) * bump_part[n];
    const SampledFunction f(grid, std::move(v));

    const double denom = weighted_lp_norm(f, space);
    if (!(denom > 0.0)) throw NumericalError("probe has zero norm");
    double numer;
    if (route == ProbeRoute::ExpConjugated) {
        const auto* e = std::get_if<weight::Exp>(&space.weight);
        if (!e) throw PreconditionError("the exp-conjugated probe route needs an Exp(c) weight");
        numer = weighted_lp_norm(exp_conjugated_image(a, f, e->c), SpaceSpec{space.p, weight::Constant{}});
    } else {
        numer = weighted_lp_norm(apply_multiplier(a, f), space);
    }
    const double corr = std::exp(log_ball_indicator_norm(space, y, reach) - log_ball_indicator_norm(space, y, 1.0 / delta));
    return ProbeCertificate{eta, delta, y, rho, numer / denom, corr};
}

std::vector<double> default_delta_schedule(const Grid& grid, double rho) {
    std::vector<double> out;
    const double floor_delta = std::max(8.0, 2.0 * rho) / grid.half_width();
    for (double d = 1.0; d >= floor_delta - 1e-15; d *= 0.5) out.push_back(d);
    if (out.empty()) throw PreconditionError("grid too small for any probe with delta <= 1");
    return out;
}

CertificateSweep certificate_sweep(const MultiplierSymbol& a, const SpaceSpec& space, const Grid& grid,
                                   std::span<const double> etas, std::span<const double> deltas,
                                   std::span<const double> centres, double rho, ProbeRoute route) {
    if (etas.empty() || deltas.empty() || centres.empty()) throw PreconditionError("certificate sweep needs nonempty schedules");
    CertificateSweep out{{}, 0.0};
    const double half = 0.5 * grid.half_width();
    for (double eta : etas) {
        std::optional<ProbeCertificate> best;
        for (double d : deltas) {
            for (double y : centres) {
                if (y - rho / d < -half - 1e-12 || y + rho / d > half + 1e-12) continue;
                const ProbeCertificate c = probe_lower_bound(a, space, grid, eta, d, y, rho, route);
                if (!best || c.lower_bound > best->lower_bound) best = c;
            }
        }
        if (!best) throw PreconditionError("no probe in the schedule fits inside [-L/2, L/2]");
        double modulus = std::numeric_limits<double>::quiet_NaN();
        try {
            modulus = std::abs(a(eta));
        } catch (const NumericalError&) {
        }
        out.rows.push_back({eta, modulus, *best});
        out.overall = std::max(out.overall, best->lower_bound);
    }
    return out;
}

double discrete_l2_operator_norm(const MultiplierSymbol& a, const WeightSpec& w, const Grid& grid, std::size_t n_small) {
    if (n_small > 512) throw PreconditionError("dense operator norm is limited to n_small <= 512");
    const Grid sub = grid.resampled(n_small);
    const auto n = static_cast<Eigen::Index>(n_small);

    // the unweighted operator is circulant: column j is the image of e_0 rolled by j
    std::vector<cplx> e0(n_small);
    e0[0] = 1.0;
    const SampledFunction t = apply_multiplier(a, SampledFunction(sub, std::move(e0)));
    std::vector<double> lw(n_small);
    for (std::size_t i = 0; i < n_small; ++i) lw[i] = log_weight(w, sub.node(i));

    Eigen::MatrixXcd A(n, n);
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i) {
            const std::size_t k = static_cast<std::size_t>((i - j + n) % n);
            A(i, j) = t[k] * std::exp(lw[static_cast<std::size_t>(i)] - lw[static_cast<std::size_t>(j)]);
        }
    if (!A.allFinite()) throw NumericalError("weighted operator matrix overflows");
    const Eigen::MatrixXcd G = A.adjoint() * A;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw NumericalError("eigen-solver did not converge");
    return std::sqrt(std::max(0.0, es.eigenvalues().maxCoeff()));
}

KernelBound kernel_l1_upper_bound(const KernelSpec& k, const WeightSpec& w) {
    const bool caveat = !(std::holds_alternative<weight::Exp>(w) || std::holds_alternative<weight::PhiExp>(w));
    if (!k.is_singular()) {
        const SampledFunction& s = k.samples();
        double sum = 0.0;
        for (std::size_t n = 0; n < s.size(); ++n) {
            const double m = std::abs(s[n]);
            if (m == 0.0) continue;
            sum += std::exp(std::log(m) + log_weight(w, s.grid().node(n)));
        }
        return {s.grid().spacing() * sum, caveat};
    }
    const double alpha = k.alpha(), mod = std::abs(k.k_alpha());
    if (mod == 0.0) return {0.0, caveat};
    // on x < 0 both preset families are e^{cx}: integral of t^{alpha-1} e^{-ct} is Gamma(alpha) c^{-alpha}
    double c = 0.0;
    if (const auto* e = std::get_if<weight::Exp>(&w)) c = e->c;
    if (const auto* e = std::get_if<weight::PhiExp>(&w)) c = e->c;
    if (c > 0.0) return {mod * boost::math::tgamma(alpha) * std::pow(c, -alpha), caveat};
    if (const auto* pw = std::get_if<weight::PowerOnePlus>(&w); pw && pw->alpha < -alpha) {
        // t = u^{1/alpha} removes the t^{alpha-1} singularity
        const double a = pw->alpha;
        const QuadResult q =
            integrate_half_line([&](double u) { return std::pow(1.0 + std::pow(u, 1.0 / alpha), a); }, 1e-10);
        return {mod * q.value / alpha, caveat};
    }
    return {kInf, caveat};
}

KAlphaCalibration calibrate_k_alpha(double alpha, const Grid& grid) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw RangeError("calibration needs 0 < alpha < 1");
    static constexpr double kRefs[] = {-2.0, -1.0, 1.0, 2.0};
    if (grid.nyquist() < 2.0) throw PreconditionError("reference frequencies exceed the grid's Nyquist range");

    boost::math::quadrature::ooura_fourier_cos<double> cos_int;
    boost::math::quadrature::ooura_fourier_sin<double> sin_int;
    auto kernel = [alpha](double t) { return std::pow(t, alpha - 1.0); };

    // (F f^-)(xi) = integral_0^inf t^{alpha-1} e^{i t xi} dt
    cplx transforms[4];
    cplx targets[4];
    for (int r = 0; r < 4; ++r) {
        const double xi = kRefs[r], om = std::abs(xi);
        const double cpart = cos_int.integrate(kernel, om).first;
        const double spart = sin_int.integrate(kernel, om).first;
        transforms[r] = {cpart, xi > 0 ? spart : -spart};
        targets[r] = a_minus_alpha_real(alpha, xi);
    }
    cplx num{0.0, 0.0};
    double den = 0.0;
    for (int r = 0; r < 4; ++r) {
        num += std::conj(transforms[r]) * targets[r];
        den += std::norm(transforms[r]);
    }
    const cplx k = num / den;
    double residual = 0.0;
    for (int r = 0; r < 4; ++r) residual = std::max(residual, std::abs(k * transforms[r] - targets[r]));
    if (residual > 1e-4) throw NumericalError("k_alpha calibration residual above 1e-4", residual);
    return {k, residual};
}

}  // namespace fmlab
