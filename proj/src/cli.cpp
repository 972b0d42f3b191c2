#include "fmlab/cli.hpp"

#include "fmlab/errors.hpp"
#include "fmlab/mollify.hpp"
#include "fmlab/multipliers.hpp"
#include "fmlab/norms.hpp"
#include "fmlab/report.hpp"
#include "fmlab/scenarios.hpp"
#include "fmlab/spec_syntax.hpp"
#include "fmlab/weights.hpp"

#include "CLI11.hpp"

#include <charconv>
#include <cmath>
#include <iostream>
#include <limits>
#include <random>

namespace fmlab::cli {

namespace {

constexpr const char* kGrammar =
    "weight spec:  name(:key=number(,key=number)*)?\n"
    "  const:c  power:alpha  powerabs:gamma  exp:c  expabs:c  subexp:c,beta  superexp:alpha1,alpha2\n"
    "  phiexp:c  cantor:depth  cantorseq:depth,bpow\n"
    "symbol spec:  const:re,im  lorentz  band:lo,hi  mod:y  mollifier:j  aminus:alpha\n"
    "lists are comma separated (e.g. --R 4,8,16); --p accepts a real >= 1 or inf\n";

struct Config {
    std::string weight = "const:c=1";
    std::string p = "2";
    double L = 32.0;
    std::size_t N = 2048;
    std::string format = "csv";
    std::string out;
    std::uint64_t seed = 1;
};

void add_common(CLI::App* sub, Config& cfg) {
    sub->add_option("--weight", cfg.weight, "weight spec");
    sub->add_option("--p", cfg.p, "exponent p (real >= 1 or inf)");
    sub->add_option("--L", cfg.L, "grid half-width");
    sub->add_option("--N", cfg.N, "grid node count (power of two)");
    sub->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", cfg.out, "output path (stdout when empty)");
    sub->add_option("--seed", cfg.seed, "random seed");
}

double parse_p(const std::string& text) {
    if (text == "inf") return std::numeric_limits<double>::infinity();
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (ec != std::errc() || ptr != text.data() + text.size()) throw ParseError(0, {"real", "inf"}, text);
    if (!(v >= 1.0)) throw RangeError("p must be >= 1");
    return v;
}

std::string p_text(double p) { return std::isinf(p) ? "inf" : format_number(p); }

std::string list_text(const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_number(v[i]);
    return s;
}

std::vector<std::pair<std::string, std::string>> base_meta(const Config& cfg, const SpaceSpec& X) {
    return {{"weight", format_weight_spec(X.weight)},
            {"p", p_text(X.p)},
            {"grid", "L=" + format_number(cfg.L) + ",N=" + std::to_string(cfg.N)},
            {"seed", std::to_string(cfg.seed)}};
}

class Emitter {
public:
    Emitter(const Config& cfg, std::ostream& out) : cfg_(cfg), out_(out) {}
    void emit(const std::string& text) const {
        if (cfg_.out.empty())
            out_ << text;
        else
            write_atomically(cfg_.out, text);
    }
    void table(const Table& t) const { emit(cfg_.format == "json" ? to_json(t) : to_csv(t)); }

private:
    const Config& cfg_;
    std::ostream& out_;
};

Cell text(const std::string& s) { return Cell{s}; }

}  // namespace

int run(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Fourier multipliers on weighted L^p: doubling, A_p, probes, kernels, scenarios"};
    app.name(argv.empty() ? "fmlab" : argv[0]);
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    app.footer(kGrammar);

    Config cfg;
    // doubling / witness
    double tau = 2.0;
    std::vector<double> R{4.0, 8.0, 16.0};
    std::vector<double> ys{-20.0, -10.0, 0.0, 10.0, 20.0};
    int count = 20;
    // ap
    int K = 10;
    // multipliers
    std::string symbol = "lorentz";
    std::size_t n_small = 256;
    std::vector<double> etas{0.0};
    std::vector<double> deltas;
    double rho = 2.0;
    std::string route = "periodic";
    double alpha = 0.5;
    int kernel_j = 0;
    // young
    int young_j = 2;
    double kshift = 0.0;
    double omega_hi = std::numeric_limits<double>::infinity();
    // scenarios
    int depth = 8, m_max = 5, demo_j = 0, probes = 50, k_max = 20;
    double bpow = 1.0, c = 1.0, alpha1 = 2.0, alpha2 = 2.0, eps = 0.25;
    std::vector<double> x0s{1.0, -1.0, 2.0, -2.0};
    std::string scenario_name;

    auto* doubling = app.add_subcommand("doubling", "doubling-constant estimate over (y, R) schedules");
    add_common(doubling, cfg);
    doubling->add_option("--tau", tau, "dilation tau > 1");
    doubling->add_option("--R", R, "radius schedule (increasing)")->delimiter(',');
    doubling->add_option("--y", ys, "searched centres")->delimiter(',');

    auto* witness = app.add_subcommand("witness", "weak-doubling witness sequence (subexp weights)");
    add_common(witness, cfg);
    witness->add_option("--tau", tau, "dilation tau > 1");
    witness->add_option("--count", count, "number of witness points");

    auto* ap = app.add_subcommand("ap", "A_p constant with the A_X cross-check");
    add_common(ap, cfg);
    ap->add_option("--K", K, "dyadic family level");

    auto* mnorm = app.add_subcommand("mnorm", "dense weighted l^2 operator norm");
    add_common(mnorm, cfg);
    mnorm->add_option("--symbol", symbol, "symbol spec");
    mnorm->add_option("--nsmall", n_small, "dense grid size (<= 512)");

    auto* probe = app.add_subcommand("probe", "modulated plateau probe certificates");
    add_common(probe, cfg);
    probe->add_option("--symbol", symbol, "symbol spec");
    probe->add_option("--eta", etas, "probed frequencies")->delimiter(',');
    probe->add_option("--delta", deltas, "delta schedule (empty: 1, 1/2, ... down to 8/L)")->delimiter(',');
    probe->add_option("--y", ys, "probe centres")->delimiter(',');
    probe->add_option("--rho", rho, "plateau ratio > 1");
    probe->add_option("--route", route, "periodic or exp (contour shift, exp weights only)")
        ->check(CLI::IsMember({"periodic", "exp"}));

    auto* kernel = app.add_subcommand("kernelbound", "kernel L^1(w) upper bound");
    add_common(kernel, cfg);
    kernel->add_option("--alpha", alpha, "singular kernel k_alpha f^-_{alpha-1}");
    kernel->add_option("--mollifier", kernel_j, "use the sampled mollifier rho_j instead (j > 0)");

    auto* lebesgue = app.add_subcommand("lebesgue", "approximation integral I(delta) at a frequency");
    add_common(lebesgue, cfg);
    lebesgue->add_option("--symbol", symbol, "symbol spec");
    lebesgue->add_option("--eta", etas, "frequencies")->delimiter(',');
    lebesgue->add_option("--delta", deltas, "delta schedule (empty: 1, 1/2, 1/4, 1/8)")->delimiter(',');
    lebesgue->add_option("--rho", rho, "plateau ratio of psi's bump");

    auto* young = app.add_subcommand("young", "weighted Young inequality (w* = w = --weight)");
    add_common(young, cfg);
    young->add_option("--j", young_j, "kappa = rho_j shifted by --kshift");
    young->add_option("--kshift", kshift, "kernel shift");
    young->add_option("--omega-hi", omega_hi, "Omega = (-inf, omega-hi]");

    auto* scenario = app.add_subcommand("scenario", "run a scenario: two-classes exp-unbounded nondoubling power-trick superexp");
    add_common(scenario, cfg);
    scenario->add_option("name", scenario_name, "scenario name")
        ->required()
        ->check(CLI::IsMember({"two-classes", "exp-unbounded", "nondoubling", "power-trick", "superexp"}));
    scenario->add_option("--depth", depth, "two-classes: Cantor depth");
    scenario->add_option("--mmax", m_max, "two-classes / power-trick: largest m");
    scenario->add_option("--j", demo_j, "two-classes: mollifier index (0 = automatic)");
    scenario->add_option("--bpow", bpow, "two-classes: b_m = (m+1)^-bpow");
    scenario->add_option("--c", c, "exp-unbounded / nondoubling: weight rate c");
    scenario->add_option("--alpha", alpha, "exp-unbounded: symbol exponent");
    scenario->add_option("--probes", probes, "exp-unbounded: random probe count");
    scenario->add_option("--tau", tau, "nondoubling: dilation");
    scenario->add_option("--R", R, "nondoubling: radius schedule")->delimiter(',');
    scenario->add_option("--symbol", symbol, "power-trick: symbol spec, or 'random'");
    scenario->add_option("--nsmall", n_small, "power-trick: dense grid size");
    scenario->add_option("--alpha1", alpha1, "superexp: exponent for x < 0");
    scenario->add_option("--alpha2", alpha2, "superexp: exponent for x >= 0");
    scenario->add_option("--x0", x0s, "superexp: x0 list")->delimiter(',');
    scenario->add_option("--eps", eps, "superexp: epsilon");
    scenario->add_option("--kmax", k_max, "superexp: largest k");

    std::vector<const char*> cargv;
    for (const auto& a : argv) cargv.push_back(a.c_str());
    if (cargv.empty()) cargv.push_back("fmlab");
    try {
        app.parse(static_cast<int>(cargv.size()), cargv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        if (code != 0) err << kGrammar;
        return code == 0 ? kPass : kUsage;
    }

    const Emitter emitter(cfg, out);
    try {
        const double p = parse_p(cfg.p);
        const SpaceSpec X = make_space(p, parse_weight_spec(cfg.weight));
        auto grid = [&] { return Grid(cfg.L, cfg.N); };

        if (doubling->parsed()) {
            const DoublingReport rep = doubling_constant_estimate(X, tau, R, ys);
            Table t{"doubling", base_meta(cfg, X), {"R", "inf_ratio", "argmin_y"}, {}};
            t.meta.emplace_back("tau", format_number(tau));
            t.meta.emplace_back("y_search", list_text(ys));
            t.meta.emplace_back("liminf_estimate", format_number(rep.liminf_estimate));
            bool ok = true;
            for (std::size_t r = 0; r < R.size(); ++r) {
                t.rows.push_back({R[r], rep.per_R_inf[r], rep.per_R_argmin_y[r]});
                for (double v : rep.ratios[r]) ok = ok && v >= 1.0 - 1e-12;
            }
            emitter.table(t);
            if (!ok) err << "assertion failed: a doubling ratio fell below 1\n";
            return ok ? kPass : kFailure;
        }
        if (witness->parsed()) {
            const WitnessSequence ws = weak_doubling_witness(X, tau, count);
            Table t{"witness", base_meta(cfg, X), {"j", "y", "R", "ratio"}, {}};
            t.meta.emplace_back("tau", format_number(tau));
            t.meta.emplace_back("shift", std::to_string(ws.shift));
            t.meta.emplace_back("predicted_bound", format_number(ws.predicted_bound));
            bool ok = true;
            for (const auto& pt : ws.points) {
                t.rows.push_back({std::int64_t{pt.j}, pt.y, pt.R, pt.ratio});
                if (pt.ratio > ws.predicted_bound) {
                    ok = false;
                    err << "assertion failed: witness ratio " << pt.ratio << " at j=" << pt.j << " exceeds bound\n";
                }
            }
            emitter.table(t);
            return ok ? kPass : kFailure;
        }
        if (ap->parsed()) {
            const ApReport a = ap_constant(X, K);
            const ApReport x = ax_constant(X, K);
            Table t{"ap", base_meta(cfg, X), {"quantity", "value", "coarse_value", "argmax_lo", "argmax_hi"}, {}};
            t.meta.emplace_back("K", std::to_string(K));
            t.rows.push_back({text("A_p"), a.value, a.coarse_value, a.argmax.lo, a.argmax.hi});
            t.rows.push_back({text("A_X"), x.value, x.coarse_value, x.argmax.lo, x.argmax.hi});
            emitter.table(t);
            bool ok = a.value >= 1.0 - 1e-12;
            if (std::isfinite(a.value)) ok = ok && std::abs(a.value - x.value) <= 1e-8 * a.value;
            if (!ok) err << "assertion failed: A_p = " << a.value << ", A_X = " << x.value << "\n";
            return ok ? kPass : kFailure;
        }
        if (mnorm->parsed()) {
            const MultiplierSymbol a = parse_symbol_spec(symbol);
            const Grid g = grid();
            const double nrm = discrete_l2_operator_norm(a, X.weight, g, n_small);
            double amax = 0.0;
            for (const cplx& v : a.sample(g.resampled(n_small))) amax = std::max(amax, std::abs(v));
            Table t{"mnorm", base_meta(cfg, X), {"symbol", "n_small", "operator_norm", "max_abs_symbol"}, {}};
            t.rows.push_back({text(a.describe()), static_cast<std::int64_t>(n_small), nrm, amax});
            emitter.table(t);
            return kPass;
        }
        if (probe->parsed()) {
            const MultiplierSymbol a = parse_symbol_spec(symbol);
            const Grid g = grid();
            if (deltas.empty()) deltas = default_delta_schedule(g, rho);
            const CertificateSweep sw = certificate_sweep(a, X, g, etas, deltas, ys, rho,
                                                          route == "exp" ? ProbeRoute::ExpConjugated : ProbeRoute::Periodic);
            Table t{"probe", base_meta(cfg, X),
                    {"eta", "abs_symbol", "lower_bound", "delta", "y", "rho", "doubling_correction"}, {}};
            t.meta.emplace_back("symbol", a.describe());
            t.meta.emplace_back("delta_schedule", list_text(deltas));
            t.meta.emplace_back("route", route);
            t.meta.emplace_back("overall", format_number(sw.overall));
            bool ok = true;
            for (const auto& row : sw.rows) {
                t.rows.push_back({row.eta, row.symbol_modulus, row.best.lower_bound, row.best.delta, row.best.y,
                                  row.best.rho, row.best.doubling_correction});
                ok = ok && row.best.lower_bound >= 0.0 && row.best.doubling_correction >= 1.0 - 1e-12;
            }
            emitter.table(t);
            return ok ? kPass : kFailure;
        }
        if (kernel->parsed()) {
            const Grid g = grid();
            Table t{"kernelbound", base_meta(cfg, X), {"kernel", "value", "caveat"}, {}};
            if (kernel_j > 0) {
                const KernelBound kb = kernel_l1_upper_bound(KernelSpec::sampled(mollifier(kernel_j, g)), X.weight);
                t.rows.push_back({text("mollifier:j=" + std::to_string(kernel_j)), kb.value, kb.caveat});
            } else {
                const KAlphaCalibration cal = calibrate_k_alpha(alpha, g);
                const KernelBound kb = kernel_l1_upper_bound(KernelSpec::singular(alpha, cal.k_alpha), X.weight);
                t.meta.emplace_back("k_alpha", format_number(cal.k_alpha.real()) + (cal.k_alpha.imag() < 0 ? "" : "+") +
                                                   format_number(cal.k_alpha.imag()) + "i");
                t.meta.emplace_back("calibration_residual", format_number(cal.residual));
                t.rows.push_back({text("aminus:alpha=" + format_number(alpha)), kb.value, kb.caveat});
            }
            emitter.table(t);
            return kPass;
        }
        if (lebesgue->parsed()) {
            const MultiplierSymbol a = parse_symbol_spec(symbol);
            const Grid g = grid();
            if (deltas.empty()) deltas = {1.0, 0.5, 0.25, 0.125};
            const SampledFunction psi = forward_transform(smooth_plateau_bump(rho, g)).as_function();
            Table t{"lebesgue", base_meta(cfg, X), {"eta", "delta", "I"}, {}};
            t.meta.emplace_back("symbol", a.describe());
            t.meta.emplace_back("psi", "F(plateau rho=" + format_number(rho) + ")");
            for (double eta : etas)
                for (double d : deltas) t.rows.push_back({eta, d, lebesgue_point_integral(a, eta, psi, d)});
            emitter.table(t);
            return kPass;
        }
        if (young->parsed()) {
            const Grid g = grid();
            const MollifierSpec rj{young_j};
            const SampledFunction kappa = SampledFunction::from(g, [&](double x) { return cplx{rj(x - kshift), 0.0}; });
            const SampledFunction f = SampledFunction::from(g, [](double x) { return cplx{std::exp(-x * x / 2.0), 0.0}; });
            const YoungCheck yc = weighted_young_check(kappa, f, X.weight, X.weight, X.p, SupportConstraint{-std::numeric_limits<double>::infinity(), omega_hi});
            Table t{"young", base_meta(cfg, X), {"lhs", "rhs", "holds", "preset"}, {}};
            t.meta.emplace_back("kappa", "mollifier:j=" + std::to_string(young_j) + ",shift=" + format_number(kshift));
            t.meta.emplace_back("f", "exp(-x^2/2)");
            t.rows.push_back({yc.lhs, yc.rhs, yc.holds, yc.preset});
            emitter.table(t);
            if (!yc.holds) err << "assertion failed: lhs " << yc.lhs << " > rhs " << yc.rhs << "\n";
            return yc.holds ? kPass : kFailure;
        }

        ScenarioReport rep;
        if (scenario_name == "two-classes") {
            rep = two_classes_demo({depth, bpow, demo_j, m_max});
        } else if (scenario_name == "exp-unbounded") {
            ExpUnboundedParams prm;
            prm.c = c;
            prm.alpha = alpha;
            prm.p = p;
            prm.L = cfg.L;
            prm.N = cfg.N;
            prm.refine_from = std::max<std::size_t>(8, cfg.N / 2);
            prm.probes = probes;
            prm.seed = cfg.seed;
            rep = exp_weight_unbounded_demo(prm);
        } else if (scenario_name == "nondoubling") {
            NondoublingParams prm;
            prm.c = c;
            prm.tau = tau;
            prm.p = p;
            prm.R_schedule = R;
            rep = nondoubling_growth_demo(prm);
        } else if (scenario_name == "power-trick") {
            const Grid g = grid();
            const MultiplierSymbol a =
                symbol == "random" ? random_symbol(g.resampled(n_small), cfg.seed) : parse_symbol_spec(symbol);
            rep = power_trick_check(a, X.weight, g, n_small, m_max);
        } else {
            SuperExpParams prm;
            prm.alpha1 = alpha1;
            prm.alpha2 = alpha2;
            prm.x0_list = x0s;
            prm.eps = eps;
            prm.k_max = k_max;
            rep = superexp_triviality_demo(prm);
        }
        emitter.emit(cfg.format == "json" ? report_to_json(rep) : to_csv(report_table(rep)));
        for (const auto& row : rep.rows)
            if (!row.pass)
                err << "assertion failed: " << row.label << ": measured " << row.measured << " " << row.relation << " "
                    << row.predicted << "\n";
        return rep.overall_pass() ? kPass : kFailure;
    } catch (const NumericalError& e) {
        err << "numerical failure: " << e.what() << "\n";
        return kFailure;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n" << kGrammar;
        return kUsage;
    }
}

int run(int argc, const char* const* argv) {
    std::vector<std::string> args(argv, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace fmlab::cli
