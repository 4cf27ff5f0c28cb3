#include "sa/cli/experiments.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>

#include <boost/math/distributions/normal.hpp>

#include "sa/apps/bandit.hpp"
#include "sa/apps/bestof.hpp"
#include "sa/apps/darkpool.hpp"
#include "sa/apps/investment.hpp"
#include "sa/apps/var_cvar.hpp"
#include "sa/cli/svg.hpp"
#include "sa/diagnostics/diagnostics.hpp"
#include "sa/errors.hpp"
#include "sa/innovations/discrepancy.hpp"
#include "sa/innovations/rng.hpp"

namespace sa::cli {

namespace fs = std::filesystem;

const std::vector<ExperimentInfo>& list_experiments() {
    static const std::vector<ExperimentInfo> list = {
        {"implicit-correlation", "best-of call: recover the correlation rho = cos(theta) matching a market premium"},
        {"var-cvar", "VaR by quantile descent with the CVaR companion average"},
        {"ergodic-investment", "Cobb-Douglas capacity driven by a decreasing-step Euler scheme of a CIR process"},
        {"two-armed-bandit", "rewarding rule for a two-armed bandit with i.i.d. or AR(1)-dependent events"},
        {"dark-pool", "allocation of an order across dark pools on a synthetic stationary market"},
        {"discrepancy", "exact star discrepancy of the first n Halton points"},
        {"rate-fit", "empirical averaging rate of an innovation stream (log-log fit of the error path)"},
    };
    return list;
}

namespace {

struct Outcome {
    std::string csv;
    std::string channel;
    bool logx = true;
    std::optional<double> plot_target;
    json final_iterate;
    json target; // null when none
    std::optional<double> abs_error;
    std::optional<double> fitted_rate;
    json details = json::object();
};

struct Context {
    ExperimentConfig cfg;
    Fields steps;
    Fields source;
    Fields params;
    std::size_t horizon = 0;

    Context(ExperimentConfig c)
        : cfg(std::move(c)), steps(cfg.steps, "steps"), source(cfg.source, "source"), params(cfg.params, "params") {}

    void finish() const {
        steps.finish();
        source.finish();
        params.finish();
    }
    std::size_t N(std::size_t def) {
        horizon = cfg.horizon ? cfg.horizon : def;
        return horizon;
    }
};

using Runner = std::function<Outcome(Context&)>;

// Recorded rows at (or just below) 2^7, 2^8, ... as an error path against `target`.
std::optional<double> trajectory_rate(const core::Trajectory& traj, const std::vector<double>& values, double target) {
    diagnostics::ErrorPath path;
    const auto& steps = traj.steps();
    for (std::size_t cp : diagnostics::default_checkpoints(steps.empty() ? 0 : steps.back())) {
        std::size_t row = 0;
        for (std::size_t r = 0; r < steps.size() && steps[r] <= cp; ++r) row = r;
        if (steps[row] == 0) continue;
        if (!path.n.empty() && path.n.back() == steps[row]) continue;
        path.n.push_back(steps[row]);
        path.error.push_back(std::abs(values[row] - target));
    }
    try {
        return diagnostics::fit_rate(path).beta;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

std::string kind_of(Fields& f, const std::string& def, std::initializer_list<const char*> allowed) {
    const std::string kind = f.text("kind", def);
    for (const char* a : allowed)
        if (kind == a) return kind;
    std::string list;
    for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
    throw ConfigError("source.kind: '" + kind + "' not supported here (allowed: " + list + ")");
}

core::StepSchedule steps_or(Fields& f, double c, double a) {
    if (f.has("form") && f.text("form") != "power") return parse_steps(f);
    f.text("form", "power");
    try {
        const double cc = f.number("c", c);
        return core::StepSchedule::power(cc, f.number("a", a));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("steps: ") + e.what());
    }
}

// implicit-correlation

Outcome implicit_correlation(Context& cx) {
    const std::size_t N = cx.N(100000);
    const auto steps = steps_or(cx.steps, 8.0, 1.0);
    const std::string kind = kind_of(cx.source, "halton-gaussian", {"halton-gaussian", "iid-gaussian"});
    auto src = make_source(kind, 2, cx.cfg.seed, cx.source);
    apps::BestOfCallParams p;
    p.x1 = cx.params.number("x1_0", 100.0);
    p.x2 = cx.params.number("x2_0", 100.0);
    p.r = cx.params.number("r", 0.10);
    p.sigma1 = cx.params.number("sigma1", 0.30);
    p.sigma2 = cx.params.number("sigma2", 0.30);
    p.T = cx.params.number("T", 1.0);
    p.K = cx.params.number("K", 100.0);
    p.P_market = cx.params.number("P_market", 30.75);
    const double theta0 = cx.params.number("theta0", 0.0);
    const double target = cx.params.number("target_rho", -0.5);
    const bool check_price = cx.params.boolean("check_price", false);
    const auto price_samples = cx.params.integer("price_samples", 1000000);
    cx.finish();
    try {
        p.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    validate_steps(steps, kind, 2, N);

    auto traj = apps::calibrate_correlation(p, *src, steps, N, theta0, cx.cfg.record_stride);
    Outcome o;
    o.csv = traj.to_csv();
    o.channel = "rho";
    o.plot_target = target;
    const double theta = traj.final_theta[0];
    o.final_iterate = json{{"theta", theta}, {"rho", std::cos(theta)}};
    o.target = json{{"rho", target}};
    o.abs_error = std::abs(std::cos(theta) - target);
    o.fitted_rate = trajectory_rate(traj, traj.channel("rho"), target);
    if (check_price) {
        innovations::IidGaussianSource ps(2, innovations::derive_seed(cx.cfg.seed, innovations::stream::aux));
        o.details["reference_price"] = apps::bs_bestof_price(p, target, ps, price_samples);
        o.details["price_samples"] = price_samples;
    }
    return o;
}

// var-cvar

Outcome var_cvar(Context& cx) {
    const std::size_t N = cx.N(1000000);
    const auto steps = steps_or(cx.steps, 0.3, 0.85);
    const std::string kind = kind_of(cx.source, "iid-gaussian", {"iid-gaussian", "iid-uniform"});
    auto src = make_source(kind, 1, cx.cfg.seed, cx.source);
    const double alpha = cx.params.number("alpha", 0.95);
    const double theta0 = cx.params.number("theta0", 0.0);
    cx.finish();
    if (!(alpha > 0.0 && alpha < 1.0)) throw ConfigError("params.alpha: must lie in (0,1)");
    validate_steps(steps, kind, 1, N);

    double var_t = 0.0, cvar_t = 0.0;
    if (kind == "iid-gaussian") {
        const boost::math::normal_distribution<double> nd;
        var_t = boost::math::quantile(nd, alpha);
        cvar_t = boost::math::pdf(nd, var_t) / (1.0 - alpha);
    } else {
        var_t = alpha;
        cvar_t = 0.5 * (1.0 + alpha);
    }
    auto res = apps::var_cvar_run(*src, alpha, steps, N, theta0, cx.cfg.record_stride);
    Outcome o;
    o.csv = res.trajectory.to_csv();
    o.channel = "theta_0";
    o.plot_target = var_t;
    o.final_iterate = json{{"var", res.var}, {"cvar", res.cvar}};
    o.target = json{{"var", var_t}, {"cvar", cvar_t}};
    o.abs_error = std::abs(res.var - var_t);
    o.fitted_rate = trajectory_rate(res.trajectory, res.trajectory.channel("theta_0"), var_t);
    o.details["cvar_abs_error"] = std::abs(res.cvar - cvar_t);
    return o;
}

// ergodic-investment

Outcome ergodic_investment(Context& cx) {
    apps::InvestmentSetup s;
    s.horizon = cx.N(100000);
    s.steps = steps_or(cx.steps, 5.0, 1.0);
    kind_of(cx.source, "euler-decreasing", {"euler-decreasing"});
    s.cir.kappa = cx.params.number("kappa", 1.0);
    s.cir.vartheta = cx.params.number("vartheta", 1.0);
    s.cir.sigma = cx.params.number("sigma", 1.5);
    s.cd.alpha = cx.params.number("alpha", 0.8);
    s.cd.beta = cx.params.number("beta", 0.7);
    s.cd.c = cx.params.number("c", 0.5);
    s.euler_gamma0 = cx.params.number("euler_gamma0", 1.0);
    s.euler_r = cx.params.number("euler_r", 1.0 / 3.0);
    s.y0 = cx.params.optional_number("y0");
    s.theta_tilde0 = cx.params.number("theta_tilde0", 0.0);
    s.chain_rule = cx.params.boolean("chain_rule", false);
    s.stride = cx.cfg.record_stride;
    cx.finish();
    try {
        s.cir.validate();
        s.cd.validate();
        apps::cir_innovation_source(s.cir, s.euler_gamma0, s.euler_r, 0);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    validate_steps(s.steps, "euler-decreasing", 1, s.horizon, s.euler_r);

    const double target = apps::theta_star_closed_form(s.cir, s.cd);
    auto res = apps::run_investment(s, cx.cfg.seed);
    Outcome o;
    o.csv = res.trajectory.to_csv();
    o.channel = "theta";
    o.plot_target = target;
    o.final_iterate = json{{"theta", res.theta}, {"theta_tilde", res.theta_tilde}};
    o.target = json{{"theta", target}};
    o.abs_error = std::abs(res.theta - target);
    o.fitted_rate = trajectory_rate(res.trajectory, res.trajectory.channel("theta"), target);
    o.details["relative_error"] = std::abs(res.theta / target - 1.0);
    o.details["feller_satisfied"] = s.cir.feller_satisfied();
    return o;
}

// two-armed-bandit

Outcome two_armed_bandit(Context& cx) {
    apps::BanditSetup s;
    s.horizon = cx.N(100000);
    s.steps = steps_or(cx.steps, 1.0, 0.9);
    s.pA = cx.params.number("pA", 0.6);
    s.pB = cx.params.number("pB", 0.4);
    s.theta0 = cx.params.number("theta0", 0.5);
    const std::string events = cx.params.text("events", "iid");
    if (events == "ar1") {
        s.events = apps::EventKind::ar1;
        s.ar_coefficient = cx.params.number("ar_coefficient", 0.5);
    } else if (events != "iid") {
        throw ConfigError("params.events: expected \"iid\" or \"ar1\"");
    }
    cx.finish();
    if (!(s.pA >= 0 && s.pA <= 1 && s.pB >= 0 && s.pB <= 1)) throw ConfigError("params: pA, pB must lie in [0,1]");
    if (!(s.theta0 >= 0 && s.theta0 <= 1)) throw ConfigError("params.theta0: must lie in [0,1]");
    if (s.events == apps::EventKind::ar1 && !(std::abs(s.ar_coefficient) < 1.0))
        throw ConfigError("params.ar_coefficient: |a| must be < 1");
    if (s.horizon > 0 && s.steps(1) > 1.0) throw ConfigError("steps: gamma_1 > 1 breaks the [0,1] invariant");
    validate_steps(s.steps, events == "iid" ? "iid-uniform" : "ar1-mixing", 1, s.horizon);

    auto innov = apps::make_bandit_innovations(s, cx.cfg.seed);
    auto res = apps::bandit_run(*innov, s.steps, s.horizon, s.theta0, cx.cfg.record_stride);
    Outcome o;
    o.csv = res.trajectory.to_csv();
    o.channel = "theta_0";
    o.plot_target = 1.0;
    o.final_iterate = json{{"theta", res.theta}};
    o.target = json{{"theta", 1.0}};
    o.abs_error = std::abs(res.theta - 1.0);
    o.details["terminal"] = apps::to_string(res.terminal);
    return o;
}

// dark-pool

Outcome dark_pool(Context& cx) {
    const std::size_t N = cx.N(100000);
    const auto steps = steps_or(cx.steps, 10.0, 0.8);
    kind_of(cx.source, "ar1-mixing", {"ar1-mixing"});
    apps::SyntheticMarket m;
    m.ar_coefficient = cx.source.number("coefficient", 0.5);
    const auto rho = cx.params.numbers("rho", {0.0, 0.02, 0.04, 0.06});
    m.beta = cx.params.numbers("beta", {0.1, 0.2, 0.3, 0.2});
    m.alpha = cx.params.numbers("alpha", {0.4, 0.6, 0.8, 0.2});
    m.vol = cx.params.number("vol", 0.6);
    m.load = cx.params.number("load", 0.6);
    m.v0 = cx.params.number("v0", 1.0);
    const bool oracle = cx.params.boolean("oracle", rho.size() <= 3);
    const auto oracle_samples = cx.params.integer("oracle_samples", 50000);
    const double oracle_resolution = cx.params.number("oracle_resolution", 0.01);
    const auto renorm = cx.params.integer("renormalize_every", 10000);
    cx.finish();
    if (rho.size() < 2 || m.beta.size() != rho.size() || m.alpha.size() != rho.size())
        throw ConfigError("params: rho, beta and alpha must have the same length >= 2");
    for (double x : rho)
        if (!(x >= 0.0 && x < 1.0)) throw ConfigError("params.rho: rebates must lie in [0,1)");
    if (!(std::abs(m.ar_coefficient) < 1.0)) throw ConfigError("source.coefficient: |a| must be < 1");
    if (oracle && rho.size() > 3) throw ConfigError("params.oracle: grid oracle supports 2 or 3 pools");
    if (renorm == 0) throw ConfigError("params.renormalize_every: must be >= 1");
    validate_steps(steps, "ar1-mixing", rho.size(), N);

    apps::DarkPoolSeries series;
    try {
        series = apps::generate_darkpool_series(m, std::max<std::size_t>(N, 1), cx.cfg.seed);
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("params: ") + e.what());
    }
    double ev = 0.0, ed = 0.0;
    for (double v : series.V) ev += v;
    for (const auto& d : series.D)
        for (double x : d) ed += x;
    apps::SeriesSource src(series);
    auto res = apps::darkpool_run(src, rho, steps, N, {}, cx.cfg.record_stride, renorm);

    Outcome o;
    o.csv = res.trajectory.to_csv();
    o.channel = "cost_reduction_mean";
    o.final_iterate = json{{"r", res.r}};
    o.target = nullptr;
    o.details["cost_reduction_mean"] = res.cost_reduction_mean;
    o.details["max_sum_deviation"] = res.max_sum_deviation;
    o.details["safeguard_triggers"] = res.safeguard.triggers();
    o.details["shortage"] = ev > ed; // E V > sum E D_i on the generated series
    if (oracle) {
        const auto sample = apps::generate_darkpool_series(
            m, oracle_samples, innovations::derive_seed(cx.cfg.seed, innovations::stream::aux));
        const auto best = apps::darkpool_oracle(sample, rho, oracle_resolution);
        double dist = 0.0;
        for (std::size_t i = 0; i < rho.size(); ++i) dist = std::max(dist, std::abs(res.r[i] - best.r[i]));
        o.target = json{{"r", best.r}};
        o.abs_error = dist;
    }
    return o;
}

// discrepancy

Outcome discrepancy(Context& cx) {
    const auto q = cx.params.integer("dimension", 2);
    std::vector<double> def;
    for (int k = 6; k <= 12; ++k) def.push_back(std::ldexp(1.0, k));
    const auto sizes = cx.params.numbers("sizes", def);
    cx.finish();
    if (cx.cfg.steps.size()) throw ConfigError("steps: not used by this experiment");
    if (q == 0 || q > 8) throw ConfigError("params.dimension: must lie in 1..8");
    std::ostringstream csv;
    csv << "n,star_discrepancy,log_bound\n";
    diagnostics::ErrorPath path;
    double last = 0.0;
    for (double sz : sizes) {
        if (!(sz >= 1.0) || sz != std::floor(sz)) throw ConfigError("params.sizes: positive integers expected");
        const auto n = static_cast<std::size_t>(sz);
        double d = 0.0;
        try {
            d = innovations::star_discrepancy_exact(innovations::halton_points(n, q));
        } catch (const BudgetError& e) {
            throw ConfigError(std::string("params.sizes: ") + e.what());
        }
        char buf[96];
        std::snprintf(buf, sizeof buf, "%zu,%.17g,%.17g\n", n, d,
                      std::pow(std::log(static_cast<double>(n)), static_cast<double>(q)) / static_cast<double>(n));
        csv << buf;
        path.n.push_back(n);
        path.error.push_back(d);
        last = d;
        cx.horizon = std::max(cx.horizon, n);
    }
    Outcome o;
    o.csv = csv.str();
    o.channel = "star_discrepancy";
    o.final_iterate = json{{"star_discrepancy", last}};
    o.target = nullptr;
    try {
        o.fitted_rate = diagnostics::fit_rate(path).beta;
    } catch (const std::exception&) {
    }
    return o;
}

// rate-fit

Outcome rate_fit(Context& cx) {
    const std::size_t N = cx.N(1000000);
    const std::string kind =
        kind_of(cx.source, "iid-gaussian", {"iid-gaussian", "iid-uniform", "halton", "halton-gaussian", "ar1-mixing"});
    auto src = make_source(kind, 1, cx.cfg.seed, cx.source);
    const std::string fn = cx.params.text("function", "identity");
    const double reference = cx.params.number("reference", 0.0);
    const auto lo = cx.params.integer("first_checkpoint", 10);
    const auto count = cx.params.integer("checkpoints", 10);
    cx.finish();
    if (cx.cfg.steps.size()) throw ConfigError("steps: not used by this experiment");
    diagnostics::TestFn f;
    if (fn == "identity")
        f = [](std::span<const double> y) { return y[0]; };
    else if (fn == "indicator-half")
        f = [](std::span<const double> y) { return y[0] < 0.5 ? 1.0 : 0.0; };
    else if (fn == "square")
        f = [](std::span<const double> y) { return y[0] * y[0]; };
    else
        throw ConfigError("params.function: expected identity, indicator-half or square");
    if (lo == 0 || lo >= N || count < 5) throw ConfigError("params: need 1 <= first_checkpoint < horizon, >= 5 checkpoints");

    const auto cps = diagnostics::log_spaced_checkpoints(lo, N, count);
    const auto path = diagnostics::empirical_average_path(f, *src, reference, cps);
    std::ostringstream csv;
    csv << "n,error\n";
    for (std::size_t i = 0; i < path.n.size(); ++i) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%zu,%.17g\n", path.n[i], path.error[i]);
        csv << buf;
    }
    Outcome o;
    o.csv = csv.str();
    o.channel = "error";
    o.final_iterate = json{{"error", path.error.back()}};
    o.target = nullptr;
    try {
        const auto fit = diagnostics::fit_rate(path);
        o.fitted_rate = fit.beta;
        o.details["r_squared"] = fit.r_squared;
        if (!fit.warnings.empty()) o.details["warnings"] = fit.warnings;
    } catch (const std::exception& e) {
        o.details["fit_failure"] = e.what();
    }
    return o;
}

const std::map<std::string, Runner>& registry() {
    static const std::map<std::string, Runner> r = {
        {"implicit-correlation", implicit_correlation},
        {"var-cvar", var_cvar},
        {"ergodic-investment", ergodic_investment},
        {"two-armed-bandit", two_armed_bandit},
        {"dark-pool", dark_pool},
        {"discrepancy", discrepancy},
        {"rate-fit", rate_fit},
    };
    return r;
}

void write_file(const fs::path& p, const std::string& content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot write " + p.string());
    out << content;
    if (!out) throw std::ios_base::failure("write failed: " + p.string());
}

json effective_config(const Context& cx) {
    json j;
    j["experiment"] = cx.cfg.experiment;
    j["seed"] = cx.cfg.seed;
    j["horizon"] = cx.horizon;
    j["record_stride"] = cx.cfg.record_stride;
    j["output_dir"] = cx.cfg.output_dir;
    if (!cx.steps.effective().empty()) j["steps"] = cx.steps.effective();
    if (!cx.source.effective().empty()) j["source"] = cx.source.effective();
    j["params"] = cx.params.effective();
    return j;
}

} // namespace

RunArtifacts run_experiment(const json& config, std::optional<std::uint64_t> seed_override,
                            std::optional<fs::path> output_override) {
    RunArtifacts art;
    ExperimentConfig cfg = parse_config(config); // top-level errors propagate: nothing to write yet
    if (seed_override) cfg.seed = *seed_override;
    if (cfg.output_dir.empty()) cfg.output_dir = "out/" + cfg.experiment;
    if (output_override) cfg.output_dir = output_override->string();
    const auto it = registry().find(cfg.experiment);
    if (it == registry().end()) {
        std::string names;
        for (const auto& e : list_experiments()) names += " " + e.name;
        throw ConfigError("config.experiment: unknown experiment '" + cfg.experiment + "'; registered:" + names);
    }

    const fs::path dir = cfg.output_dir;
    fs::create_directories(dir);
    art.trajectory_csv = dir / "trajectory.csv";
    art.summary_json = dir / "summary.json";
    art.plot_svg = dir / "plot.svg";
    art.effective_config = dir / "config.json";

    Context cx(cfg);
    json& s = art.summary;
    s["experiment"] = cfg.experiment;
    s["seed"] = cfg.seed;
    s["N"] = nullptr;
    s["status"] = "ok";
    s["final_iterate"] = nullptr;
    s["target"] = nullptr;
    s["abs_error"] = nullptr;
    s["fitted_rate"] = nullptr;
    s["runtime_seconds"] = 0.0;
    s["failure"] = nullptr;

    const auto t0 = std::chrono::steady_clock::now();
    std::optional<Outcome> out;
    try {
        out = it->second(cx);
    } catch (const ConfigError& e) {
        s["status"] = "invalid";
        s["failure"] = e.what();
        art.exit_code = config_error;
    } catch (const DivergenceError& e) {
        s["status"] = "aborted";
        s["failure"] = e.what();
        art.exit_code = guard_abort;
    } catch (const NumericError& e) {
        s["status"] = "aborted";
        s["failure"] = e.what();
        art.exit_code = guard_abort;
    }
    s["runtime_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    s["N"] = cx.horizon;

    if (out) {
        s["final_iterate"] = out->final_iterate;
        s["target"] = out->target;
        if (out->abs_error) s["abs_error"] = *out->abs_error;
        if (out->fitted_rate) s["fitted_rate"] = *out->fitted_rate;
        if (!out->details.empty()) s["details"] = out->details;
        write_file(art.trajectory_csv, out->csv);
        std::istringstream in(out->csv);
        write_file(art.plot_svg, plot_channel(read_csv(in), out->channel, out->plot_target, out->logx));
    }
    if (art.exit_code != config_error) write_file(art.effective_config, effective_config(cx).dump(2) + "\n");
    write_file(art.summary_json, s.dump(2) + "\n");
    return art;
}

RunArtifacts run_experiment(const fs::path& config_path) { return run_experiment(load_json_file(config_path)); }

std::pair<std::uint64_t, std::uint64_t> parse_seed_range(const std::string& text) {
    const auto pos = text.find("..");
    if (pos == std::string::npos) throw ConfigError("--seeds: expected a..b");
    try {
        std::size_t used = 0;
        const std::string a = text.substr(0, pos), b = text.substr(pos + 2);
        const auto first = std::stoull(a, &used);
        if (used != a.size()) throw std::invalid_argument(a);
        const auto last = std::stoull(b, &used);
        if (used != b.size()) throw std::invalid_argument(b);
        if (last < first) throw ConfigError("--seeds: empty range");
        return {first, last};
    } catch (const std::logic_error&) {
        throw ConfigError("--seeds: expected a..b with nonnegative integers");
    }
}

int run_sweep(const json& config, std::uint64_t first, std::uint64_t last) {
    ExperimentConfig cfg = parse_config(config);
    const fs::path base = cfg.output_dir.empty() ? fs::path("out") / (cfg.experiment + "-sweep") : fs::path(cfg.output_dir);
    fs::create_directories(base);
    const std::size_t count = static_cast<std::size_t>(last - first + 1);
    std::vector<RunArtifacts> arts(count);
    std::vector<std::string> errors(count);
#pragma omp parallel for schedule(dynamic)
    for (std::size_t i = 0; i < count; ++i) {
        const std::uint64_t seed = first + i;
        try {
            arts[i] = run_experiment(config, seed, base / ("seed_" + std::to_string(seed)));
        } catch (const std::exception& e) {
            errors[i] = e.what();
            arts[i].exit_code = config_error;
        }
    }
    std::ostringstream csv;
    csv << "seed,status,abs_error\n";
    int worst = ok;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& s = arts[i].summary;
        std::string status = errors[i].empty() ? s.value("status", "error") : "invalid";
        std::string err = "";
        if (errors[i].empty() && s.contains("abs_error") && s["abs_error"].is_number()) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", s["abs_error"].get<double>());
            err = buf;
        }
        csv << (first + i) << ',' << status << ',' << err << '\n';
        worst = std::max(worst, arts[i].exit_code);
    }
    write_file(base / "sweep.csv", csv.str());
    return worst;
}

} // namespace sa::cli
