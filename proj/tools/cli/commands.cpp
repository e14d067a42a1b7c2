#include "commands.hpp"

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_sinks.h>
#include <spdlog/spdlog.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <ostream>
#include <sstream>
#include <thread>

#include "rsl/asymptotics.hpp"
#include "rsl/errors.hpp"
#include "rsl/exact_solutions.hpp"
#include "rsl/phase_system.hpp"
#include "rsl/potential_theory.hpp"
#include "rsl/profile_io.hpp"
#include "rsl/shooting.hpp"
#include "rsl/warped_geometry.hpp"

namespace rsl::cli {

namespace {

std::shared_ptr<spdlog::logger> logger() {
    auto log = spdlog::get("rsl");
    if (!log) {
        log = spdlog::stderr_logger_mt("rsl");
        log->set_pattern("[%l] %v");
        log->set_level(spdlog::level::err);
    }
    return log;
}

/// Error carrying an exit code and a machine-readable reason.
struct Failure {
    int code;
    std::string reason;
    std::string message;
};

void emit(std::ostream& out, const std::string& path, const std::string& text) {
    if (path.empty() || path == "-")
        out << text;
    else
        write_text(path, text);
}

Json params_json(const SolitonParams& p) {
    Json j;
    j["n"] = p.n;
    j["rho"] = format_double(p.rho);
    j["lambda"] = format_double(p.lambda);
    j["kappa"] = p.kappa;
    return j;
}

Json fit_json(const ExponentFit& f) {
    Json j;
    j["exponent"] = number_json(f.exponent);
    j["std_error"] = number_json(f.std_error);
    j["samples"] = f.samples;
    j["r_min"] = number_json(f.r_min);
    j["r_max"] = number_json(f.r_max);
    return j;
}

// ---------------------------------------------------------------------------
// --config: keys of a JSON object become flags unless given on the command line.

std::vector<std::string> merge_config(std::vector<std::string> args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty()) return args;
    Json cfg;
    try {
        cfg = Json::parse(read_text(path));
    } catch (const nlohmann::json::exception& e) {
        throw InvalidParameters("config " + path + ": " + e.what());
    }
    if (!cfg.is_object()) throw InvalidParameters("config must be a JSON object");
    const auto given = [&](const std::string& flag) {
        return std::any_of(args.begin(), args.end(),
                           [&](const std::string& a) { return a == flag || a.rfind(flag + "=", 0) == 0; });
    };
    const auto scalar = [](const Json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); };
    std::vector<std::string> extra;
    for (const auto& [key, value] : cfg.items()) {
        const std::string flag = "--" + key;
        if (key == "config" || given(flag)) continue;
        if (value.is_boolean()) {
            if (value.get<bool>()) extra.push_back(flag);
        } else if (value.is_array()) {
            std::string joined;
            for (const auto& v : value) joined += (joined.empty() ? "" : ",") + scalar(v);
            extra.push_back(flag);
            extra.push_back(joined);
        } else {
            extra.push_back(flag);
            extra.push_back(scalar(value));
        }
    }
    args.insert(args.end(), extra.begin(), extra.end());
    return args;
}

// ---------------------------------------------------------------------------
// construct

struct ConstructArgs {
    int n = 0;
    double rho = 0.0;
    std::vector<double> eps_ladder{1e-2, 1e-3, 1e-4, 1e-5};
    double span = 0.0;
    bool normalize = false;
    std::string output = "-";
    double tol = 1e-4;
    unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
};

int cmd_construct(const ConstructArgs& a, std::ostream& out) {
    const SolitonParams p{a.n, a.rho, 0.0, 1};
    p.validate();
    const auto regime = classify_steady(p);
    if (regime == SteadyRegime::schouten || regime == SteadyRegime::forbidden) {
        std::string mode;
        try {
            mode = std::string(" (") + to_string(verify_nonexistence(p).mode) + ")";
        } catch (const Error& e) {
            logger()->info("nonexistence check inconclusive: {}", e.what());
        }
        throw Failure{exit_rejected, "nonexistence_regime",
                      "no complete steady solution for " + p.describe() + mode};
    }
    ConstructOptions opts;
    opts.family.ladder = a.eps_ladder;
    opts.family.span = a.span;
    opts.family.jobs = a.jobs;
    opts.limit_tol = a.tol;
    opts.normalize = a.normalize;
    logger()->info("constructing {} with {} eps levels on {} threads", p.describe(), a.eps_ladder.size(), a.jobs);
    const auto c = construct_steady(p, opts);
    logger()->info("limit converged; {} profile samples up to r = {}", c.profile.size(), c.profile.r.back());
    logger()->debug("tip offset {} cap size {} limit excess {}", c.reconstruction.tip_offset,
                    c.reconstruction.cap_size, c.reconstruction.limit_excess);
    emit(out, a.output, dump_json(profile_to_json(c.profile)));
    return exit_ok;
}

// ---------------------------------------------------------------------------
// verify

struct VerifyArgs {
    std::string profile;
    double tol = 1e-6;
    std::string output = "-";
};

struct Check {
    std::string name;
    double value = 0.0;
    std::string status;  // pass, fail, skipped
    double worst_r = std::nan("");
    std::string note;
};

template <class Fn>
Check run_check(const std::string& name, double tol, Fn fn) {
    Check c;
    c.name = name;
    try {
        fn(c);
        c.status = c.value < tol ? "pass" : "fail";
    } catch (const CriticalLevel& e) {
        c.status = "skipped";
        c.note = e.what();
    } catch (const TipSingular& e) {
        c.status = "skipped";
        c.note = e.what();
    }
    return c;
}

template <class V>
std::size_t argmax(const V& v) {
    return static_cast<std::size_t>(std::distance(v.begin(), std::max_element(v.begin(), v.end())));
}

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
    const auto prof = read_profile(a.profile);
    logger()->info("verifying {} samples of {}", prof.size(), prof.params.describe());
    std::vector<Check> checks;
    checks.push_back(run_check("soliton_residual", a.tol, [&](Check& c) {
        const auto r = soliton_residual(prof);
        c.value = r.sup();
        c.worst_r = prof.r[r.worst_sample];
    }));
    std::optional<IdentityReport> ids;
    const auto identity = [&](const std::string& name, auto member, auto series) {
        checks.push_back(run_check(name, a.tol, [&](Check& c) {
            if (!ids) ids = identity_checks(prof);
            c.value = (*ids).*member;
            const auto& s = (*ids).*series;
            if (!s.empty()) c.worst_r = prof.r[ids->sample[argmax(s)]];
        }));
    };
    identity("identity_laplacian", &IdentityReport::sup_laplacian, &IdentityReport::laplacian_dev);
    identity("identity_gradient", &IdentityReport::sup_gradient, &IdentityReport::gradient_dev);
    identity("identity_divergence", &IdentityReport::sup_divergence, &IdentityReport::divergence_dev);
    if (prof.params.is_schouten()) {
        checks.push_back(run_check("schouten_radial_ricci", a.tol, [&](Check& c) {
            if (!ids) ids = identity_checks(prof);
            c.value = ids->sup_schouten_radial;
        }));
    }
    checks.push_back(run_check("level_set_gauss", a.tol, [&](Check& c) {
        const auto l = level_set_geometry(prof);
        c.value = l.sup_gauss_dev;
    }));
    std::optional<RectifiabilityReport> rect;
    checks.push_back(run_check("rectifiability_gradient", a.tol, [&](Check& c) {
        if (!rect) rect = rectifiability_witness(prof);
        c.value = rect->sup_gradient_dev;
        if (!rect->gradient_dev.empty()) c.worst_r = prof.r[rect->sample[argmax(rect->gradient_dev)]];
    }));
    checks.push_back(run_check("rectifiability_chain", a.tol, [&](Check& c) {
        if (!rect) rect = rectifiability_witness(prof);
        c.value = rect->sup_chain_dev;
        if (!rect->chain_dev.empty()) c.worst_r = prof.r[rect->sample[argmax(rect->chain_dev)]];
    }));

    Json rep;
    rep["profile"] = a.profile;
    rep["params"] = params_json(prof.params);
    rep["samples"] = prof.size();
    rep["tolerance"] = format_double(a.tol);
    Json arr = Json::array();
    bool ok = true;
    const Check* worst = nullptr;
    for (const auto& c : checks) {
        Json j;
        j["name"] = c.name;
        j["status"] = c.status;
        j["value"] = c.status == "skipped" ? Json(nullptr) : number_json(c.value);
        j["worst_r"] = number_json(c.worst_r);
        if (!c.note.empty()) j["note"] = c.note;
        arr.push_back(j);
        if (c.status == "fail") {
            ok = false;
            if (!worst || c.value / a.tol > worst->value / a.tol) worst = &c;
        }
    }
    rep["checks"] = arr;
    rep["passed"] = ok;
    emit(out, a.output, dump_json(rep));
    if (!ok) {
        err << "verify failed: worst offender " << worst->name << " = " << format_double(worst->value) << " at r = "
            << format_double(worst->worst_r) << " (tol " << format_double(a.tol) << ")\n";
        return exit_check_failed;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// asymptotics

struct AsymptoticsArgs {
    std::string profile;
    double tail_fraction = default_tail_fraction;
    std::string output = "-";
};

int cmd_asymptotics(const AsymptoticsArgs& a, std::ostream& out, std::ostream& err) {
    const auto prof = read_profile(a.profile);
    const auto rep = analyze_profile(prof, a.tail_fraction);
    Json j;
    j["profile"] = a.profile;
    j["params"] = params_json(prof.params);
    j["regime"] = to_string(rep.predicted.regime);
    j["tail_fraction"] = format_double(a.tail_fraction);
    j["r_end"] = format_double(rep.r_end);
    Json table = Json::array();
    const struct {
        const char* name;
        double predicted;
        const ExponentFit& fit;
        double tol;
        bool ok;
    } rows[] = {{"omega", rep.predicted.omega_exp, rep.fitted.omega, omega_exp_tol, rep.omega_ok},
                {"f", rep.predicted.f_exp, rep.fitted.f, f_exp_tol, rep.f_ok},
                {"volume", rep.predicted.vol_exp, rep.fitted.volume, vol_exp_tol, rep.volume_ok}};
    for (const auto& row : rows) {
        Json e;
        e["quantity"] = row.name;
        e["predicted"] = format_double(row.predicted);
        e["fitted"] = fit_json(row.fit);
        e["tolerance"] = format_double(row.tol);
        e["pass"] = row.ok;
        table.push_back(e);
    }
    j["exponents"] = table;
    Json sens = Json::array();
    for (const auto& s : rep.sensitivity) {
        Json e;
        e["tail_fraction"] = format_double(s.tail_fraction);
        e["omega"] = number_json(s.omega.exponent);
        e["f"] = number_json(s.f.exponent);
        e["volume"] = number_json(s.volume.exponent);
        sens.push_back(e);
    }
    j["sensitivity"] = sens;

    bool pass = rep.pass();
    try {
        const auto ld = limit_diagnostics(phase_samples_from_profile(prof), prof.params);
        Json l;
        l["t_end"] = number_json(ld.t_end);
        l["y_over_t"] = number_json(ld.y_over_t);
        l["y_over_t_expected"] = number_json(ld.y_over_t_expected);
        l["y_slope"] = number_json(ld.y_slope);
        if (ld.cigar) {
            l["log_x_over_t2"] = number_json(ld.log_x_over_t2);
            l["log_x_over_t2_expected"] = number_json(ld.log_x_over_t2_expected);
        } else {
            l["t_x"] = number_json(ld.t_x);
            l["t_x_expected"] = number_json(ld.t_x_expected);
            l["x_y"] = number_json(ld.x_y);
            l["x_y_expected"] = number_json(ld.x_y_expected);
        }
        j["limits"] = l;
    } catch (const TailTooShort& e) {
        j["limits"] = Json{{"status", "tail_too_short"}};
    }
    if (prof.params.is_cigar()) {
        const auto c = cigar_checks(prof, a.tail_fraction);
        Json cj;
        cj["tail_mean"] = number_json(c.tail_mean);
        cj["tail_oscillation"] = number_json(c.tail_oscillation);
        cj["f"] = fit_json(c.f);
        cj["volume"] = fit_json(c.volume);
        cj["pass"] = c.pass();
        j["cigar"] = cj;
        pass = pass && c.pass();
    }
    j["pass"] = pass;
    emit(out, a.output, dump_json(j));
    if (!pass) {
        err << "asymptotics: fitted exponents differ from the prediction\n";
        return exit_check_failed;
    }
    return exit_ok;
}

// ---------------------------------------------------------------------------
// phase-portrait

struct PortraitArgs {
    int n = 0;
    double rho = 0.0;
    double lambda = 0.0;
    int kappa = 1;
    double omega = 1.0;
    std::vector<double> x_range{-1.5, 1.5};
    std::vector<double> y_range{-3.0, 3.0};
    int grid = 50;
    std::string output = "-";
};

std::string csv_number(double v) { return std::isfinite(v) ? format_double(v) : ""; }

int cmd_phase_portrait(const PortraitArgs& a, std::ostream& out) {
    const SolitonParams p{a.n, a.rho, a.lambda, a.kappa};
    p.validate();
    if (a.x_range.size() != 2 || a.y_range.size() != 2 || a.grid < 2)
        throw InvalidParameters("ranges take two values and the grid needs at least 2 points");
    if (p.is_schouten()) throw SchoutenSingular("the phase system is singular at rho = 1/(2(n-1))");
    const auto regime = p.is_steady() ? classify_steady(p) : SteadyRegime::forbidden;
    const bool use_G = regime == SteadyRegime::cigar_or_above;
    const bool slope_field = p.is_steady() && regime != SteadyRegime::forbidden;
    const auto slope = [&](double x, double y) {
        if (!slope_field) return std::nan("");
        try {
            return use_G ? scalar_field_G(p, x, -y) : scalar_field_F(p, x, y);
        } catch (const DenominatorZero&) {
            return std::nan("");
        }
    };

    std::ostringstream csv;
    csv << "kind,x,y,dx,dy,F\n";
    const auto at = [&](const std::vector<double>& range, int i) {
        return range[0] + (range[1] - range[0]) * static_cast<double>(i) / (a.grid - 1);
    };
    for (int i = 0; i < a.grid; ++i) {
        for (int j = 0; j < a.grid; ++j) {
            const double x = at(a.x_range, i), y = at(a.y_range, j);
            const auto v = vector_field(p, PhaseState{x, y, a.omega, 0.0});
            csv << "grid," << csv_number(x) << ',' << csv_number(y) << ',' << csv_number(v.dx) << ','
                << csv_number(v.dy) << ',' << csv_number(slope(x, y)) << '\n';
        }
    }
    if (slope_field) {
        for (int j = 0; j < a.grid; ++j) {
            const double y = at(a.y_range, j);
            double x;
            if (!use_G && y > 0.0)
                x = nullcline_h(p, y);
            else if (use_G && y < 0.0)
                x = nullcline_k(p, -y);
            else
                continue;
            const auto v = vector_field(p, PhaseState{x, y, a.omega, 0.0});
            csv << "nullcline," << csv_number(x) << ',' << csv_number(y) << ',' << csv_number(v.dx) << ','
                << csv_number(v.dy) << ',' << csv_number(slope(x, y)) << '\n';
        }
    }
    emit(out, a.output, csv.str());
    return exit_ok;
}

// ---------------------------------------------------------------------------
// classify

struct CylinderArgs {
    int n = 0;
    double rho = 0.0;
    double lambda = 0.0;
    std::string output = "-";
};

int cmd_classify_cylinders(const CylinderArgs& a, std::ostream& out) {
    const auto list = cylinder_solutions(a.n, a.rho, a.lambda);
    Json j;
    j["n"] = a.n;
    j["rho"] = format_double(a.rho);
    j["lambda"] = format_double(a.lambda);
    Json arr = Json::array();
    for (const auto& s : list) {
        Json e;
        e["kappa"] = s.kappa;
        e["fibre"] = s.kappa > 0 ? "round" : (s.kappa < 0 ? "hyperbolic" : "flat");
        e["omega0_sq"] = format_double(s.omega0_sq);
        e["omega0_free"] = s.omega0_free;
        e["f_coeff"] = format_double(s.f_coeff);
        e["trivial"] = s.trivial;
        arr.push_back(e);
    }
    j["cylinders"] = arr;
    emit(out, a.output, dump_json(j));
    return exit_ok;
}

struct FamilyArgs {
    int n = 4;
    double f = 2.0;
    std::size_t samples = 200;
    std::uint64_t seed = 20240517;
    std::string output = "-";
};

int cmd_classify_families(const FamilyArgs& a, std::ostream& out) {
    Json j;
    j["n"] = a.n;
    j["f"] = format_double(a.f);
    j["threshold"] = format_double(nondegeneracy_threshold);
    j["generic_samples"] = a.samples;
    j["seed"] = a.seed;
    Json arr = Json::array();
    for (const auto& c : family_registry()) {
        const auto nd = nondegeneracy_check(c, a.n, a.f);
        const auto g = generic_nondegeneracy(c.family_name, a.samples, a.seed);
        Json e;
        e["family"] = c.family_name;
        e["nd1"] = number_json(nd.nd1);
        e["nd2"] = number_json(nd.nd2);
        e["nd3"] = number_json(nd.nd3);
        e["verdict"] = to_string(nd.verdict);
        e["generic_nondegenerate_fraction"] = format_double(g.fraction());
        arr.push_back(e);
    }
    j["families"] = arr;
    emit(out, a.output, dump_json(j));
    return exit_ok;
}

// ---------------------------------------------------------------------------

Failure classify_error(const std::exception& e) {
    const std::string msg = e.what();
    if (dynamic_cast<const SchoutenSingular*>(&e)) return {exit_rejected, "schouten_singular", msg};
    if (dynamic_cast<const OutOfRegime*>(&e)) return {exit_rejected, "out_of_regime", msg};
    if (dynamic_cast<const NotSteady*>(&e)) return {exit_rejected, "not_steady", msg};
    if (dynamic_cast<const RegimeError*>(&e)) return {exit_rejected, "invalid_parameters", msg};
    if (dynamic_cast<const NotConverged*>(&e)) return {exit_not_converged, "not_converged", msg};
    if (dynamic_cast<const AnchoringFailed*>(&e)) return {exit_not_converged, "anchoring_failed", msg};
    if (dynamic_cast<const ConvergenceError*>(&e)) return {exit_not_converged, "no_convergence", msg};
    if (dynamic_cast<const IntegratorError*>(&e)) return {exit_not_converged, "integrator_failure", msg};
    if (dynamic_cast<const NonpositiveTipCurvature*>(&e)) return {exit_not_converged, "nonpositive_tip_curvature", msg};
    return {exit_check_failed, "check_failed", msg};
}

int report_failure(const Failure& f, std::ostream& err) {
    Json j;
    j["error"] = f.reason;
    j["exit_code"] = f.code;
    j["message"] = f.message;
    err << j.dump() << '\n';
    return f.code;
}

}  // namespace

void configure_logging() {
    auto log = logger();
    const char* env = std::getenv("RSL_LOG");
    const std::string level = env ? env : "error";
    if (level == "debug")
        log->set_level(spdlog::level::debug);
    else if (level == "info")
        log->set_level(spdlog::level::info);
    else
        log->set_level(spdlog::level::err);
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Rotationally symmetric rho-Einstein solitons: construction, checks and classification", "rsl"};
    app.require_subcommand(1);
    std::string config;
    const auto add_config = [&](CLI::App* sub) {
        sub->add_option("--config", config, "JSON file with the same keys as the flags; flags win");
    };

    ConstructArgs ca;
    auto* construct = app.add_subcommand("construct", "Construct a complete steady soliton by shooting");
    construct->add_option("--n", ca.n, "Dimension")->required();
    construct->add_option("--rho", ca.rho, "rho")->required();
    construct->add_option("--eps-ladder", ca.eps_ladder, "Decreasing eps levels")->delimiter(',');
    construct->add_option("--span", ca.span, "y-extent of the family (0: automatic)");
    construct->add_flag("--normalize", ca.normalize, "Rescale so that R = 1 at the tip");
    construct->add_option("--output", ca.output, "Profile JSON path ('-' for stdout)");
    construct->add_option("--tol", ca.tol, "Cauchy tolerance of the eps limit");
    construct->add_option("--jobs", ca.jobs, "Worker threads for the eps family")->check(CLI::PositiveNumber);
    add_config(construct);

    VerifyArgs va;
    auto* verify = app.add_subcommand("verify", "Run residual and identity checks on a profile");
    verify->add_option("--profile", va.profile, "Profile JSON")->required();
    verify->add_option("--tol", va.tol, "Tolerance applied to every check");
    verify->add_option("--output", va.output, "Report path ('-' for stdout)");
    add_config(verify);

    AsymptoticsArgs aa;
    auto* asym = app.add_subcommand("asymptotics", "Compare fitted growth exponents with the prediction");
    asym->add_option("--profile", aa.profile, "Profile JSON")->required();
    asym->add_option("--tail-fraction", aa.tail_fraction, "Fraction of samples in the fit")->check(CLI::Range(1e-6, 0.5));
    asym->add_option("--output", aa.output, "Report path ('-' for stdout)");
    add_config(asym);

    PortraitArgs pa;
    auto* portrait = app.add_subcommand("phase-portrait", "Sample the phase vector field and nullclines as CSV");
    portrait->add_option("--n", pa.n, "Dimension")->required();
    portrait->add_option("--rho", pa.rho, "rho")->required();
    portrait->add_option("--lambda", pa.lambda, "lambda");
    portrait->add_option("--kappa", pa.kappa, "Fibre curvature -1, 0 or 1");
    portrait->add_option("--omega", pa.omega, "omega at which the field is sampled");
    portrait->add_option("--x-range", pa.x_range, "x bounds")->delimiter(',')->expected(2);
    portrait->add_option("--y-range", pa.y_range, "y bounds")->delimiter(',')->expected(2);
    portrait->add_option("--grid", pa.grid, "Points per axis");
    portrait->add_option("--output", pa.output, "CSV path ('-' for stdout)");
    add_config(portrait);

    auto* classify = app.add_subcommand("classify", "Enumerate cylinders or coefficient families");
    classify->require_subcommand(1);
    CylinderArgs cy;
    auto* cylinders = classify->add_subcommand("cylinders", "Cylinder solutions for (n, rho, lambda)");
    cylinders->add_option("--n", cy.n, "Dimension")->required();
    cylinders->add_option("--rho", cy.rho, "rho")->required();
    cylinders->add_option("--lambda", cy.lambda, "lambda")->required();
    cylinders->add_option("--output", cy.output, "JSON path ('-' for stdout)");
    add_config(cylinders);
    FamilyArgs fa;
    auto* families = classify->add_subcommand("families", "Nondegeneracy of the coefficient families");
    families->add_option("--n", fa.n, "Dimension");
    families->add_option("--f", fa.f, "Value of the potential");
    families->add_option("--samples", fa.samples, "Random samples for the generic fraction");
    families->add_option("--seed", fa.seed, "Seed of the generic sampling");
    families->add_option("--output", fa.output, "JSON path ('-' for stdout)");
    add_config(families);

    try {
        auto args = merge_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e, out, err);
        return report_failure({exit_rejected, "usage", e.what()}, err);
    } catch (const std::exception& e) {
        return report_failure(classify_error(e), err);
    }

    try {
        if (construct->parsed()) return cmd_construct(ca, out);
        if (verify->parsed()) return cmd_verify(va, out, err);
        if (asym->parsed()) return cmd_asymptotics(aa, out, err);
        if (portrait->parsed()) return cmd_phase_portrait(pa, out);
        if (cylinders->parsed()) return cmd_classify_cylinders(cy, out);
        if (families->parsed()) return cmd_classify_families(fa, out);
    } catch (const Failure& f) {
        return report_failure(f, err);
    } catch (const std::exception& e) {
        return report_failure(classify_error(e), err);
    }
    return exit_rejected;
}

}  // namespace rsl::cli
