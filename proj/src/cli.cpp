#include "gausscrit/cli.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include "gausscrit/criteria.hpp"
#include "gausscrit/errors.hpp"
#include "gausscrit/oracle.hpp"
#include "gausscrit/scan.hpp"

namespace gausscrit {
namespace {

constexpr const char* kAngleNote = "radians (pi/4 = 0.7853981633974483)";

std::string fmt_value(double v) {
    if (std::isnan(v)) {
        return "nan";
    }
    return fmt::format("{:.10g}", v);
}

const char* yes_no(bool v) {
    return v ? "yes" : "no";
}

struct EvalOptions {
    std::optional<double> r;
    std::optional<double> p;
    std::optional<double> a;
    std::optional<double> b;
    double phi = 0.0;
    std::optional<double> theta;
};

struct ScanOptions {
    std::string plane = "pr";
    std::optional<std::string> grid_p;
    std::optional<std::string> grid_tanh_r;
    std::optional<std::string> grid_a;
    std::optional<std::string> grid_b;
    double phi = 0.0;
    std::string out;
    int threads = 0;
};

struct BoundaryOptions {
    std::string kind = "separability";
    std::optional<double> level;
    std::string plane = "pr";
    std::optional<std::string> sweep;
    std::optional<std::string> range;
    double phi = 0.0;
    double tol = 1e-10;
    std::optional<std::string> out;
    int threads = 0;
};

struct VerifyOptions {
    int samples = 100;
    std::uint64_t seed = 42;
    double tol = 1e-6;
    int order = 64;
    int threads = 0;
};

Plane parse_plane(const std::string& text) {
    if (text == "pr") {
        return Plane::PurityTanhR;
    }
    if (text == "ab") {
        return Plane::Axes;
    }
    throw ValidationError(fmt::format("--plane must be pr or ab, got '{}'", text));
}

int cmd_eval(const EvalOptions& o, std::ostream& out) {
    const bool axes_mode = o.a || o.b;
    const bool rp_mode = o.r || o.p;
    if (axes_mode && rp_mode) {
        throw ValidationError("--a/--b cannot be combined with --r/--p");
    }
    if (!std::isfinite(o.phi)) {
        throw ValidationError("--phi must be finite");
    }
    double r = 0.0;
    double p = 1.0;
    if (axes_mode) {
        if (!o.a || !o.b) {
            throw ValidationError("--a and --b must be given together");
        }
        try {
            const auto rp = axes_to_params(*o.a, *o.b);
            r = rp.r;
            p = rp.p;
        } catch (const ValidationError& e) {
            throw ValidationError(fmt::format("--a/--b: {}", e.what()));
        }
    } else {
        if (!o.r) {
            throw ValidationError("--r is required (or give --a and --b)");
        }
        r = *o.r;
        p = o.p.value_or(1.0);
        if (!std::isfinite(r) || r < 0.0 || r > kMaxSqueezing) {
            throw ValidationError(fmt::format("--r must lie in [0, {}], got {}", kMaxSqueezing, r));
        }
        if (!std::isfinite(p) || p < kMinPurity || p > 1.0) {
            throw ValidationError(fmt::format("--p must lie in [{}, 1], got {}", kMinPurity, p));
        }
    }
    const StateParams params(r, o.phi, p);
    const CriteriaReport rep = evaluate(params);

    fmt::print(out, "r: {}\n", fmt_value(params.r()));
    fmt::print(out, "phi: {}\n", fmt_value(params.phi()));
    fmt::print(out, "p: {}\n", fmt_value(params.p()));
    fmt::print(out, "a: {}\n", fmt_value(rep.axes.a));
    fmt::print(out, "b: {}\n", fmt_value(rep.axes.b));
    fmt::print(out, "discord_bits: {}\n", fmt_value(rep.discord));
    fmt::print(out, "bell: {}\n", fmt_value(rep.bell));
    fmt::print(out, "bell_violated: {}\n", yes_no(rep.bell_violated));
    fmt::print(out, "sep_margin: {}\n", fmt_value(rep.sep_margin));
    fmt::print(out, "separable: {}\n", yes_no(rep.separable));
    if (o.theta) {
        const auto v = is_separable_theta(params, {*o.theta});
        fmt::print(out, "theta: {}\n", fmt_value(*o.theta));
        fmt::print(out, "theta_margin: {}\n", fmt_value(v.margin));
        fmt::print(out, "theta_separable: {}\n", yes_no(v.separable));
    }
    return kExitOk;
}

int cmd_scan(const ScanOptions& o, std::ostream& out) {
    GridSpec spec;
    spec.plane = parse_plane(o.plane);
    spec.phi = o.phi;
    spec.threads = o.threads;
    if (spec.plane == Plane::PurityTanhR) {
        if (o.grid_a || o.grid_b) {
            throw ValidationError("--grid-a/--grid-b need --plane ab");
        }
        if (o.grid_p) {
            spec.x = parse_axis(*o.grid_p);
        }
        if (o.grid_tanh_r) {
            spec.y = parse_axis(*o.grid_tanh_r);
        }
    } else {
        if (o.grid_p || o.grid_tanh_r) {
            throw ValidationError("--grid-p/--grid-tanh-r need --plane pr");
        }
        spec.x = o.grid_a ? parse_axis(*o.grid_a) : AxisSpec{1.0, 1000.0, 200, true};
        spec.y = o.grid_b ? parse_axis(*o.grid_b) : AxisSpec{0.01, 10.0, 200, true};
    }
    const auto records = run_grid(spec);
    write_records_csv(records, std::filesystem::path(o.out));

    std::size_t violations = 0;
    std::size_t separable = 0;
    std::size_t nonphysical = 0;
    for (const auto& rec : records) {
        if (!rec.physical) {
            ++nonphysical;
            continue;
        }
        violations += rec.bell_violated;
        separable += rec.separable;
    }
    fmt::print(out, "rows: {}, bell violations: {}, separable: {}, non-physical: {} -> {}\n", records.size(),
               violations, separable, nonphysical, o.out);
    return kExitOk;
}

int cmd_boundary(const BoundaryOptions& o, std::ostream& out) {
    BoundarySpec spec;
    spec.kind = parse_criterion(o.kind);
    const Plane plane = parse_plane(o.plane);
    spec.sweep = o.sweep ? parse_sweep(*o.sweep) : (plane == Plane::PurityTanhR ? SweepAxis::TanhR : SweepAxis::A);
    const bool sweep_in_pr = spec.sweep == SweepAxis::TanhR || spec.sweep == SweepAxis::Purity;
    if (sweep_in_pr != (plane == Plane::PurityTanhR)) {
        throw ValidationError(fmt::format("--sweep {} does not belong to --plane {}", to_string(spec.sweep), o.plane));
    }
    if (spec.kind == CriterionKind::DiscordLevel) {
        if (!o.level) {
            throw ValidationError("--kind discord needs --level");
        }
        spec.level = *o.level;
    } else if (o.level) {
        throw ValidationError("--level only applies to --kind discord");
    }
    if (o.range) {
        spec.range = parse_axis(*o.range);
    } else {
        switch (spec.sweep) {
            case SweepAxis::TanhR:
                spec.range = {0.0, 0.99, 100, false};
                break;
            case SweepAxis::Purity:
                spec.range = {0.01, 1.0, 100, false};
                break;
            case SweepAxis::A:
                spec.range = {1.0, 1000.0, 100, true};
                break;
            case SweepAxis::B:
                spec.range = {0.01, 10.0, 100, true};
                break;
        }
    }
    spec.phi = o.phi;
    spec.tol = o.tol;
    spec.threads = o.threads;

    const auto curve = bisect_boundary(spec);
    if (!o.out || *o.out == "-") {
        write_curve_csv(curve, out);
        return kExitOk;
    }
    write_curve_csv(curve, std::filesystem::path(*o.out));
    std::size_t crossings = 0;
    for (const auto& pt : curve.points) {
        crossings += pt.crossing;
    }
    fmt::print(out, "points: {}, crossings: {} -> {}\n", curve.points.size(), crossings, *o.out);
    return kExitOk;
}

int cmd_verify(const VerifyOptions& o, std::ostream& out) {
    VerifyConfig config;
    config.samples = o.samples;
    config.seed = o.seed;
    config.tol = o.tol;
    config.spec.order = o.order;
    config.threads = o.threads;
    const VerifyReport rep = run_verification(config);

    fmt::print(out, "seed: {}\n", rep.seed);
    fmt::print(out, "samples: {}\n", rep.samples);
    fmt::print(out, "tolerance: {}\n", fmt_value(o.tol));
    fmt::print(out, "max_xx_deviation: {:.3e}\n", rep.max_xx_deviation);
    fmt::print(out, "max_zz_deviation: {:.3e}\n", rep.max_zz_deviation);
    fmt::print(out, "normalization_checks: {}\n", rep.normalization_checked);
    fmt::print(out, "max_normalization_deviation: {:.3e}\n", rep.max_normalization_deviation);
    fmt::print(out, "theta_checks: {}\n", rep.theta_checked);
    fmt::print(out, "theta_mismatches: {}\n", rep.theta_mismatches);
    for (const auto& f : rep.failures) {
        fmt::print(out, "FAIL {}: r={} phi={} p={} theta={} deviation={:.3e}\n", f.check, fmt_value(f.sample.r),
                   fmt_value(f.sample.phi), fmt_value(f.sample.p), fmt_value(f.sample.theta), f.deviation);
    }
    fmt::print(out, "result: {}\n", rep.passed() ? "pass" : "fail");
    return rep.passed() ? kExitOk : kExitVerification;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Quantumness criteria for Gaussian two-mode squeezed states"};
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    EvalOptions eval_opts;
    auto* eval = app.add_subcommand("eval", "Evaluate discord, Bell expectation and separability for one state");
    eval->add_option("--r", eval_opts.r, "Squeezing amplitude r (dimensionless, 0..20)");
    eval->add_option("--phi", eval_opts.phi, fmt::format("Squeezing angle phi in {}", kAngleNote))
        ->capture_default_str();
    eval->add_option("--p", eval_opts.p, "Purity p in [1e-12, 1] (default 1 when --r is given)");
    eval->add_option("--a", eval_opts.a, "Semi-major ellipse axis a (vacuum units; use with --b)");
    eval->add_option("--b", eval_opts.b, "Semi-minor ellipse axis b (vacuum units; use with --a)");
    eval->add_option("--theta", eval_opts.theta,
                     fmt::format("Also report separability in the partition at angle theta, {}", kAngleNote));

    ScanOptions scan_opts;
    auto* scan = app.add_subcommand("scan", "Grid sweep of all criteria, written as CSV");
    scan->add_option("--plane", scan_opts.plane, "pr = (p, tanh r) plane, ab = (a, b) ellipse-axes plane")
        ->capture_default_str();
    scan->add_option("--grid-p", scan_opts.grid_p, "Purity axis min:max:count[:log] (default 0.005:1:200)");
    scan->add_option("--grid-tanh-r", scan_opts.grid_tanh_r,
                     "tanh(r) axis min:max:count[:log], values in [0, 1) (default 0:0.995:200)");
    scan->add_option("--grid-a", scan_opts.grid_a, "Semi-major axis a, min:max:count[:log] (default 1:1000:200:log)");
    scan->add_option("--grid-b", scan_opts.grid_b, "Semi-minor axis b, min:max:count[:log] (default 0.01:10:200:log)");
    scan->add_option("--phi", scan_opts.phi, fmt::format("Squeezing angle in {}", kAngleNote))->capture_default_str();
    scan->add_option("--out", scan_opts.out, "Output CSV path")->required();
    scan->add_option("--threads", scan_opts.threads, "Worker threads, 0 = auto")->capture_default_str();

    BoundaryOptions bnd_opts;
    auto* boundary = app.add_subcommand("boundary", "Bisect a criterion threshold curve, written as CSV");
    boundary->add_option("--kind", bnd_opts.kind, "bell | separability | discord")->capture_default_str();
    boundary->add_option("--level", bnd_opts.level, "Discord level in bits (required for --kind discord)");
    boundary->add_option("--plane", bnd_opts.plane, "pr or ab")->capture_default_str();
    boundary->add_option("--sweep", bnd_opts.sweep,
                         "Swept coordinate: tanh_r or p (plane pr), a or b (plane ab); default tanh_r / a");
    boundary->add_option("--range", bnd_opts.range,
                         "Sweep values min:max:count[:log] (defaults 0:0.99:100, 0.01:1:100, 1:1000:100:log, "
                         "0.01:10:100:log for tanh_r, p, a, b)");
    boundary->add_option("--phi", bnd_opts.phi, fmt::format("Squeezing angle in {}", kAngleNote))
        ->capture_default_str();
    boundary->add_option("--tol", bnd_opts.tol, "Bisection tolerance on coordinate and margin")->capture_default_str();
    boundary->add_option("--out", bnd_opts.out, "Output CSV path (default: standard output)");
    boundary->add_option("--threads", bnd_opts.threads, "Worker threads, 0 = auto")->capture_default_str();

    VerifyOptions ver_opts;
    auto* verify = app.add_subcommand("verify", "Cross-check closed forms against phase-space quadrature");
    verify->add_option("--samples", ver_opts.samples, "Number of seeded random states")->capture_default_str();
    verify->add_option("--seed", ver_opts.seed, "64-bit generator seed")->capture_default_str();
    verify->add_option("--tol", ver_opts.tol, "Maximum allowed absolute deviation")->capture_default_str();
    verify->add_option("--order", ver_opts.order, "Gauss-Legendre nodes per axis (>= 8)")->capture_default_str();
    verify->add_option("--threads", ver_opts.threads, "Worker threads, 0 = auto")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (*eval) {
            return cmd_eval(eval_opts, out);
        }
        if (*scan) {
            return cmd_scan(scan_opts, out);
        }
        if (*boundary) {
            return cmd_boundary(bnd_opts, out);
        }
        if (*verify) {
            return cmd_verify(ver_opts, out);
        }
    } catch (const IoError& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitValidation;
    } catch (const std::domain_error& e) {
        fmt::print(err, "error: {}\n", e.what());
        return kExitValidation;
    }
    return kExitValidation;
}

}  // namespace gausscrit
