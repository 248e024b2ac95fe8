#include "gausscrit/scan.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <ostream>

#include <fmt/format.h>

#include "gausscrit/errors.hpp"
#include "parallel.hpp"

namespace gausscrit {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr int kBracketSamples = 256;
constexpr int kMaxBisections = 4096;

// Largest a/b and a*b compatible with r <= kMaxSqueezing and p >= kMinPurity.
const double kMaxAxisRatio = std::exp(2.0 * kMaxSqueezing);
const double kMaxAxisProduct = 1.0 / std::sqrt(kMinPurity);

double parse_double(std::string_view text, std::string_view what) {
    double value = 0.0;
    const auto* end = text.data() + text.size();
    const auto [ptr, ec] = std::from_chars(text.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ValidationError(fmt::format("cannot parse {} '{}' as a number", what, text));
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(sep, start);
        parts.push_back(text.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

void check_range(const AxisSpec& axis, double lo, double hi, std::string_view name) {
    if (axis.min < lo || axis.max > hi) {
        throw ValidationError(
            fmt::format("{} axis [{}, {}] leaves the admissible range [{}, {}]", name, axis.min, axis.max, lo, hi));
    }
}

// (r, p) from ellipse axes without the physicality checks of axes_to_params;
// used for cells and bracket endpoints that may sit on or beyond the boundary.
struct RawAxesState {
    double r;
    double p;
    bool physical;
};

RawAxesState raw_from_axes(double a, double b) {
    const double r = 0.5 * std::log(a / b);
    const double p = 1.0 / (a * a * b * b);
    const bool physical = a >= b && a * b >= 1.0 && r <= kMaxSqueezing && p >= kMinPurity;
    return {r, p, physical};
}

StateParams clamped_state(double r, double phi, double p) {
    return StateParams(std::clamp(r, 0.0, kMaxSqueezing), phi, std::clamp(p, kMinPurity, 1.0));
}

ScanRecord make_record(const StateParams& params, double tanh_r, const AxesParams& axes, double sep_margin,
                       bool separable) {
    ScanRecord rec;
    rec.p = params.p();
    rec.r = params.r();
    rec.tanh_r = tanh_r;
    rec.phi = params.phi();
    rec.a = axes.a;
    rec.b = axes.b;
    rec.physical = true;
    rec.discord = discord(params);
    rec.tanh_discord = std::tanh(rec.discord);
    rec.bell = bell_expectation(params);
    rec.bell_violated = rec.bell > 2.0;
    rec.sep_margin = sep_margin;
    rec.separable = separable;
    return rec;
}

void write_bool(fmt::memory_buffer& buf, bool value) {
    buf.push_back(value ? '1' : '0');
}

void append_real(fmt::memory_buffer& buf, double value) {
    const auto s = format_real(value);
    buf.append(s.data(), s.data() + s.size());
}

template <typename Writer>
void write_file(const std::filesystem::path& path, Writer&& writer) {
    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file) {
        throw IoError(fmt::format("cannot open '{}' for writing", path.string()));
    }
    writer(file);
    file.flush();
    if (!file) {
        throw IoError(fmt::format("failed writing '{}'", path.string()));
    }
}

// One-dimensional problem along the solved coordinate.
struct SolvedAxis {
    double lo;
    double hi;
    bool log;
};

}  // namespace

void AxisSpec::validate() const {
    if (count < 2) {
        throw ValidationError(fmt::format("axis needs at least 2 points, got {}", count));
    }
    if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
        throw ValidationError(fmt::format("axis bounds must be finite with min < max, got {}:{}", min, max));
    }
    if (log && !(min > 0.0)) {
        throw ValidationError(fmt::format("log axis requires min > 0, got {}", min));
    }
}

std::vector<double> AxisSpec::values() const {
    validate();
    std::vector<double> out(count);
    const double denom = static_cast<double>(count - 1);
    for (int i = 0; i < count; ++i) {
        const double t = i / denom;
        if (log) {
            out[i] = std::exp(std::log(min) + (std::log(max) - std::log(min)) * t);
        } else {
            out[i] = min + (max - min) * t;
        }
    }
    out.front() = min;
    out.back() = max;
    return out;
}

AxisSpec parse_axis(std::string_view text) {
    const auto parts = split(text, ':');
    if (parts.size() != 3 && parts.size() != 4) {
        throw ValidationError(fmt::format("grid '{}' must look like min:max:count[:log]", text));
    }
    AxisSpec axis;
    axis.min = parse_double(parts[0], "grid min");
    axis.max = parse_double(parts[1], "grid max");
    int count = 0;
    const auto [ptr, ec] = std::from_chars(parts[2].data(), parts[2].data() + parts[2].size(), count);
    if (ec != std::errc() || ptr != parts[2].data() + parts[2].size()) {
        throw ValidationError(fmt::format("cannot parse grid count '{}'", parts[2]));
    }
    axis.count = count;
    if (parts.size() == 4) {
        if (parts[3] == "log") {
            axis.log = true;
        } else if (parts[3] != "linear" && parts[3] != "lin") {
            throw ValidationError(fmt::format("unknown grid scale '{}' (expected log or linear)", parts[3]));
        }
    }
    axis.validate();
    return axis;
}

void GridSpec::validate() const {
    x.validate();
    y.validate();
    if (!std::isfinite(phi)) {
        throw ValidationError("phi must be finite");
    }
    if (plane == Plane::PurityTanhR) {
        check_range(x, kMinPurity, 1.0, "purity");
        check_range(y, 0.0, std::tanh(kMaxSqueezing), "tanh r");
        if (y.max >= 1.0) {
            throw ValidationError("tanh r must stay below 1");
        }
    } else {
        if (!(x.min > 0.0) || !(y.min > 0.0)) {
            throw ValidationError("ellipse axes must be positive");
        }
    }
}

std::vector<ScanRecord> run_grid(const GridSpec& spec) {
    spec.validate();
    const auto xs = spec.x.values();
    const auto ys = spec.y.values();
    const double phi = reduce_angle(spec.phi);
    std::vector<ScanRecord> records(xs.size() * ys.size());

    detail::parallel_for(records.size(), spec.threads, [&](std::size_t idx) {
        const double x = xs[idx % xs.size()];
        const double y = ys[idx / xs.size()];
        if (spec.plane == Plane::PurityTanhR) {
            const StateParams params(std::atanh(y), phi, x);
            const auto sep = is_separable_closed(params);
            records[idx] = make_record(params, y, params_to_axes(params.r(), params.p()), sep.margin, sep.separable);
            return;
        }
        const RawAxesState raw = raw_from_axes(x, y);
        if (!raw.physical) {
            ScanRecord rec;
            rec.p = raw.p;
            rec.r = raw.r;
            rec.tanh_r = std::tanh(raw.r);
            rec.phi = phi;
            rec.a = x;
            rec.b = y;
            rec.physical = false;
            records[idx] = rec;
            return;
        }
        const StateParams params(raw.r, phi, raw.p);
        const auto sep = is_separable_axes({x, y});
        records[idx] = make_record(params, std::tanh(raw.r), {x, y}, sep.margin, sep.separable);
    });
    return records;
}

std::string_view to_string(CriterionKind kind) {
    switch (kind) {
        case CriterionKind::Bell:
            return "bell";
        case CriterionKind::Separability:
            return "separability";
        case CriterionKind::DiscordLevel:
            return "discord";
    }
    return "unknown";
}

std::string_view to_string(SweepAxis axis) {
    switch (axis) {
        case SweepAxis::TanhR:
            return "tanh_r";
        case SweepAxis::Purity:
            return "p";
        case SweepAxis::A:
            return "a";
        case SweepAxis::B:
            return "b";
    }
    return "unknown";
}

CriterionKind parse_criterion(std::string_view text) {
    for (auto kind : {CriterionKind::Bell, CriterionKind::Separability, CriterionKind::DiscordLevel}) {
        if (text == to_string(kind)) {
            return kind;
        }
    }
    throw ValidationError(fmt::format("unknown criterion '{}' (expected bell, separability or discord)", text));
}

SweepAxis parse_sweep(std::string_view text) {
    for (auto axis : {SweepAxis::TanhR, SweepAxis::Purity, SweepAxis::A, SweepAxis::B}) {
        if (text == to_string(axis)) {
            return axis;
        }
    }
    throw ValidationError(fmt::format("unknown sweep axis '{}' (expected tanh_r, p, a or b)", text));
}

void BoundarySpec::validate() const {
    range.validate();
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        throw ValidationError(fmt::format("tolerance must be positive, got {}", tol));
    }
    if (!std::isfinite(phi)) {
        throw ValidationError("phi must be finite");
    }
    if (kind == CriterionKind::DiscordLevel && !(std::isfinite(level) && level > 0.0)) {
        throw ValidationError(fmt::format("discord level must be positive, got {}", level));
    }
    switch (sweep) {
        case SweepAxis::TanhR:
            check_range(range, 0.0, std::tanh(kMaxSqueezing), "tanh r");
            if (range.max >= 1.0) {
                throw ValidationError("tanh r must stay below 1");
            }
            break;
        case SweepAxis::Purity:
            check_range(range, kMinPurity, 1.0, "purity");
            break;
        case SweepAxis::A:
        case SweepAxis::B:
            if (!(range.min > 0.0)) {
                throw ValidationError("ellipse axes must be positive");
            }
            break;
    }
}

double criterion_margin(CriterionKind kind, double level, const StateParams& params) {
    switch (kind) {
        case CriterionKind::Bell:
            return bell_expectation(params) - 2.0;
        case CriterionKind::Separability:
            return is_separable_closed(params).margin;
        case CriterionKind::DiscordLevel:
            return discord(params) - level;
    }
    return kNaN;
}

BoundaryCurve bisect_boundary(const BoundarySpec& spec) {
    spec.validate();
    const double phi = reduce_angle(spec.phi);
    const auto sweep_values = spec.range.values();

    BoundaryCurve curve;
    curve.kind = spec.kind;
    curve.level = spec.kind == CriterionKind::DiscordLevel ? spec.level : kNaN;
    curve.sweep = spec.sweep;
    curve.tol = spec.tol;
    curve.points.resize(sweep_values.size());

    detail::parallel_for(sweep_values.size(), spec.threads, [&](std::size_t idx) {
        const double v = sweep_values[idx];

        // Map the solved coordinate to a state, and describe its admissible range.
        auto state_at = [&](double s) -> StateParams {
            switch (spec.sweep) {
                case SweepAxis::TanhR:
                    return clamped_state(std::atanh(v), phi, s);
                case SweepAxis::Purity:
                    return clamped_state(s, phi, v);
                case SweepAxis::A: {
                    const auto raw = raw_from_axes(v, s);
                    return clamped_state(raw.r, phi, raw.p);
                }
                case SweepAxis::B: {
                    const auto raw = raw_from_axes(s, v);
                    return clamped_state(raw.r, phi, raw.p);
                }
            }
            return clamped_state(0.0, phi, 1.0);
        };

        SolvedAxis solved{};
        switch (spec.sweep) {
            case SweepAxis::TanhR:
                solved = {kMinPurity, 1.0, true};
                break;
            case SweepAxis::Purity:
                solved = {0.0, kMaxSqueezing, false};
                break;
            case SweepAxis::A:
                solved = {std::max(1.0 / v, v / kMaxAxisRatio), std::min(v, kMaxAxisProduct / v), true};
                break;
            case SweepAxis::B:
                solved = {std::max(v, 1.0 / v), std::min(v * kMaxAxisRatio, kMaxAxisProduct / v), true};
                break;
        }

        auto margin_at = [&](double s) { return criterion_margin(spec.kind, spec.level, state_at(s)); };

        auto fill = [&](double s, double margin) {
            BoundaryPoint pt;
            switch (spec.sweep) {
                case SweepAxis::A:
                    pt.a = v;
                    pt.b = s;
                    break;
                case SweepAxis::B:
                    pt.a = s;
                    pt.b = v;
                    break;
                default:
                    break;
            }
            const StateParams params = state_at(s);
            pt.p = params.p();
            pt.r = params.r();
            pt.tanh_r = spec.sweep == SweepAxis::TanhR ? v : std::tanh(params.r());
            if (spec.sweep == SweepAxis::TanhR || spec.sweep == SweepAxis::Purity) {
                const auto axes = params_to_axes(params.r(), params.p());
                pt.a = axes.a;
                pt.b = axes.b;
            }
            pt.margin = margin;
            pt.crossing = true;
            return pt;
        };

        BoundaryPoint none;
        none.p = none.r = none.tanh_r = none.a = none.b = none.margin = kNaN;
        none.crossing = false;
        switch (spec.sweep) {
            case SweepAxis::TanhR:
                none.tanh_r = v;
                none.r = std::atanh(v);
                break;
            case SweepAxis::Purity:
                none.p = v;
                break;
            case SweepAxis::A:
                none.a = v;
                break;
            case SweepAxis::B:
                none.b = v;
                break;
        }

        if (!(solved.lo < solved.hi)) {
            curve.points[idx] = none;
            return;
        }

        // Coarse bracket: first sign change from the low end.
        const AxisSpec coarse{solved.lo, solved.hi, kBracketSamples, solved.log};
        const auto grid = coarse.values();
        std::vector<double> margins(grid.size());
        for (std::size_t i = 0; i < grid.size(); ++i) {
            margins[i] = margin_at(grid[i]);
        }
        std::size_t bracket = grid.size();
        for (std::size_t i = 0; i < grid.size(); ++i) {
            if (margins[i] == 0.0) {
                curve.points[idx] = fill(grid[i], 0.0);
                return;
            }
            if (i + 1 < grid.size() && std::signbit(margins[i]) != std::signbit(margins[i + 1]) &&
                margins[i + 1] != 0.0) {
                bracket = i;
                break;
            }
        }
        if (bracket == grid.size()) {
            curve.points[idx] = none;
            return;
        }

        double lo = grid[bracket];
        double hi = grid[bracket + 1];
        double m_lo = margins[bracket];
        double m_hi = margins[bracket + 1];
        for (int iter = 0; iter < kMaxBisections; ++iter) {
            const double mid = lo + 0.5 * (hi - lo);
            if (!(mid > lo && mid < hi)) {
                break;
            }
            const double m = margin_at(mid);
            if (m == 0.0) {
                lo = hi = mid;
                m_lo = m_hi = 0.0;
                break;
            }
            if (std::signbit(m) == std::signbit(m_lo)) {
                lo = mid;
                m_lo = m;
            } else {
                hi = mid;
                m_hi = m;
            }
            if (hi - lo <= spec.tol && std::min(std::abs(m_lo), std::abs(m_hi)) <= spec.tol) {
                break;
            }
        }
        curve.points[idx] = std::abs(m_lo) <= std::abs(m_hi) ? fill(lo, m_lo) : fill(hi, m_hi);
    });
    return curve;
}

std::string format_real(double value) {
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    return fmt::format("{:.9g}", value);
}

void write_records_csv(std::span<const ScanRecord> records, std::ostream& out) {
    if (records.empty()) {
        throw ValidationError("no records to write");
    }
    fmt::memory_buffer buf;
    buf.append(kRecordHeader.data(), kRecordHeader.data() + kRecordHeader.size());
    buf.push_back('\n');
    for (const auto& rec : records) {
        for (double v : {rec.p, rec.r, rec.tanh_r, rec.phi, rec.a, rec.b}) {
            append_real(buf, v);
            buf.push_back(',');
        }
        if (!rec.physical) {
            fmt::format_to(std::back_inserter(buf), "nan,nan,nan,nan,nan,nan\n");
            continue;
        }
        append_real(buf, rec.discord);
        buf.push_back(',');
        append_real(buf, rec.tanh_discord);
        buf.push_back(',');
        append_real(buf, rec.bell);
        buf.push_back(',');
        write_bool(buf, rec.bell_violated);
        buf.push_back(',');
        append_real(buf, rec.sep_margin);
        buf.push_back(',');
        write_bool(buf, rec.separable);
        buf.push_back('\n');
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_records_csv(std::span<const ScanRecord> records, const std::filesystem::path& path) {
    if (records.empty()) {
        throw ValidationError("no records to write");
    }
    write_file(path, [&](std::ostream& out) { write_records_csv(records, out); });
}

void write_curve_csv(const BoundaryCurve& curve, std::ostream& out) {
    if (curve.points.empty()) {
        throw ValidationError("boundary curve has no points");
    }
    fmt::memory_buffer buf;
    buf.append(kBoundaryHeader.data(), kBoundaryHeader.data() + kBoundaryHeader.size());
    buf.push_back('\n');
    const auto kind = to_string(curve.kind);
    for (const auto& pt : curve.points) {
        buf.append(kind.data(), kind.data() + kind.size());
        buf.push_back(',');
        for (double v : {curve.level, pt.p, pt.r, pt.tanh_r, pt.a, pt.b, pt.margin}) {
            append_real(buf, v);
            buf.push_back(',');
        }
        write_bool(buf, pt.crossing);
        buf.push_back('\n');
    }
    out.write(buf.data(), static_cast<std::streamsize>(buf.size()));
}

void write_curve_csv(const BoundaryCurve& curve, const std::filesystem::path& path) {
    if (curve.points.empty()) {
        throw ValidationError("boundary curve has no points");
    }
    write_file(path, [&](std::ostream& out) { write_curve_csv(curve, out); });
}

}  // namespace gausscrit
