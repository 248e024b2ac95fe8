#pragma once

// Parameter sweeps over the (p, tanh r) and (a, b) planes, threshold curves
// by bisection, and their CSV serialization.

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gausscrit/criteria.hpp"

namespace gausscrit {

enum class Plane {
    PurityTanhR,  // x = p, y = tanh r
    Axes,         // x = a, y = b
};

struct AxisSpec {
    double min = 0.0;
    double max = 1.0;
    int count = 2;
    bool log = false;

    // Throws ValidationError on count < 2, min >= max, non-finite bounds or a
    // log axis with min <= 0.
    void validate() const;
    std::vector<double> values() const;
};

// Parse "min:max:count[:log]".
AxisSpec parse_axis(std::string_view text);

struct GridSpec {
    Plane plane = Plane::PurityTanhR;
    AxisSpec x{0.005, 1.0, 200, false};
    AxisSpec y{0.0, 0.995, 200, false};
    double phi = 0.0;
    int threads = 0;  // 0 = hardware concurrency

    void validate() const;
};

struct ScanRecord {
    double p = 0.0;
    double r = 0.0;
    double tanh_r = 0.0;
    double phi = 0.0;
    double a = 0.0;
    double b = 0.0;
    // Criteria columns are meaningful only when physical is true.
    bool physical = true;
    double discord = 0.0;
    double tanh_discord = 0.0;
    double bell = 0.0;
    bool bell_violated = false;
    double sep_margin = 0.0;
    bool separable = true;
};

// One record per grid cell, row-major with x fastest. Cells of the (a, b)
// plane with a < b, a*b < 1 or outside the supported (r, p) domain are kept
// with physical = false.
std::vector<ScanRecord> run_grid(const GridSpec& spec);

enum class CriterionKind { Bell, Separability, DiscordLevel };

enum class SweepAxis { TanhR, Purity, A, B };

std::string_view to_string(CriterionKind kind);
std::string_view to_string(SweepAxis axis);
CriterionKind parse_criterion(std::string_view text);
SweepAxis parse_sweep(std::string_view text);

struct BoundarySpec {
    CriterionKind kind = CriterionKind::Separability;
    double level = 0.0;  // discord level in bits, DiscordLevel only
    SweepAxis sweep = SweepAxis::TanhR;
    AxisSpec range{0.0, 0.99, 100, false};
    double phi = 0.0;
    double tol = 1e-10;
    int threads = 0;

    void validate() const;
};

struct BoundaryPoint {
    double p = 0.0;
    double r = 0.0;
    double tanh_r = 0.0;
    double a = 0.0;
    double b = 0.0;
    double margin = 0.0;
    bool crossing = false;  // false: no sign change in the admissible bracket
};

struct BoundaryCurve {
    CriterionKind kind = CriterionKind::Separability;
    double level = 0.0;
    SweepAxis sweep = SweepAxis::TanhR;
    double tol = 0.0;
    std::vector<BoundaryPoint> points;
};

// Signed distance to the criterion threshold: bell - 2, exp(-2r) - sqrt(p) or
// discord - level.
double criterion_margin(CriterionKind kind, double level, const StateParams& params);

// For each sweep value, bracket the first sign change of the margin along the
// solved coordinate (p for tanh r, r for p, b for a, a for b) on a coarse
// grid, then bisect until both the bracket width and |margin| are <= tol.
BoundaryCurve bisect_boundary(const BoundarySpec& spec);

inline constexpr std::string_view kRecordHeader =
    "p,r,tanh_r,phi,a,b,discord,tanh_discord,bell,bell_violated,sep_margin,separable";
inline constexpr std::string_view kBoundaryHeader = "kind,level,p,r,tanh_r,a,b,margin,crossing";

// CSV with LF endings, %.9g floats, 0/1 booleans and a literal nan for
// undefined values. Throws ValidationError on empty input.
void write_records_csv(std::span<const ScanRecord> records, std::ostream& out);
void write_records_csv(std::span<const ScanRecord> records, const std::filesystem::path& path);
void write_curve_csv(const BoundaryCurve& curve, std::ostream& out);
void write_curve_csv(const BoundaryCurve& curve, const std::filesystem::path& path);

std::string format_real(double value);

}  // namespace gausscrit
