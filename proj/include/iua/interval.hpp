#pragma once

#include <cmath>
#include <limits>
#include <span>
#include <vector>

namespace iua {

/// Closed real interval [lo, hi]. Box inputs are finite; intermediates of
/// abstract evaluation may saturate to +-infinity (activation arguments
/// only — a squashable activation maps them back to its limits).
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    Interval(double l, double h) : lo(l), hi(h) {}
    static Interval point(double v) { return {v, v}; }

    double width() const { return hi - lo; }
    bool is_point() const { return lo == hi; }
    bool finite() const { return std::isfinite(lo) && std::isfinite(hi); }

    friend bool operator==(const Interval&, const Interval&) = default;
};

/// Closed containment outer ⊇ inner, with optional slack on both ends.
bool contains(const Interval& outer, const Interval& inner, double slack = 0.0);
/// Closed membership v ∈ iv, with optional slack.
bool contains_value(const Interval& iv, double v, double slack = 0.0);

/// One interval per input dimension; the abstract-domain element.
struct IntervalBox {
    std::vector<Interval> dims;

    IntervalBox() = default;
    explicit IntervalBox(std::vector<Interval> d) : dims(std::move(d)) {}

    int dim() const { return static_cast<int>(dims.size()); }
    bool contains_point(std::span<const double> x, double slack = 0.0) const;
};

/// Per-dimension min/max hull of a non-empty point set.
IntervalBox alpha(const std::vector<std::vector<double>>& points);

/// The l_inf ball of radius eps around x, as a box (exact on boxes).
IntervalBox eps_ball(std::span<const double> x, double eps);

/// Directed-rounding helpers for sound floating-point transformers.
inline double round_down(double x, int ulps = 1) {
    for (int i = 0; i < ulps && std::isfinite(x); ++i) {
        x = std::nextafter(x, -std::numeric_limits<double>::infinity());
    }
    return x;
}
inline double round_up(double x, int ulps = 1) {
    for (int i = 0; i < ulps && std::isfinite(x); ++i) {
        x = std::nextafter(x, std::numeric_limits<double>::infinity());
    }
    return x;
}

} // namespace iua
