#include "iua/interval.hpp"
#include "iua/errors.hpp"

#include <algorithm>

namespace iua {

bool contains(const Interval& outer, const Interval& inner, double slack) {
    return outer.lo - slack <= inner.lo && inner.hi <= outer.hi + slack;
}

bool contains_value(const Interval& iv, double v, double slack) {
    return iv.lo - slack <= v && v <= iv.hi + slack;
}

bool IntervalBox::contains_point(std::span<const double> x, double slack) const {
    if (static_cast<int>(x.size()) != dim()) {
        throw DimensionError("point/box dimension mismatch");
    }
    for (int i = 0; i < dim(); ++i) {
        if (!contains_value(dims[i], x[i], slack)) return false;
    }
    return true;
}

IntervalBox alpha(const std::vector<std::vector<double>>& points) {
    if (points.empty()) throw EmptyAbstractionError("alpha of an empty set");
    const std::size_t m = points.front().size();
    std::vector<Interval> dims(m);
    for (std::size_t d = 0; d < m; ++d) {
        dims[d] = Interval::point(points.front()[d]);
    }
    for (const auto& p : points) {
        if (p.size() != m) throw DimensionError("alpha over points of uneven dimension");
        for (std::size_t d = 0; d < m; ++d) {
            dims[d].lo = std::min(dims[d].lo, p[d]);
            dims[d].hi = std::max(dims[d].hi, p[d]);
        }
    }
    return IntervalBox(std::move(dims));
}

IntervalBox eps_ball(std::span<const double> x, double eps) {
    if (eps < 0.0) throw DomainError("negative ball radius");
    std::vector<Interval> dims;
    dims.reserve(x.size());
    for (double v : x) dims.emplace_back(v - eps, v + eps);
    return IntervalBox(std::move(dims));
}

} // namespace iua
