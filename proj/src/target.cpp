#include "iua/target.hpp"
#include "iua/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace iua {

void TargetFunction::validate(unsigned seed) const {
    if (!oracle) throw Error("target '" + name + "' has no oracle");
    if (domain.dim() == 0) throw DimensionError("target '" + name + "' has empty domain");
    if (lipschitz < 0.0) throw InconsistentLipschitzError("negative Lipschitz constant");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const int m = dim();
    auto sample_point = [&] {
        std::vector<double> x(m);
        for (int d = 0; d < m; ++d) {
            const Interval& iv = domain.dims[d];
            x[d] = iv.lo + unit(rng) * iv.width();
        }
        return x;
    };

    std::vector<double> prev_x;
    double prev_f = 0.0;
    for (int i = 0; i < 1000; ++i) {
        std::vector<double> x = sample_point();
        double f = oracle(x);
        if (!std::isfinite(f)) {
            throw NumericOverflowError("target '" + name + "' is non-finite on its domain");
        }
        if (i > 0) {
            double dist = 0.0;
            for (int d = 0; d < m; ++d) dist = std::max(dist, std::fabs(x[d] - prev_x[d]));
            if (dist > 0.0 && std::fabs(f - prev_f) > lipschitz * dist * (1.0 + 1e-9) + 1e-12) {
                throw InconsistentLipschitzError(
                    "target '" + name + "': observed difference quotient " +
                    std::to_string(std::fabs(f - prev_f) / dist) + " exceeds declared L=" +
                    std::to_string(lipschitz));
            }
        }
        prev_x = std::move(x);
        prev_f = f;
    }
}

TargetFunction target_sin2x() {
    TargetFunction tf;
    tf.name = "sin2x";
    tf.oracle = [](std::span<const double> x) { return std::sin(2.0 * x[0]) + 1.0; };
    tf.domain = IntervalBox({Interval(0.0, 5.0)});
    tf.lipschitz = 2.0;
    return tf;
}

TargetFunction target_quadratic2d() {
    TargetFunction tf;
    tf.name = "quadratic2d";
    tf.oracle = [](std::span<const double> x) { return x[0] * x[0] + x[1] * x[1]; };
    tf.domain = IntervalBox({Interval(0.0, 1.0), Interval(0.0, 1.0)});
    tf.lipschitz = 4.0;
    return tf;
}

TargetFunction target_constant(double value, IntervalBox domain) {
    TargetFunction tf;
    tf.name = "constant";
    tf.oracle = [value](std::span<const double>) { return value; };
    tf.domain = std::move(domain);
    tf.lipschitz = 0.0;
    return tf;
}

TargetFunction target_from_csv(const std::string& csv_text, double lipschitz,
                               const std::string& name) {
    std::vector<std::pair<double, double>> pts;
    std::istringstream in(csv_text);
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::replace(line.begin(), line.end(), ',', ' ');
        std::istringstream row(line);
        double x = 0.0, y = 0.0;
        if (!(row >> x >> y)) throw ParseError("csv target: bad row '" + line + "'");
        pts.emplace_back(x, y);
    }
    if (pts.size() < 2) throw ParseError("csv target needs at least two rows");
    std::sort(pts.begin(), pts.end());
    for (std::size_t i = 1; i < pts.size(); ++i) {
        if (pts[i].first == pts[i - 1].first) {
            throw ParseError("csv target: duplicate x " + std::to_string(pts[i].first));
        }
    }

    TargetFunction tf;
    tf.name = name;
    tf.domain = IntervalBox({Interval(pts.front().first, pts.back().first)});
    tf.lipschitz = lipschitz;
    tf.oracle = [pts = std::move(pts)](std::span<const double> x) {
        const double v = x[0];
        auto it = std::lower_bound(pts.begin(), pts.end(), std::make_pair(v, -1e308));
        if (it == pts.begin()) return pts.front().second;
        if (it == pts.end()) return pts.back().second;
        const auto [x1, y1] = *(it - 1);
        const auto [x2, y2] = *it;
        const double w = (v - x1) / (x2 - x1);
        return y1 + w * (y2 - y1);
    };
    return tf;
}

TargetFunction target_by_name(const std::string& name) {
    if (name == "sin2x") return target_sin2x();
    if (name == "quadratic2d") return target_quadratic2d();
    throw Error("unknown target function '" + name + "' (constant/csv need parameters)");
}

} // namespace iua
