#include "iua/calibration.hpp"
#include "iua/errors.hpp"

#include <cmath>

namespace iua {

Calibration Calibration::make(double theta, double dee, double epsilon) {
    Calibration cal;
    cal.theta = theta;
    cal.dee = dee;
    cal.epsilon = epsilon;
    cal.mu = 2.0 * dee / epsilon;
    cal.validate();
    return cal;
}

void Calibration::validate() const {
    if (!(theta > 0.0 && theta < 0.5)) throw Error("calibration: theta must be in (0, 0.5)");
    if (!(dee > 0.0)) throw Error("calibration: D must be positive");
    if (!(epsilon > 0.0 && epsilon < 0.5)) {
        throw Error("calibration: epsilon must be in (0, 0.5)");
    }
    if (mu != 2.0 * dee / epsilon) throw Error("calibration: mu != 2*D/epsilon");
}

namespace {

bool limit_bound_holds(const ScalarFn& t, double d, double theta) {
    return t(d) > 1.0 - theta && t(-d) < theta;
}

// Round up to 3 significant digits.
double round_up_3sig(double x) {
    if (x <= 0.0) return x;
    double mag = std::pow(10.0, std::floor(std::log10(x)) - 2.0);
    return std::ceil(x / mag) * mag;
}

} // namespace

double find_limit_bound(const ActivationProfile& act, double theta) {
    if (!act.is_squashed()) {
        throw CalibrationRequiredError("activation '" + act.name + "' has not been squashed");
    }
    if (!(theta > 0.0 && theta < 0.5)) {
        throw Error("find_limit_bound: theta must be in (0, 0.5)");
    }
    const ScalarFn& t = act.normalized;

    double hi = 1.0;
    while (!limit_bound_holds(t, hi, theta)) {
        hi *= 2.0;
        if (hi > 1e9) {
            throw LimitsUnreachableError("no bound D below 1e9 for activation '" + act.name +
                                         "'; declared limits are likely wrong");
        }
    }
    double lo = hi / 2.0;
    // Bisect to ~3 significant digits, keeping hi on the satisfying side.
    while ((hi - lo) > 1e-3 * hi) {
        double mid = 0.5 * (lo + hi);
        if (limit_bound_holds(t, mid, theta)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    double d = round_up_3sig(hi);
    d *= 2.0; // margin: only the inequality direction matters, larger D is free
    if (!limit_bound_holds(t, d, theta)) {
        throw LimitsUnreachableError("bound search failed to verify for '" + act.name + "'");
    }
    return d;
}

std::int32_t build_step_approx(GraphBuilder& b, int act_id, const Calibration& cal,
                               std::int32_t input_node, double center) {
    cal.validate();
    std::int32_t shifted = (center == 0.0)
                               ? input_node
                               : b.add_sum(input_node, b.add_const(-center));
    return b.add_act(act_id, b.add_scale(cal.mu, shifted));
}

std::int32_t build_1d_indicator(GraphBuilder& b, int act_id, const Calibration& cal,
                                std::int32_t input_node, double a, double bnd) {
    if (!(bnd - a >= cal.epsilon * (1.0 - 1e-9))) { // tolerate lattice-coordinate rounding
        throw CellTooSmallError("1d indicator needs b - a >= epsilon (got " +
                                std::to_string(bnd - a) + " < " + std::to_string(cal.epsilon) +
                                ")");
    }
    std::int32_t rise = build_step_approx(b, act_id, cal, input_node, a - 0.5 * cal.epsilon);
    std::int32_t fall = build_step_approx(b, act_id, cal, input_node, bnd + 0.5 * cal.epsilon);
    return b.add_sum(rise, b.add_scale(-1.0, fall));
}

BoxIndicatorNodes build_box_indicator(GraphBuilder& b, int act_id, const Calibration& cal,
                                      const std::vector<std::pair<double, double>>& ranges) {
    const auto m = static_cast<int>(ranges.size());
    if (m < 1) throw DimensionError("box indicator needs at least one dimension");
    if (!(cal.theta <= 1.0 / (4.0 * m + 2.0))) {
        throw ThetaBudgetError("theta=" + std::to_string(cal.theta) + " exceeds 1/(4m+2)=" +
                               std::to_string(1.0 / (4.0 * m + 2.0)) + " for m=" +
                               std::to_string(m));
    }
    std::vector<std::int32_t> indicators;
    indicators.reserve(ranges.size());
    for (int i = 0; i < m; ++i) {
        indicators.push_back(build_1d_indicator(b, act_id, cal, b.add_input(i + 1),
                                                ranges[i].first, ranges[i].second));
    }
    std::int32_t sum = b.add_sum_of(indicators);
    // sum_i H_i + 0.5eps = sum_i ind_i - m*(1-2theta) + 0.5eps
    const double shift = -m * (1.0 - 2.0 * cal.theta) + 0.5 * cal.epsilon;
    std::int32_t pre = b.add_sum(sum, b.add_const(shift));
    BoxIndicatorNodes nodes;
    nodes.pre_act = pre;
    nodes.output = b.add_act(act_id, b.add_scale(cal.mu, pre));
    return nodes;
}

std::int32_t boolean_gate(GraphBuilder& b, GateKind kind, std::int32_t x, std::int32_t y,
                          int act_id, const Calibration* cal) {
    if (kind == GateKind::Not) {
        return b.add_sum(b.add_const(1.0), b.add_scale(-1.0, x));
    }
    if (cal == nullptr) {
        throw CalibrationRequiredError("AND/OR gates need a calibrated step approximator");
    }
    cal->validate();
    const double bias = (kind == GateKind::And) ? -1.5 : -0.5;
    std::int32_t arg = b.add_sum(b.add_sum(x, y), b.add_const(bias));
    return b.add_act(act_id, b.add_scale(cal->mu, arg));
}

} // namespace iua
