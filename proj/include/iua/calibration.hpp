#pragma once

#include "iua/activation.hpp"
#include "iua/expr.hpp"

#include <vector>

namespace iua {

/// Step-approximator calibration: with dilation mu = 2*D/epsilon, the
/// normalized activation s(x) = t(mu * x) is within theta of its limits
/// whenever |x| >= 0.5*epsilon.
struct Calibration {
    double theta = 0.0;   // limit precision, in (0, 0.5)
    double dee = 0.0;     // bound D: t(D) > 1-theta, t(-D) < theta
    double epsilon = 0.0; // transition width, in (0, 0.5)
    double mu = 0.0;      // dilation factor, exactly 2*dee/epsilon

    static Calibration make(double theta, double dee, double epsilon);
    void validate() const;
};

/// Finds D with t(D) > 1-theta and t(-D) < theta for a normalized profile:
/// exponential doubling from 1, bisection to 3 significant digits rounding
/// upward, then one extra doubling as margin. Throws LimitsUnreachableError
/// past 1e9 (the profile's limits are likely mis-declared).
double find_limit_bound(const ActivationProfile& act, double theta);

/// Builds t(mu * (x - center)) over the given input node; returns the output
/// node id. `act_id` must reference the profile's normalized entry in the
/// builder's activation table.
std::int32_t build_step_approx(GraphBuilder& b, int act_id, const Calibration& cal,
                               std::int32_t input_node, double center);

/// One-dimensional indicator for [a, b]:
///   t(mu*(x + 0.5eps - a)) - t(mu*(x - 0.5eps - b))
/// Requires b - a >= epsilon (CellTooSmallError otherwise).
std::int32_t build_1d_indicator(GraphBuilder& b, int act_id, const Calibration& cal,
                                std::int32_t input_node, double a, double bnd);

/// m-dimensional box indicator t(mu * (sum_i H_i(x_i) + 0.5eps)) with
/// H_i = ind_i - (1 - 2*theta). `ranges` holds (a_i, b_i) per dimension and
/// input node i is the graph input of that dimension. Requires
/// theta <= 1/(4m+2) (ThetaBudgetError otherwise).
struct BoxIndicatorNodes {
    std::int32_t output = -1;  // post-activation value in [0, 1]
    std::int32_t pre_act = -1; // sum H_i + 0.5eps, before dilation
};
BoxIndicatorNodes build_box_indicator(GraphBuilder& b, int act_id, const Calibration& cal,
                                      const std::vector<std::pair<double, double>>& ranges);

enum class GateKind { Not, And, Or };

/// Boolean-operator fragments over values intended near {0,1}: NOT is 1-x,
/// AND is s(x+y-1.5), OR is s(x+y-0.5) with the calibrated step s. AND/OR
/// require a calibration (CalibrationRequiredError otherwise).
std::int32_t boolean_gate(GraphBuilder& b, GateKind kind, std::int32_t x, std::int32_t y,
                          int act_id, const Calibration* cal);

} // namespace iua
