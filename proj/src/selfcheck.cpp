#include "iua/selfcheck.hpp"

#include "iua/abstract.hpp"
#include "iua/builder.hpp"
#include "iua/calibration.hpp"
#include "iua/errors.hpp"
#include "iua/grid.hpp"
#include "iua/hardness.hpp"
#include "iua/target.hpp"
#include "iua/verify.hpp"

#include <cmath>
#include <sstream>

namespace iua::selfcheck {

namespace {

std::vector<ActivationProfile>& profile_pool() {
    static std::vector<ActivationProfile> pool = [] {
        std::vector<ActivationProfile> v;
        for (const std::string& name : registered_activations()) {
            v.push_back(activation_by_name(name));
        }
        return v;
    }();
    return pool;
}

} // namespace

ExprGraph random_graph(std::mt19937_64& rng, int input_dim, int extra_nodes) {
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_int_distribution<int> op(0, 3);
    GraphBuilder b(input_dim);

    std::vector<std::int32_t> live;
    for (int i = 1; i <= input_dim; ++i) live.push_back(b.add_input(i));
    live.push_back(b.add_const(coef(rng)));

    auto pick = [&](std::size_t n) {
        return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
    };
    for (int i = 0; i < extra_nodes; ++i) {
        std::int32_t n = 0;
        switch (op(rng)) {
        case 0: n = b.add_sum(live[pick(live.size())], live[pick(live.size())]); break;
        case 1: n = b.add_scale(coef(rng), live[pick(live.size())]); break;
        case 2: n = b.add_const(coef(rng)); break;
        default: {
            const auto& pool = profile_pool();
            const ActivationProfile& p = pool[pick(pool.size())];
            const bool normalized = pick(2) == 0;
            std::int32_t child = live[pick(live.size())];
            n = b.add_act(b.add_activation(p, normalized), child);
            break;
        }
        }
        live.push_back(n);
    }
    b.set_outputs({live.back()});
    return b.finish();
}

IntervalBox random_box(std::mt19937_64& rng, int dim, double bound) {
    std::uniform_real_distribution<double> unit(-bound, bound);
    std::vector<Interval> dims(dim);
    for (int d = 0; d < dim; ++d) {
        double a = unit(rng), b = unit(rng);
        dims[d] = {std::min(a, b), std::max(a, b)};
    }
    return IntervalBox(std::move(dims));
}

std::vector<double> random_point(std::mt19937_64& rng, const IntervalBox& box) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(box.dim());
    for (int d = 0; d < box.dim(); ++d) {
        x[d] = box.dims[d].lo + unit(rng) * box.dims[d].width();
    }
    return x;
}

long soundness_fuzz(unsigned seed, int graphs, int points_per_box) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> dims(1, 3);
    long violations = 0;
    for (int g = 0; g < graphs; ++g) {
        const int m = dims(rng);
        ExprGraph graph = random_graph(rng, m);
        IntervalBox box = random_box(rng, m);
        const Interval out = abstract_eval(graph, box)[0];
        for (int p = 0; p < points_per_box; ++p) {
            std::vector<double> x = random_point(rng, box);
            if (!contains_value(out, graph.eval(x)[0])) ++violations;
        }
    }
    return violations;
}

namespace {

using Runner = std::vector<CheckResult>;

void record(Runner& out, const std::string& name, bool pass, const std::string& detail = "") {
    out.push_back({name, pass, detail});
}

void check_activation_registry(Runner& out, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> wide(-40.0, 40.0);
    bool ok = true;
    std::string detail;
    for (const ActivationProfile& p : profile_pool()) {
        for (int i = 0; i < 10000 && ok; ++i) {
            double x = wide(rng), y = wide(rng);
            if (x > y) std::swap(x, y);
            const double fx = p.normalized(x), fy = p.normalized(y);
            if (fx > fy + 1e-12 || fx < -1e-12 || fy > 1.0 + 1e-12) {
                ok = false;
                detail = p.name;
            }
        }
    }
    record(out, "activation-monotone-unit-range", ok, detail);
}

void check_relu_closed_form(Runner& out) {
    const ActivationProfile relu = activation_by_name("relu");
    bool ok = true;
    for (int i = 0; i <= 1000; ++i) {
        const double x = -3.0 + 6.0 * i / 1000.0;
        const double expect = x <= -1.0 ? 0.0 : (x >= 0.0 ? 1.0 : x + 1.0);
        if (std::fabs(relu.normalized(x) - expect) > 1e-12) ok = false;
    }
    record(out, "relu-normalization-closed-form", ok);
}

void check_worked_example(Runner& out) {
    const ActivationProfile sigmoid = activation_by_name("sigmoid");
    GraphBuilder b(2);
    const int act = b.add_activation(sigmoid, true);
    std::int32_t arg = b.add_sum(b.add_input(1), b.add_scale(0.5, b.add_input(2)));
    b.set_outputs({b.add_act(act, arg)});
    const ExprGraph g = b.finish();
    const Interval got = abstract_eval(g, IntervalBox({{0.0, 1.0}, {0.6, 1.0}}))[0];
    const double lo = sigmoid.normalized(0.3), hi = sigmoid.normalized(1.5);
    const double tol = 4.0 * std::max(std::fabs(lo), std::fabs(hi)) *
                       std::numeric_limits<double>::epsilon();
    const bool ok = std::fabs(got.lo - lo) <= tol && std::fabs(got.hi - hi) <= tol;
    std::ostringstream detail;
    detail << "[" << got.lo << ", " << got.hi << "]";
    record(out, "worked-abstract-example", ok, detail.str());
}

void check_soundness(Runner& out, unsigned seed) {
    const long v = soundness_fuzz(seed, 200, 50);
    record(out, "soundness-fuzz", v == 0, v ? std::to_string(v) + " violations" : "");
}

void check_indicators(Runner& out, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ActivationProfile sigmoid = activation_by_name("sigmoid");
    bool ok = true;
    for (int trial = 0; trial < 50 && ok; ++trial) {
        const double theta = 0.01 + 0.05 * unit(rng);
        const double eps = 0.05 + 0.4 * unit(rng);
        const Calibration cal =
            Calibration::make(theta, find_limit_bound(sigmoid, theta), eps);
        const double a = -2.0 + 4.0 * unit(rng);
        const double bnd = a + eps * (1.0 + std::floor(4.0 * unit(rng)));
        GraphBuilder b(1);
        const int act = b.add_activation(sigmoid, true);
        b.set_outputs({build_1d_indicator(b, act, cal, b.add_input(1), a, bnd)});
        const ExprGraph g = b.finish();

        auto output = [&](double lo, double hi) {
            return abstract_eval(g, IntervalBox({{lo, hi}}))[0];
        };
        const Interval inside = output(a + unit(rng) * (bnd - a) * 0.5,
                                       bnd - unit(rng) * (bnd - a) * 0.25);
        if (!(inside.lo > 1.0 - 2.0 * theta && inside.hi <= round_up(1.0, 2))) ok = false;
        const Interval left = output(a - 1.0 - eps - unit(rng), a - eps);
        if (!(left.lo > -theta && left.hi < theta)) ok = false;
        const Interval right = output(bnd + eps, bnd + eps + 1.0 + unit(rng));
        if (!(right.lo > -theta && right.hi < theta)) ok = false;
        const Interval any = output(a - 2.0, bnd + 2.0);
        if (!(any.hi <= round_up(1.0, 2))) ok = false;
    }
    record(out, "indicator-1d-cases", ok);
}

void check_gadgets(Runner& out, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ActivationProfile act = activation_by_name("sigmoid");
    const double delta = 0.25;
    bool ok = true;
    std::string detail;
    for (int k : {1, 5}) {
        for (GadgetKind which : {GadgetKind::T1, GadgetKind::T2, GadgetKind::T3,
                                 GadgetKind::T4, GadgetKind::T5}) {
            const GadgetSpec g = realize_gadget(which, act, k, delta);
            double low_lo, low_hi, high_lo, high_hi;
            g.expected_bounds(low_lo, low_hi, high_lo, high_hi, delta, k);
            for (int i = 0; i < 2000 && ok; ++i) {
                const double zl = g.center - g.half_width - 3.0 * unit(rng);
                const double vl = g.value(act, zl);
                if (vl < low_lo || vl > low_hi) {
                    ok = false;
                    detail = "low region, gadget k=" + std::to_string(k);
                }
                const double zh = g.center + g.half_width + 3.0 * unit(rng);
                const double vh = g.value(act, zh);
                if (vh < high_lo || vh > high_hi) {
                    ok = false;
                    detail = "high region, gadget k=" + std::to_string(k);
                }
            }
        }
    }
    record(out, "gadget-envelopes", ok, detail);
}

void check_gates(Runner& out) {
    const ActivationProfile sigmoid = activation_by_name("sigmoid");
    const double theta = 0.05;
    const Calibration cal = Calibration::make(theta, find_limit_bound(sigmoid, theta), 0.25);
    GraphBuilder b(2);
    const int act = b.add_activation(sigmoid, true);
    std::int32_t x = b.add_input(1), y = b.add_input(2);
    std::int32_t nx = boolean_gate(b, GateKind::Not, x, -1, act, nullptr);
    std::int32_t land = boolean_gate(b, GateKind::And, x, y, act, &cal);
    std::int32_t lor = boolean_gate(b, GateKind::Or, x, y, act, &cal);
    b.set_outputs({nx, land, lor});
    const ExprGraph g = b.finish();
    const std::vector<double> at11 = g.eval(std::vector<double>{1.0, 1.0});
    const std::vector<double> at00 = g.eval(std::vector<double>{0.0, 0.0});
    const bool ok = at11[0] == 0.0 && at11[1] > 0.95 && at00[2] < 0.05 && at00[1] < 0.05 &&
                    at11[2] > 0.95 && at00[0] == 1.0;
    record(out, "boolean-gates", ok);
}

void check_grid_counts(Runner& out) {
    const Grid g1 = Grid::from_parts({0.0}, {5}, 0.1);
    const Grid g2 = Grid::from_parts({0.0, 0.0}, {3, 3}, 0.1);
    const bool ok = g1.box_count() == 15 && g2.box_count() == 36;
    record(out, "grid-box-counts", ok,
           std::to_string(g1.box_count()) + "/" + std::to_string(g2.box_count()));
}

void check_slice_identity(Runner& out, unsigned seed) {
    std::mt19937_64 rng(seed);
    const TargetFunction tf = target_sin2x();
    const double tau = 0.4;
    const int kay = 5; // floor((max f = 2) / tau)
    bool ok = true;
    for (int i = 0; i < 1000 && ok; ++i) {
        std::vector<double> x = random_point(rng, tf.domain);
        double sum = 0.0;
        for (int s = 0; s <= kay; ++s) sum += slice_value(tf, s, x, tau);
        if (std::fabs(sum - tf.oracle(x)) > 1e-9) ok = false;
    }
    record(out, "slice-sum-identity", ok);
}

} // namespace

std::vector<CheckResult> run_all(unsigned seed) {
    Runner out;
    check_activation_registry(out, seed);
    check_relu_closed_form(out);
    check_worked_example(out);
    check_soundness(out, seed + 1);
    check_indicators(out, seed + 2);
    check_gadgets(out, seed + 3);
    check_gates(out);
    check_grid_counts(out);
    check_slice_identity(out, seed + 4);
    return out;
}

} // namespace iua::selfcheck
