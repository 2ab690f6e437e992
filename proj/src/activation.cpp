#include "iua/activation.hpp"
#include "iua/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace iua {

namespace {

double sigmoid(double x) {
    if (x >= 0.0) {
        return 1.0 / (1.0 + std::exp(-x));
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

double softplus(double x) {
    if (std::isinf(x)) return x > 0 ? x : 0.0;
    if (x > 36.0) return x;           // log1p(exp(x)) == x to double precision
    return std::log1p(std::exp(x));
}

double elu(double x) {
    return x >= 0.0 ? x : std::expm1(x);
}

double smooth_relu1(double x) {
    if (x <= 0.0) return 0.0;
    if (std::isinf(x)) return x;
    return x - std::log1p(x);
}

double relu(double x) {
    return x >= 0.0 ? x : 0.0;
}

double softsign(double x) {
    if (std::isinf(x)) return x > 0 ? 1.0 : -1.0;
    return x / (1.0 + std::fabs(x));
}

ActivationProfile raw_profile(const std::string& name) {
    ActivationProfile p;
    p.name = name;
    p.monotone = true;
    if (name == "sigmoid") {
        p.raw = sigmoid;
        p.bounded = true;
        p.lim_lo = 0.0;
        p.lim_hi = 1.0;
    } else if (name == "tanh") {
        p.raw = [](double x) { return std::tanh(x); };
        p.bounded = true;
        p.lim_lo = -1.0;
        p.lim_hi = 1.0;
    } else if (name == "softsign") {
        p.raw = softsign;
        p.bounded = true;
        p.lim_lo = -1.0;
        p.lim_hi = 1.0;
    } else if (name == "relu") {
        p.raw = relu;
        p.bounded = false;
        p.lim_lo = 0.0;
    } else if (name == "elu") {
        p.raw = elu;
        p.bounded = false;
        p.lim_lo = -1.0;
    } else if (name == "softplus") {
        p.raw = softplus;
        p.bounded = false;
        p.lim_lo = 0.0;
    } else if (name == "smoothrelu") {
        p.raw = smooth_relu1;
        p.bounded = false;
        p.lim_lo = 0.0;
    } else {
        throw Error("unknown activation: " + name);
    }
    return p;
}

// Sampled monotonicity check over a wide range plus a fine sweep near 0,
// where the composed constructions have their transition.
void check_monotone_by_sampling(const ScalarFn& fn, const std::string& name) {
    auto probe = [&](double a, double b, int n) {
        double prev = fn(a);
        for (int i = 1; i <= n; ++i) {
            double x = a + (b - a) * static_cast<double>(i) / n;
            double v = fn(x);
            if (v < prev - 1e-9) {
                throw NotSquashableError("activation '" + name +
                                         "' is not monotone near x=" + std::to_string(x));
            }
            prev = std::max(prev, v);
        }
    };
    probe(-100.0, 100.0, 2000);
    probe(-4.0, 4.0, 2000);
}

} // namespace

ActivationProfile make_squashable(const ActivationProfile& act) {
    if (!act.raw) throw Error("activation '" + act.name + "' has no raw function");
    if (!act.monotone) {
        throw NotSquashableError("activation '" + act.name + "' declared non-monotone");
    }
    check_monotone_by_sampling(act.raw, act.name);

    ActivationProfile out = act;
    if (act.bounded) {
        const double a = act.lim_lo, b = act.lim_hi;
        if (!(a < b)) {
            throw DegenerateLimitsError("activation '" + act.name + "' has degenerate limits");
        }
        ScalarFn raw = act.raw;
        const double span = b - a;
        out.normalized = [raw, a, span](double x) {
            double v = (raw(x) - a) / span;
            return std::clamp(v, 0.0, 1.0);
        };
    } else {
        // t'(x) = t(1 - t(-x)) has limits (l, t(1 - l)) for raw left limit l.
        ScalarFn raw = act.raw;
        const double l = act.lim_lo;
        const double hi = raw(1.0 - l);
        if (!(l < hi)) {
            throw DegenerateLimitsError("activation '" + act.name +
                                        "' composition has degenerate limits");
        }
        const double span = hi - l;
        out.normalized = [raw, l, span](double x) {
            double v = (raw(1.0 - raw(-x)) - l) / span;
            return std::clamp(v, 0.0, 1.0);
        };
    }
    check_monotone_by_sampling(out.normalized, act.name + "~01");
    return out;
}

const std::vector<std::string>& registered_activations() {
    static const std::vector<std::string> names = {
        "sigmoid", "tanh", "softsign", "relu", "elu", "softplus", "smoothrelu",
    };
    return names;
}

bool is_registered_activation(const std::string& name) {
    const auto& names = registered_activations();
    return std::find(names.begin(), names.end(), name) != names.end();
}

ActivationProfile activation_by_name(const std::string& name) {
    return make_squashable(raw_profile(name));
}

} // namespace iua
