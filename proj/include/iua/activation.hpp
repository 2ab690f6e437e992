#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

namespace iua {

using ScalarFn = std::function<double(double)>;

/// An activation function together with its declared analytic properties and,
/// once squashed, a normalized variant with limits exactly (0, 1).
///
/// `raw` is the activation as commonly defined (sigmoid, ReLU, ...). When the
/// raw function is bounded, `lim_lo`/`lim_hi` are its left/right limits.
/// `normalized` is monotone, maps into [0, 1], and has limits (0, 1); it is
/// what every network construction in this library applies at Act nodes.
struct ActivationProfile {
    std::string name;
    ScalarFn raw;
    bool monotone = true;
    bool bounded = false;    // raw has finite limits on both sides
    double lim_lo = 0.0;     // raw left limit (bounded) or left limit of raw (unbounded-above case)
    double lim_hi = 0.0;     // raw right limit when bounded
    ScalarFn normalized;     // empty until make_squashable has run

    bool is_squashed() const { return static_cast<bool>(normalized); }
};

/// Produces a profile whose `normalized` function has limits exactly (0, 1):
/// affine renormalization when the raw limits are finite, otherwise the
/// t(1 - t(-x)) composition followed by the affine map. Monotonicity is
/// validated by sampling; violations raise NotSquashableError, equal limits
/// raise DegenerateLimitsError.
ActivationProfile make_squashable(const ActivationProfile& act);

/// Registered activations: sigmoid, tanh, softsign, relu, elu, softplus,
/// smoothrelu (a = 1). All returned profiles are already squashed.
const std::vector<std::string>& registered_activations();
bool is_registered_activation(const std::string& name);
ActivationProfile activation_by_name(const std::string& name);

} // namespace iua
