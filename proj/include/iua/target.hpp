#pragma once

#include "iua/interval.hpp"

#include <functional>
#include <span>
#include <string>
#include <vector>

namespace iua {

using VectorFn = std::function<double(std::span<const double>)>;

/// A concrete function to approximate: an oracle over a compact box domain
/// with a user-supplied l_inf Lipschitz constant. The Lipschitz constant is
/// trusted for certified bounds; `validate` cross-checks it by sampling.
struct TargetFunction {
    std::string name;
    VectorFn oracle;
    IntervalBox domain;
    double lipschitz = 0.0;

    int dim() const { return domain.dim(); }
    double operator()(std::span<const double> x) const { return oracle(x); }

    /// Samples the domain (seeded): oracle must be finite on 1e3 points and
    /// the declared L must dominate every observed difference quotient.
    /// Throws InconsistentLipschitzError / NumericOverflowError.
    void validate(unsigned seed = 1) const;
};

/// Built-in targets: sin2x = sin(2x)+1 on [0,5] (L=2); quadratic2d = x^2+y^2
/// on [0,1]^2 (L=4); constant(c) on a given domain (L=0).
TargetFunction target_sin2x();
TargetFunction target_quadratic2d();
TargetFunction target_constant(double value, IntervalBox domain);

/// 1-D piecewise-linear interpolant of CSV rows "x,y" (sorted by x), with a
/// declared Lipschitz constant; domain is [x_first, x_last].
TargetFunction target_from_csv(const std::string& csv_text, double lipschitz,
                               const std::string& name = "csv");

/// Resolves a named builtin; for "constant" supply value and domain,
/// for "csv" use target_from_csv instead.
TargetFunction target_by_name(const std::string& name);

} // namespace iua
