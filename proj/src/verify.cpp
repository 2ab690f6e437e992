#include "iua/verify.hpp"
#include "iua/errors.hpp"
#include "iua/parallel.hpp"

#include <algorithm>
#include <cmath>

namespace iua {

RangeEstimate range_oracle(const TargetFunction& tf, const IntervalBox& box,
                           int samples_per_axis) {
    const int m = box.dim();
    if (m != tf.dim()) throw DimensionError("range_oracle: dimension mismatch");
    if (samples_per_axis < 1) throw DomainError("samples_per_axis must be >= 1");
    for (int d = 0; d < m; ++d) {
        if (box.dims[d].lo < tf.domain.dims[d].lo - 1e-12 ||
            box.dims[d].hi > tf.domain.dims[d].hi + 1e-12) {
            throw DomainError("range_oracle: box outside the target domain");
        }
    }

    double h = 0.0;
    std::vector<int> counts(m, samples_per_axis);
    for (int d = 0; d < m; ++d) {
        if (box.dims[d].width() == 0.0) {
            counts[d] = 0;
        } else {
            h = std::max(h, box.dims[d].width() / samples_per_axis);
        }
    }

    std::vector<int> idx(m, 0);
    std::vector<double> x(m);
    RangeEstimate est;
    est.lo_emp = std::numeric_limits<double>::infinity();
    est.hi_emp = -std::numeric_limits<double>::infinity();
    while (true) {
        for (int d = 0; d < m; ++d) {
            const Interval& iv = box.dims[d];
            double t = counts[d] == 0 ? 0.0 : static_cast<double>(idx[d]) / counts[d];
            x[d] = std::clamp(iv.lo + t * iv.width(), tf.domain.dims[d].lo,
                              tf.domain.dims[d].hi);
        }
        const double v = tf.oracle(x);
        est.lo_emp = std::min(est.lo_emp, v);
        est.hi_emp = std::max(est.hi_emp, v);
        int d = 0;
        while (d < m && ++idx[d] > counts[d]) {
            idx[d] = 0;
            ++d;
        }
        if (d == m) break;
    }
    est.gap = tf.lipschitz * h;
    est.lo_cert = est.lo_emp - est.gap;
    est.hi_cert = est.hi_emp + est.gap;
    return est;
}

CheckReport check_interval_approx(const ExprGraph& net, const TargetFunction& tf, double delta,
                                  const std::vector<IntervalBox>& boxes,
                                  const CheckOptions& opts) {
    if (net.outputs().size() != 1) {
        throw ShapeError("check_interval_approx needs a single-output network");
    }
    if (!(delta > 0.0)) throw DomainError("delta must be positive");

    CheckReport report;
    report.min_inner_slack = std::numeric_limits<double>::infinity();
    report.max_outer_slack = -std::numeric_limits<double>::infinity();
    report.rows.resize(boxes.size());
    parallel_for(
        boxes.size(),
        [&](std::size_t idx) {
            const IntervalBox& box = boxes[idx];
            BoxCheck c;
            c.box = box;
            c.net = abstract_eval(net, box)[0];

            double side = 0.0;
            for (const Interval& iv : box.dims) side = std::max(side, iv.width());
            int samples = opts.min_samples;
            if (tf.lipschitz > 0.0 && side > 0.0) {
                samples = std::max(
                    samples, static_cast<int>(std::ceil(tf.lipschitz * side / opts.oracle_gap)));
            }
            RangeEstimate est = range_oracle(tf, box, samples);
            c.lo_cert = est.lo_cert;
            c.hi_cert = est.hi_cert;

            // Inner: [l + delta, u - delta] ⊆ N#(B), vacuous when empty.
            const double inner_lo = c.lo_cert + delta;
            const double inner_hi = c.hi_cert - delta;
            if (inner_lo > inner_hi) {
                c.inner_vacuous = true;
                c.inner_slack = std::numeric_limits<double>::infinity();
            } else {
                c.inner_slack = std::min(inner_lo - c.net.lo, c.net.hi - inner_hi);
                c.inner_ok = c.inner_slack >= 0.0;
            }
            // Outer: N#(B) ⊆ [l - delta, u + delta].
            c.outer_slack =
                std::min(c.net.lo - (c.lo_cert - delta), (c.hi_cert + delta) - c.net.hi);
            c.outer_ok = c.outer_slack >= 0.0;
            report.rows[idx] = std::move(c);
        },
        opts.threads);

    report.boxes_checked = static_cast<int>(report.rows.size());
    for (const BoxCheck& c : report.rows) {
        if (!c.inner_vacuous) {
            report.min_inner_slack = std::min(report.min_inner_slack, c.inner_slack);
        }
        report.max_outer_slack = std::max(report.max_outer_slack, c.outer_slack);
        if (!c.ok()) report.failures.push_back(c);
    }
    return report;
}

std::vector<IntervalBox> sample_boxes(const IntervalBox& domain, int count, unsigned seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<IntervalBox> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        std::vector<Interval> dims(domain.dims.size());
        const bool degenerate = (i % 10) == 9;
        for (std::size_t d = 0; d < dims.size(); ++d) {
            const Interval& iv = domain.dims[d];
            double a = iv.lo + unit(rng) * iv.width();
            double b = degenerate ? a : iv.lo + unit(rng) * iv.width();
            dims[d] = {std::min(a, b), std::max(a, b)};
        }
        out.emplace_back(std::move(dims));
    }
    return out;
}

RobustResult certify_robust(const ExprGraph& net, std::span<const double> x, double eps) {
    if (net.outputs().size() != 1) {
        throw ShapeError("certify_robust needs a single-output network");
    }
    const Interval out = abstract_eval(net, eps_ball(x, eps))[0];
    if (out.hi < 0.5) return RobustResult::ProvenLow;
    if (out.lo >= 0.5) return RobustResult::ProvenHigh;
    return RobustResult::Unknown;
}

NaryCertificate certify_robust_nary(const ExprGraph& net, std::span<const double> x,
                                    double eps) {
    const std::vector<Interval> outs = abstract_eval(net, eps_ball(x, eps));
    if (outs.size() < 2) throw ShapeError("n-ary certification needs >= 2 outputs");
    NaryCertificate cert;
    for (std::size_t i = 0; i < outs.size(); ++i) {
        bool dominates = true;
        for (std::size_t j = 0; j < outs.size() && dominates; ++j) {
            if (j != i && !(outs[i].lo > outs[j].hi)) dominates = false;
        }
        if (dominates) {
            cert.proven = true;
            cert.class_index = static_cast<int>(i) + 1;
            return cert;
        }
    }
    return cert;
}

} // namespace iua
