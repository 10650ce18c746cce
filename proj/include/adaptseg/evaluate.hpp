#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <thread>
#include <vector>

#include "adaptseg/method.hpp"
#include "adaptseg/prefix_moments.hpp"
#include "adaptseg/series.hpp"

namespace adaptseg {

namespace detail {

// Runs fn(i) for i in [begin, end) on up to `threads` workers, block
// partitioned. fn must only touch state owned by index i.
template <typename Fn>
void parallel_for(std::size_t begin, std::size_t end, unsigned threads, Fn&& fn) {
    const std::size_t count = end - begin;
    if (threads <= 1 || count <= 1) {
        for (std::size_t i = begin; i < end; ++i) fn(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(
        std::min<std::size_t>(threads, count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t lo = begin + count * w / workers;
        const std::size_t hi = begin + count * (w + 1) / workers;
        pool.emplace_back([lo, hi, &fn] {
            for (std::size_t i = lo; i < hi; ++i) fn(i);
        });
    }
    for (std::thread& t : pool) t.join();
}

inline double l2_norm_of_difference(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        s += d * d;
    }
    return std::sqrt(s);
}

}  // namespace detail

/// Leave-one-out cross-validation report: per interior point, the absolute
/// prediction error of the re-segmented model at the removed point.
struct LooReport {
    Method method = Method::TopDownAdaptive;
    int budget = 0;
    std::vector<double> abs_errors;  // index i-1 holds the error at point i
    double rms = 0.0;
};

/// For each interior point: drop it, rebuild the prefix moments on the n-1
/// remaining points, re-run the segmenter at the same budget, and evaluate
/// the polynomial of the interval whose x-range covers the removed x.
/// The first and last points are never removed. Refits are independent and
/// fan out over `threads`; the aggregation order is fixed by point index.
inline LooReport leave_one_out(const TimeSeries& ts, Method method, int budget, int max_degree,
                               unsigned threads = 1) {
    const std::size_t n = ts.size();
    if (n < 3) {
        throw std::invalid_argument("leave-one-out needs at least 3 points");
    }
    LooReport report;
    report.method = method;
    report.budget = budget;
    report.abs_errors.assign(n - 2, 0.0);

    detail::parallel_for(1, n - 1, threads, [&](std::size_t i) {
        const TimeSeries reduced = ts.without_point(i);
        PrefixMoments m(reduced, max_degree);
        const Segmentation seg = run_method(m, method, budget);

        const double xi = ts.x(i);
        const Segment* owner = &seg.segments().back();
        for (const Segment& s : seg.segments()) {
            if (s.end == reduced.size() || xi < reduced.x(s.end)) {
                owner = &s;
                break;
            }
        }
        report.abs_errors[i - 1] = std::abs(owner->evaluate(xi) - ts.y(i));
    });

    double sum_sq = 0.0;
    for (double e : report.abs_errors) sum_sq += e * e;
    report.rms = std::sqrt(sum_sq / static_cast<double>(n - 2));
    return report;
}

/// Two-sided bound on the distance between two series derived from their
/// segmentations alone: || s(a) - s(b) || -/+ (|| s(a) - a || + || s(b) - b ||),
/// the lower side clamped at 0. `actual` is || a - b || for checking the
/// bracket. All norms are pointwise l2 over the model evaluations.
struct DistanceBound {
    double lower = 0.0;
    double upper = 0.0;
    double actual = 0.0;
};

inline DistanceBound distance_bound(const TimeSeries& a, const TimeSeries& b,
                                    const Segmentation& seg_a, const Segmentation& seg_b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("series must have the same length");
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a.x(i) != b.x(i)) {
            throw std::invalid_argument("series must share the same x grid");
        }
    }
    const std::vector<double> ma = seg_a.model_values(a);
    const std::vector<double> mb = seg_b.model_values(b);

    std::vector<double> ya(a.size()), yb(b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        ya[i] = a.y(i);
        yb[i] = b.y(i);
    }
    const double model_dist = detail::l2_norm_of_difference(ma, mb);
    const double err_a = detail::l2_norm_of_difference(ma, ya);
    const double err_b = detail::l2_norm_of_difference(mb, yb);

    DistanceBound out;
    out.lower = std::max(0.0, model_dist - err_a - err_b);
    out.upper = model_dist + err_a + err_b;
    out.actual = detail::l2_norm_of_difference(ya, yb);
    return out;
}

/// Fit and cross-validation numbers for one method at one budget.
struct MethodResult {
    Method method = Method::TopDownAdaptive;
    double fit_error = 0.0;  // l2, i.e. sqrt(total sse)
    double total_sse = 0.0;
    int complexity = 0;
    std::optional<double> loo_rms;
};

/// Side-by-side comparison of segmenters on one series, with the
/// linear/adaptive ratio column used by the report tables. The ratios are
/// absent when the adaptive error is zero (flagged rather than infinite).
struct ComparisonReport {
    int budget = 0;
    int max_degree = 1;
    std::vector<MethodResult> methods;
    std::optional<double> fit_ratio_linear_adaptive;
    std::optional<double> loo_ratio_linear_adaptive;

    const MethodResult* find(Method m) const {
        for (const MethodResult& r : methods) {
            if (r.method == m) return &r;
        }
        return nullptr;
    }
};

struct CompareOptions {
    bool with_loo = false;
    std::vector<Method> methods{Method::Optimal, Method::TopDownAdaptive, Method::TopDownLinear,
                                Method::TopDownConstant};
    unsigned threads = 1;
};

inline ComparisonReport compare_methods(const TimeSeries& ts, int budget, int max_degree,
                                        const CompareOptions& options = {}) {
    if (budget < 2) {
        throw std::invalid_argument("comparison needs a budget of at least 2");
    }
    ComparisonReport report;
    report.budget = budget;
    report.max_degree = max_degree;

    PrefixMoments m(ts, max_degree);
    for (Method method : options.methods) {
        const Segmentation seg = run_method(m, method, budget);
        MethodResult r;
        r.method = method;
        r.total_sse = seg.total_sse();
        r.fit_error = seg.l2_error();
        r.complexity = seg.total_complexity();
        if (options.with_loo) {
            r.loo_rms = leave_one_out(ts, method, budget, max_degree, options.threads).rms;
        }
        report.methods.push_back(std::move(r));
    }

    const MethodResult* linear = report.find(Method::TopDownLinear);
    const MethodResult* adaptive = report.find(Method::TopDownAdaptive);
    if (linear && adaptive) {
        if (adaptive->fit_error > 0.0) {
            report.fit_ratio_linear_adaptive = linear->fit_error / adaptive->fit_error;
        }
        if (linear->loo_rms && adaptive->loo_rms && *adaptive->loo_rms > 0.0) {
            report.loo_ratio_linear_adaptive = *linear->loo_rms / *adaptive->loo_rms;
        }
    }
    return report;
}

/// Per-method means over repeated trials at one budget, mirroring the
/// aggregate rows of the experiment tables. Ratio columns come in both
/// flavours: ratio of the means and mean of the per-trial ratios.
struct ExperimentSummary {
    int budget = 0;
    std::size_t trials = 0;
    std::vector<Method> methods;
    std::vector<double> mean_fit;                  // parallel to methods
    std::vector<std::optional<double>> mean_loo;   // parallel to methods
    std::optional<double> fit_ratio_of_means;      // linear / adaptive
    std::optional<double> loo_ratio_of_means;
    std::optional<double> mean_fit_ratio;          // mean of per-trial ratios
    std::optional<double> mean_loo_ratio;
};

inline ExperimentSummary summarize_trials(int budget,
                                          std::span<const ComparisonReport> trials) {
    if (trials.empty()) {
        throw std::invalid_argument("cannot summarize zero trials");
    }
    ExperimentSummary s;
    s.budget = budget;
    s.trials = trials.size();
    for (const MethodResult& r : trials.front().methods) s.methods.push_back(r.method);

    for (std::size_t mi = 0; mi < s.methods.size(); ++mi) {
        double fit_sum = 0.0, loo_sum = 0.0;
        bool loo_all = true;
        for (const ComparisonReport& t : trials) {
            const MethodResult* r = t.find(s.methods[mi]);
            if (!r) throw std::invalid_argument("trials ran different method sets");
            fit_sum += r->fit_error;
            if (r->loo_rms) {
                loo_sum += *r->loo_rms;
            } else {
                loo_all = false;
            }
        }
        s.mean_fit.push_back(fit_sum / static_cast<double>(trials.size()));
        s.mean_loo.push_back(loo_all ? std::optional<double>(loo_sum /
                                                             static_cast<double>(trials.size()))
                                     : std::nullopt);
    }

    auto index_of = [&](Method m) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < s.methods.size(); ++i) {
            if (s.methods[i] == m) return i;
        }
        return std::nullopt;
    };
    const auto li = index_of(Method::TopDownLinear);
    const auto ai = index_of(Method::TopDownAdaptive);
    if (li && ai) {
        if (s.mean_fit[*ai] > 0.0) {
            s.fit_ratio_of_means = s.mean_fit[*li] / s.mean_fit[*ai];
        }
        if (s.mean_loo[*li] && s.mean_loo[*ai] && *s.mean_loo[*ai] > 0.0) {
            s.loo_ratio_of_means = *s.mean_loo[*li] / *s.mean_loo[*ai];
        }
        double fr_sum = 0.0, lr_sum = 0.0;
        std::size_t fr_n = 0, lr_n = 0;
        for (const ComparisonReport& t : trials) {
            if (t.fit_ratio_linear_adaptive) {
                fr_sum += *t.fit_ratio_linear_adaptive;
                ++fr_n;
            }
            if (t.loo_ratio_linear_adaptive) {
                lr_sum += *t.loo_ratio_linear_adaptive;
                ++lr_n;
            }
        }
        if (fr_n == trials.size()) s.mean_fit_ratio = fr_sum / static_cast<double>(fr_n);
        if (lr_n == trials.size()) s.mean_loo_ratio = lr_sum / static_cast<double>(lr_n);
    }
    return s;
}

}  // namespace adaptseg
