#pragma once

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "adaptseg/polyfit.hpp"
#include "adaptseg/prefix_moments.hpp"
#include "adaptseg/series.hpp"

namespace adaptseg {

/// Intervals with fit error at or below this are never split further;
/// leftover budget stays unspent.
inline constexpr double kSplitSseEpsilon = 1e-12;

namespace detail {

// Candidate interval during greedy refinement.
struct Interval {
    std::size_t start;
    std::size_t end;
    int degree;
    double sse;
};

// Greedy top-down refinement at a fixed degree: repeatedly split the
// interval with the largest fit error (earliest wins ties) at the position
// minimizing the summed error of the two halves (smallest wins ties).
// Every new interval charges degree + 1 regressors against the budget.
inline std::vector<Interval> top_down_intervals(const PrefixMoments& m, int degree, int budget) {
    if (m.size() == 0) {
        throw std::invalid_argument("cannot segment an empty series");
    }
    if (degree > m.max_degree()) {
        throw std::invalid_argument("degree exceeds the moment buffer's max_degree");
    }
    const int cost = degree + 1;
    if (budget < cost) {
        throw std::invalid_argument("budget must cover at least one interval (degree + 1)");
    }
    const std::size_t n = m.size();

    std::vector<Interval> intervals;
    intervals.push_back({0, n, degree, fit_error(m, 0, n, degree)});
    int spent = cost;

    while (spent + cost <= budget) {
        std::size_t worst = 0;
        for (std::size_t i = 1; i < intervals.size(); ++i) {
            if (intervals[i].sse > intervals[worst].sse) worst = i;
        }
        if (intervals[worst].sse <= kSplitSseEpsilon) break;

        const std::size_t i = intervals[worst].start;
        const std::size_t j = intervals[worst].end;
        double best = kInfiniteCost;
        std::size_t best_l = 0;
        for (std::size_t l = i + 1; l < j; ++l) {
            const double e = fit_error(m, i, l, degree) + fit_error(m, l, j, degree);
            if (e < best) {
                best = e;
                best_l = l;
            }
        }

        intervals[worst] = {i, best_l, degree, fit_error(m, i, best_l, degree)};
        intervals.insert(intervals.begin() + static_cast<std::ptrdiff_t>(worst) + 1,
                         {best_l, j, degree, fit_error(m, best_l, j, degree)});
        spent += cost;
    }
    return intervals;
}

inline Segmentation to_segmentation(const PrefixMoments& m,
                                    const std::vector<Interval>& intervals) {
    std::vector<IntervalSpec> parts;
    parts.reserve(intervals.size());
    for (const Interval& iv : intervals) {
        parts.push_back({iv.start, iv.end, iv.degree});
    }
    return fit_segmentation(m, parts);
}

}  // namespace detail

/// Top-down heuristic at a fixed per-interval degree (0 = piecewise
/// constant, 1 = piecewise linear). O(budget * n) given the moments.
inline Segmentation top_down_fixed(const PrefixMoments& m, int degree, int budget) {
    if (degree != 0 && degree != 1) {
        throw std::invalid_argument("fixed top-down supports degree 0 or 1");
    }
    return detail::to_segmentation(m, detail::top_down_intervals(m, degree, budget));
}

inline Segmentation top_down_fixed(const TimeSeries& ts, int degree, int budget) {
    PrefixMoments m(ts, std::max(degree, 1));
    return top_down_fixed(m, degree, budget);
}

/// Adaptive top-down heuristic. Phase 1 runs the fixed top-down at the
/// moment buffer's max_degree; phase 2 visits each resulting interval once
/// and re-splits it into a lower-degree pair of the same total cost whenever
/// that strictly reduces the interval's fit error (so the overall error
/// never increases). With max_degree 1 this turns linear intervals into
/// pairs of constants. Ties prefer the smaller left degree, then the
/// smaller split point.
inline Segmentation top_down_adaptive(const PrefixMoments& m, int budget) {
    const int top_degree = m.max_degree();
    std::vector<detail::Interval> intervals =
        detail::top_down_intervals(m, top_degree, budget);

    std::vector<detail::Interval> refined;
    refined.reserve(intervals.size() * 2);
    for (const detail::Interval& iv : intervals) {
        const std::size_t i = iv.start;
        const std::size_t j = iv.end;
        const int q = iv.degree;

        double best = kInfiniteCost;
        int best_d = 0;
        std::size_t best_l = 0;
        if (j - i >= 2) {
            for (int d = 0; d <= q - 1; ++d) {
                const int right_degree = q - 1 - d;  // cost-conserving pair
                for (std::size_t l = i + 1; l < j; ++l) {
                    const double e =
                        fit_error(m, i, l, d) + fit_error(m, l, j, right_degree);
                    if (e < best) {
                        best = e;
                        best_d = d;
                        best_l = l;
                    }
                }
            }
        }
        if (best < iv.sse) {
            refined.push_back({i, best_l, best_d, fit_error(m, i, best_l, best_d)});
            refined.push_back({best_l, j, q - 1 - best_d, fit_error(m, best_l, j, q - 1 - best_d)});
        } else {
            refined.push_back(iv);
        }
    }
    return detail::to_segmentation(m, refined);
}

inline Segmentation top_down_adaptive(const TimeSeries& ts, int budget, int max_degree) {
    PrefixMoments m(ts, max_degree);
    return top_down_adaptive(m, budget);
}

}  // namespace adaptseg
