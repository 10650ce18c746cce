#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

#include "adaptseg/polyfit.hpp"
#include "adaptseg/prefix_moments.hpp"
#include "adaptseg/series.hpp"

namespace adaptseg {

/// Cost used for unreachable states while scanning candidates. Kept finite so
/// arithmetic stays total; comparisons treat it as absorbing (candidates whose
/// prefix already carries it are skipped).
inline constexpr double kInfiniteCost = std::numeric_limits<double>::max();

/// Dynamic-programming tables for optimal adaptive segmentation.
/// Row r holds the optimum for a regressor budget of r + 1:
///   min_sse(r, q)  = minimal total squared error over [0, q) spending at
///                    most r + 1 regressors,
///   last_degree / last_split = the (degree, start) choice of the final
///                    interval, for backtracking.
struct CostTables {
    std::size_t n = 0;
    int budget = 0;

    std::vector<double> min_sse;
    std::vector<int> last_degree;
    std::vector<std::size_t> last_split;

    double cost(int row, std::size_t q) const {
        return min_sse[static_cast<std::size_t>(row) * (n + 1) + q];
    }
    int degree_at(int row, std::size_t q) const {
        return last_degree[static_cast<std::size_t>(row) * (n + 1) + q];
    }
    std::size_t split_at(int row, std::size_t q) const {
        return last_split[static_cast<std::size_t>(row) * (n + 1) + q];
    }
};

/// Fills the cost tables row by row. The recurrence extends an optimal prefix
/// by one final interval [p, q) of degree d (cost d + 1):
///
///   cost(r, q) = min over d in [0, D], p in [0, q) of
///                cost(r - 1 - d, p) + fit_error(p, q, d)
///
/// where negative rows are infinite except for the empty prefix (row -1,
/// p = 0) which costs 0. Leftover budget is absorbed at the left end since
/// cost(r, 0) = 0 for every r, giving "complexity <= budget" semantics.
/// Ties prefer the smallest degree, then the smallest split point.
/// O(n^2 * D * budget) time, O(n * budget) space.
inline CostTables compute_cost_tables(const PrefixMoments& m, int budget) {
    if (budget < 1) {
        throw std::invalid_argument("budget must be >= 1");
    }
    if (m.size() == 0) {
        throw std::invalid_argument("cannot segment an empty series");
    }
    const std::size_t n = m.size();
    const std::size_t stride = n + 1;
    const int max_deg = m.max_degree();

    CostTables t;
    t.n = n;
    t.budget = budget;
    t.min_sse.assign(static_cast<std::size_t>(budget) * stride, kInfiniteCost);
    t.last_degree.assign(static_cast<std::size_t>(budget) * stride, -1);
    t.last_split.assign(static_cast<std::size_t>(budget) * stride, 0);

    // Hoisted table pointers for the degree <= 1 fast path.
    const double* t00 = m.prefix_table(0, 0).data();
    const double* t10 = max_deg >= 1 ? m.prefix_table(1, 0).data() : nullptr;
    const double* t20 = max_deg >= 1 ? m.prefix_table(2, 0).data() : nullptr;
    const double* t01 = m.prefix_table(0, 1).data();
    const double* t11 = max_deg >= 1 ? m.prefix_table(1, 1).data() : nullptr;
    const double* t02 = m.prefix_table(0, 2).data();

    for (int r = 0; r < budget; ++r) {
        double* row_cost = t.min_sse.data() + static_cast<std::size_t>(r) * stride;
        int* row_deg = t.last_degree.data() + static_cast<std::size_t>(r) * stride;
        std::size_t* row_split = t.last_split.data() + static_cast<std::size_t>(r) * stride;

        row_cost[0] = 0.0;
        for (std::size_t q = 1; q <= n; ++q) {
            double best = kInfiniteCost;
            int best_d = -1;
            std::size_t best_p = 0;

            const int d_cap = std::min(r, max_deg);
            for (int d = 0; d <= d_cap; ++d) {
                const int prev_row = r - 1 - d;
                double cand = kInfiniteCost;
                std::size_t cand_p = 0;
                if (prev_row < 0) {
                    // Only the empty prefix is allowed below row 0.
                    cand = fit_error(m, 0, q, d);
                } else {
                    const double* prev_cost =
                        t.min_sse.data() + static_cast<std::size_t>(prev_row) * stride;
                    if (d == 0) {
                        const double c00 = t00[q], c01 = t01[q], c02 = t02[q];
                        for (std::size_t p = 0; p < q; ++p) {
                            const double prefix = prev_cost[p];
                            if (prefix >= kInfiniteCost) continue;
                            const double s00 = c00 - t00[p];
                            double e = 0.0;
                            if (q - p > 1) {
                                e = detail::error_d0(s00, c01 - t01[p], c02 - t02[p]);
                            }
                            if (prefix + e < cand) {
                                cand = prefix + e;
                                cand_p = p;
                            }
                        }
                    } else if (d == 1) {
                        const double c00 = t00[q], c10 = t10[q], c20 = t20[q];
                        const double c01 = t01[q], c11 = t11[q], c02 = t02[q];
                        for (std::size_t p = 0; p < q; ++p) {
                            const double prefix = prev_cost[p];
                            if (prefix >= kInfiniteCost) continue;
                            double e = 0.0;
                            if (q - p > 2) {
                                e = detail::error_d1(c00 - t00[p], c10 - t10[p], c20 - t20[p],
                                                     c01 - t01[p], c11 - t11[p], c02 - t02[p]);
                            }
                            if (prefix + e < cand) {
                                cand = prefix + e;
                                cand_p = p;
                            }
                        }
                    } else {
                        for (std::size_t p = 0; p < q; ++p) {
                            const double prefix = prev_cost[p];
                            if (prefix >= kInfiniteCost) continue;
                            const double e = fit_error(m, p, q, d);
                            if (prefix + e < cand) {
                                cand = prefix + e;
                                cand_p = p;
                            }
                        }
                    }
                }
                if (cand < best) {
                    best = cand;
                    best_d = d;
                    best_p = cand_p;
                }
            }
            row_cost[q] = best;
            row_deg[q] = best_d;
            row_split[q] = best_p;
        }
    }
    return t;
}

/// Reads the optimal segmentation back out of the tables.
inline Segmentation backtrack_segmentation(const CostTables& t, const PrefixMoments& m) {
    std::vector<IntervalSpec> parts;
    std::size_t q = t.n;
    int r = t.budget - 1;
    while (q > 0) {
        const int d = t.degree_at(r, q);
        const std::size_t p = t.split_at(r, q);
        parts.push_back({p, q, d});
        r -= d + 1;
        q = p;
    }
    std::reverse(parts.begin(), parts.end());
    return fit_segmentation(m, parts);
}

/// Minimal-error segmentation of the whole series under a regressor budget,
/// with per-interval degrees up to the moment buffer's max_degree.
inline Segmentation optimal_segmentation(const PrefixMoments& m, int budget) {
    return backtrack_segmentation(compute_cost_tables(m, budget), m);
}

inline Segmentation optimal_segmentation(const TimeSeries& ts, int budget, int max_degree) {
    PrefixMoments m(ts, max_degree);
    return optimal_segmentation(m, budget);
}

/// Entry k-1 is the minimal total squared error achievable with a budget of
/// k regressors; non-increasing.
inline std::vector<double> optimal_cost_curve(const PrefixMoments& m, int max_budget) {
    CostTables t = compute_cost_tables(m, max_budget);
    std::vector<double> curve(static_cast<std::size_t>(max_budget));
    for (int r = 0; r < max_budget; ++r) {
        curve[static_cast<std::size_t>(r)] = t.cost(r, t.n);
    }
    return curve;
}

inline std::vector<double> optimal_cost_curve(const TimeSeries& ts, int max_budget,
                                              int max_degree) {
    PrefixMoments m(ts, max_degree);
    return optimal_cost_curve(m, max_budget);
}

}  // namespace adaptseg
