// Test-only reference implementations, deliberately independent of the
// library's prefix-moment fast paths: fits re-derive everything from the raw
// points in long double, residuals are summed directly, and the optimal
// segmentation is found by explicit enumeration instead of recurrences.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "adaptseg/series.hpp"

namespace oracle {

struct NaiveFit {
    std::vector<double> coefficients;  // requested degree + 1 entries
    double sse = 0.0;
};

// Least-squares fit over points [p, q) by assembling the normal equations
// directly from the raw points and summing the residuals term by term.
inline NaiveFit naive_polyfit(const adaptseg::TimeSeries& ts, std::size_t p, std::size_t q,
                              int degree) {
    const int effective = static_cast<int>(
        std::min<std::size_t>(static_cast<std::size_t>(degree), q - p - 1));
    const int m = effective + 1;

    long double a[3][4] = {};
    for (std::size_t i = p; i < q; ++i) {
        const long double x = ts.x(i);
        const long double y = ts.y(i);
        long double xr = 1.0L;
        for (int r = 0; r < m; ++r) {
            long double xc = xr;
            for (int c = 0; c < m; ++c) {
                a[r][c] += xc;
                xc *= x;
            }
            a[r][m] += xr * y;
            xr *= x;
        }
    }
    for (int col = 0; col < m; ++col) {
        int pivot = col;
        for (int r = col + 1; r < m; ++r) {
            if (std::abs(static_cast<double>(a[r][col])) >
                std::abs(static_cast<double>(a[pivot][col]))) {
                pivot = r;
            }
        }
        for (int c = col; c <= m; ++c) std::swap(a[pivot][c], a[col][c]);
        for (int r = col + 1; r < m; ++r) {
            const long double f = a[r][col] / a[col][col];
            for (int c = col; c <= m; ++c) a[r][c] -= f * a[col][c];
        }
    }
    long double coeffs[3] = {};
    for (int r = m - 1; r >= 0; --r) {
        long double v = a[r][m];
        for (int c = r + 1; c < m; ++c) v -= a[r][c] * coeffs[c];
        coeffs[r] = v / a[r][r];
    }

    NaiveFit out;
    out.coefficients.assign(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int j = 0; j < m; ++j) out.coefficients[static_cast<std::size_t>(j)] =
        static_cast<double>(coeffs[j]);

    long double sse = 0.0L;
    for (std::size_t i = p; i < q; ++i) {
        long double v = 0.0L;
        for (int j = m - 1; j >= 0; --j) v = v * ts.x(i) + coeffs[j];
        const long double r = v - ts.y(i);
        sse += r * r;
    }
    out.sse = static_cast<double>(sse);
    return out;
}

inline double naive_fit_error(const adaptseg::TimeSeries& ts, std::size_t p, std::size_t q,
                              int degree) {
    if (q - p <= static_cast<std::size_t>(degree) + 1) return 0.0;
    return naive_polyfit(ts, p, q, degree).sse;
}

// Minimal total squared error over every segmentation of [0, n) combined
// with every per-segment degree assignment whose total regressor count stays
// within the budget. Breakpoint sets are enumerated as bitmasks, so this is
// only usable for small n.
inline double enumerate_optimal_sse(const adaptseg::TimeSeries& ts, int budget, int max_degree) {
    const std::size_t n = ts.size();
    double best = std::numeric_limits<double>::max();

    // memoized per-range fit errors
    std::vector<double> cache((n + 1) * (n + 1) * static_cast<std::size_t>(max_degree + 1), -1.0);
    auto segment_error = [&](std::size_t p, std::size_t q, int d) {
        double& slot = cache[(p * (n + 1) + q) * static_cast<std::size_t>(max_degree + 1) +
                             static_cast<std::size_t>(d)];
        if (slot < 0.0) slot = naive_fit_error(ts, p, q, d);
        return slot;
    };

    std::vector<std::size_t> bounds;
    for (std::size_t mask = 0; mask < (std::size_t{1} << (n - 1)); ++mask) {
        bounds.clear();
        bounds.push_back(0);
        for (std::size_t b = 0; b + 1 < n; ++b) {
            if (mask & (std::size_t{1} << b)) bounds.push_back(b + 1);
        }
        bounds.push_back(n);
        const std::size_t segments = bounds.size() - 1;
        if (static_cast<int>(segments) > budget) continue;  // each costs >= 1

        // degree assignment per segment, odometer-style
        std::vector<int> degrees(segments, 0);
        while (true) {
            int complexity = 0;
            for (int d : degrees) complexity += d + 1;
            if (complexity <= budget) {
                double total = 0.0;
                for (std::size_t s = 0; s < segments; ++s) {
                    total += segment_error(bounds[s], bounds[s + 1], degrees[s]);
                }
                best = std::min(best, total);
            }
            std::size_t pos = 0;
            while (pos < segments && degrees[pos] == max_degree) {
                degrees[pos] = 0;
                ++pos;
            }
            if (pos == segments) break;
            ++degrees[pos];
        }
    }
    return best;
}

inline double l2_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

}  // namespace oracle
