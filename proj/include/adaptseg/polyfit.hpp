#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "adaptseg/prefix_moments.hpp"
#include "adaptseg/series.hpp"

namespace adaptseg {

/// Least-squares polynomial over an index range, together with its squared
/// l2 fit error. `coefficients` always holds degree + 1 entries; when the
/// range has fewer points than that, the trailing entries are zero.
struct FitResult {
    int degree = 0;
    std::vector<double> coefficients;
    double sse = 0.0;
};

namespace detail {

// Squared fit error of a degree-0 fit from the raw range sums, via the
// expansion  a0^2 s00 - 2 a0 s01 + s02, clamped at 0.
inline double error_d0(double s00, double s01, double s02) {
    const double a0 = s01 / s00;
    const double e = a0 * a0 * s00 - 2.0 * a0 * s01 + s02;
    return e > 0.0 ? e : 0.0;
}

inline void solve_d1(double s00, double s10, double s20, double s01, double s11, double& a0,
                     double& a1) {
    const double det = s00 * s20 - s10 * s10;
    if (!(det > 0.0) || !std::isfinite(det)) {
        // The determinant (= count^2 * var(x)) is positive in exact
        // arithmetic, but for a short range at large |x| it can cancel
        // below the prefix-sum noise floor. The slope is indeterminate at
        // that point; fall back to the constant fit.
        a1 = 0.0;
        a0 = s01 / s00;
        return;
    }
    a1 = (s00 * s11 - s10 * s01) / det;
    a0 = (s01 - a1 * s10) / s00;
}

inline double error_d1(double s00, double s10, double s20, double s01, double s11, double s02) {
    double a0 = 0.0, a1 = 0.0;
    solve_d1(s00, s10, s20, s01, s11, a0, a1);
    const double e = a0 * a0 * s00 + 2.0 * a0 * a1 * s10 + a1 * a1 * s20 -
                     2.0 * (a0 * s01 + a1 * s11) + s02;
    return e > 0.0 ? e : 0.0;
}

// Gaussian elimination with partial pivoting on the (deg+1)x(deg+1) normal
// system assembled from range sums. Only used for deg == 2; the smaller
// systems go through the closed forms above.
inline void solve_normal_system(const PrefixMoments& m, std::size_t p, std::size_t q, int deg,
                                std::array<double, 3>& coeffs) {
    const int rows = deg + 1;
    double a[3][4] = {};
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < rows; ++c) {
            a[r][c] = m.range_sum(r + c, 0, p, q);
        }
        a[r][rows] = m.range_sum(r, 1, p, q);
    }
    for (int col = 0; col < rows; ++col) {
        int pivot = col;
        for (int r = col + 1; r < rows; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (a[pivot][col] == 0.0 || !std::isfinite(a[pivot][col])) {
            throw std::runtime_error("singular normal matrix in polynomial fit");
        }
        if (pivot != col) {
            for (int c = col; c <= rows; ++c) std::swap(a[pivot][c], a[col][c]);
        }
        for (int r = col + 1; r < rows; ++r) {
            const double f = a[r][col] / a[col][col];
            for (int c = col; c <= rows; ++c) a[r][c] -= f * a[col][c];
        }
    }
    coeffs = {0.0, 0.0, 0.0};
    for (int r = rows - 1; r >= 0; --r) {
        double v = a[r][rows];
        for (int c = r + 1; c < rows; ++c) v -= a[r][c] * coeffs[static_cast<std::size_t>(c)];
        coeffs[static_cast<std::size_t>(r)] = v / a[r][r];
    }
}

// Coefficients of the least-squares fit of degree `deg` (no degenerate-range
// reduction; caller guarantees q - p > deg).
inline void solve_fit(const PrefixMoments& m, std::size_t p, std::size_t q, int deg,
                      std::array<double, 3>& coeffs) {
    coeffs = {0.0, 0.0, 0.0};
    if (deg == 0) {
        coeffs[0] = m.range_sum(0, 1, p, q) / m.range_sum(0, 0, p, q);
    } else if (deg == 1) {
        solve_d1(m.range_sum(0, 0, p, q), m.range_sum(1, 0, p, q), m.range_sum(2, 0, p, q),
                 m.range_sum(0, 1, p, q), m.range_sum(1, 1, p, q), coeffs[0], coeffs[1]);
    } else {
        solve_normal_system(m, p, q, deg, coeffs);
    }
}

// sum_j sum_l a_j a_l S_{j+l,0} - 2 sum_j a_j S_{j,1} + S_{0,2}, clamped at 0.
inline double error_expansion(const PrefixMoments& m, std::size_t p, std::size_t q, int deg,
                              const std::array<double, 3>& a) {
    double e = m.range_sum(0, 2, p, q);
    for (int j = 0; j <= deg; ++j) {
        for (int l = 0; l <= deg; ++l) {
            e += a[static_cast<std::size_t>(j)] * a[static_cast<std::size_t>(l)] *
                 m.range_sum(j + l, 0, p, q);
        }
        e -= 2.0 * a[static_cast<std::size_t>(j)] * m.range_sum(j, 1, p, q);
    }
    return e > 0.0 ? e : 0.0;
}

inline void check_fit_args(const PrefixMoments& m, std::size_t p, std::size_t q, int degree) {
    if (q > m.size() || p > q) {
        throw std::invalid_argument("fit range out of bounds");
    }
    if (degree < 0 || degree > m.max_degree()) {
        throw std::invalid_argument("fit degree exceeds the moment buffer's max_degree");
    }
}

}  // namespace detail

/// Squared l2 error of the best degree-`degree` polynomial over [p, q),
/// in O(1) from the prefix moments. Empty ranges cost 0, as do ranges with
/// at most degree + 1 points (interpolation).
inline double fit_error(const PrefixMoments& m, std::size_t p, std::size_t q, int degree) {
    detail::check_fit_args(m, p, q, degree);
    if (q - p <= static_cast<std::size_t>(degree) + 1) return 0.0;
    if (degree == 0) {
        return detail::error_d0(m.range_sum(0, 0, p, q), m.range_sum(0, 1, p, q),
                                m.range_sum(0, 2, p, q));
    }
    if (degree == 1) {
        return detail::error_d1(m.range_sum(0, 0, p, q), m.range_sum(1, 0, p, q),
                                m.range_sum(2, 0, p, q), m.range_sum(0, 1, p, q),
                                m.range_sum(1, 1, p, q), m.range_sum(0, 2, p, q));
    }
    std::array<double, 3> a{};
    detail::solve_fit(m, p, q, degree, a);
    return detail::error_expansion(m, p, q, degree, a);
}

/// Best degree-`degree` polynomial over the non-empty range [p, q).
/// Ranges with fewer than degree + 1 points are fit at the reduced degree
/// q - p - 1 with the higher coefficients left at zero.
inline FitResult fit(const PrefixMoments& m, std::size_t p, std::size_t q, int degree) {
    detail::check_fit_args(m, p, q, degree);
    if (p == q) {
        throw std::invalid_argument("fit requires a non-empty range");
    }
    const int effective =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(degree), q - p - 1));
    std::array<double, 3> a{};
    detail::solve_fit(m, p, q, effective, a);

    FitResult out;
    out.degree = degree;
    out.coefficients.assign(static_cast<std::size_t>(degree) + 1, 0.0);
    for (int j = 0; j <= effective; ++j) {
        out.coefficients[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)];
    }
    // same code path as fit_error so stored errors match search decisions
    // bit for bit
    out.sse = fit_error(m, p, q, degree);
    return out;
}

/// Index range and degree of one prospective segment.
struct IntervalSpec {
    std::size_t start;
    std::size_t end;
    int degree;
};

/// Fits every interval and assembles the Segmentation (coefficients, per
/// segment sse, totals). Intervals must tile [0, n).
inline Segmentation fit_segmentation(const PrefixMoments& m, std::span<const IntervalSpec> parts) {
    std::vector<Segment> segments;
    segments.reserve(parts.size());
    for (const IntervalSpec& part : parts) {
        FitResult f = fit(m, part.start, part.end, part.degree);
        segments.push_back(
            {part.start, part.end, part.degree, std::move(f.coefficients), f.sse});
    }
    return Segmentation(m.size(), std::move(segments));
}

}  // namespace adaptseg
