#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace adaptseg {

struct Point {
    double x;
    double y;
};

/// A time series: (x, y) samples with strictly increasing, finite x values.
/// Immutable after construction.
class TimeSeries {
public:
    TimeSeries() = default;

    explicit TimeSeries(std::vector<Point> points) : points_(std::move(points)) {
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (!std::isfinite(points_[i].x) || !std::isfinite(points_[i].y)) {
                throw std::invalid_argument("time series values must be finite (point " +
                                            std::to_string(i) + ")");
            }
            if (i > 0 && !(points_[i].x > points_[i - 1].x)) {
                throw std::invalid_argument("x values must be strictly increasing (point " +
                                            std::to_string(i) + ")");
            }
        }
    }

    /// Builds a series on the unit grid x_i = i.
    static TimeSeries from_values(const std::vector<double>& values) {
        std::vector<Point> pts;
        pts.reserve(values.size());
        for (std::size_t i = 0; i < values.size(); ++i) {
            pts.push_back({static_cast<double>(i), values[i]});
        }
        return TimeSeries(std::move(pts));
    }

    std::size_t size() const { return points_.size(); }
    bool empty() const { return points_.empty(); }

    const Point& operator[](std::size_t i) const { return points_[i]; }
    double x(std::size_t i) const { return points_[i].x; }
    double y(std::size_t i) const { return points_[i].y; }

    const std::vector<Point>& points() const { return points_; }

    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }

    /// Copy with point `index` removed (used by leave-one-out refits).
    TimeSeries without_point(std::size_t index) const {
        std::vector<Point> pts;
        pts.reserve(points_.size() - 1);
        for (std::size_t i = 0; i < points_.size(); ++i) {
            if (i != index) pts.push_back(points_[i]);
        }
        TimeSeries out;
        out.points_ = std::move(pts);  // removal preserves order and finiteness
        return out;
    }

    /// Copy of the index range [start, start + count).
    TimeSeries slice(std::size_t start, std::size_t count) const {
        if (start > points_.size() || count > points_.size() - start) {
            throw std::invalid_argument("slice range out of bounds");
        }
        TimeSeries out;
        out.points_.assign(points_.begin() + static_cast<std::ptrdiff_t>(start),
                           points_.begin() + static_cast<std::ptrdiff_t>(start + count));
        return out;
    }

private:
    std::vector<Point> points_;
};

/// One interval of a segmentation: index range [start, end), the fitted
/// polynomial, and its squared l2 fit error. Costs degree + 1 regressors.
struct Segment {
    std::size_t start = 0;
    std::size_t end = 0;
    int degree = 0;
    std::vector<double> coefficients;  // a_0 .. a_degree, p(x) = sum a_j x^j
    double sse = 0.0;

    std::size_t length() const { return end - start; }
    int complexity() const { return degree + 1; }

    double evaluate(double x) const {
        double v = 0.0;
        for (std::size_t j = coefficients.size(); j-- > 0;) {
            v = v * x + coefficients[j];
        }
        return v;
    }
};

/// An ordered list of segments tiling [0, n), with complexity and error totals.
/// Immutable after construction.
class Segmentation {
public:
    Segmentation() = default;

    Segmentation(std::size_t n, std::vector<Segment> segments)
        : n_(n), segments_(std::move(segments)) {
        std::size_t expected_start = 0;
        for (const Segment& s : segments_) {
            if (s.start != expected_start || s.end <= s.start || s.end > n_) {
                throw std::invalid_argument("segments must tile [0, n) without gaps or overlaps");
            }
            if (s.degree < 0 || s.coefficients.size() != static_cast<std::size_t>(s.degree) + 1) {
                throw std::invalid_argument("segment needs degree + 1 coefficients");
            }
            if (!(s.sse >= 0.0)) {
                throw std::invalid_argument("segment sse must be non-negative");
            }
            expected_start = s.end;
            total_complexity_ += s.complexity();
            total_sse_ += s.sse;
        }
        if (expected_start != n_) {
            throw std::invalid_argument("segments must cover [0, n) exactly");
        }
    }

    std::size_t n() const { return n_; }
    const std::vector<Segment>& segments() const { return segments_; }
    std::size_t segment_count() const { return segments_.size(); }

    int total_complexity() const { return total_complexity_; }
    double total_sse() const { return total_sse_; }

    /// Reported experimental error: sqrt of the summed squared fit errors.
    double l2_error() const { return std::sqrt(total_sse_); }

    /// Model value at each data point (per-point evaluation of the owning
    /// segment's polynomial). Series must have n() points.
    std::vector<double> model_values(const TimeSeries& ts) const {
        if (ts.size() != n_) {
            throw std::invalid_argument("series length does not match segmentation");
        }
        std::vector<double> out(n_);
        for (const Segment& s : segments_) {
            for (std::size_t i = s.start; i < s.end; ++i) {
                out[i] = s.evaluate(ts.x(i));
            }
        }
        return out;
    }

private:
    std::size_t n_ = 0;
    std::vector<Segment> segments_;
    int total_complexity_ = 0;
    double total_sse_ = 0.0;
};

inline double l2_error(const Segmentation& s) { return s.l2_error(); }
inline int model_complexity(const Segmentation& s) { return s.total_complexity(); }

}  // namespace adaptseg
