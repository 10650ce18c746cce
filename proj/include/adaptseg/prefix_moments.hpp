#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "adaptseg/series.hpp"

namespace adaptseg {

/// Prefix sums of the mixed moments x^j y^l, so that any range sum
/// sum_{i in [p,q)} x_i^j y_i^l is answered in O(1) by one subtraction.
///
/// For a maximum fit degree D the stored exponent pairs are exactly the
/// ones the normal equations and the fit-error expansion consume:
///   (j, 0) for j = 0..2D,  (j, 1) for j = 0..D,  (0, 2)
/// i.e. 3(D+1) tables of n+1 entries each, built in one left-to-right pass.
/// Plain accumulation, no compensated summation; the accuracy tests pin the
/// resulting 64-bit behaviour.
///
/// Immutable after construction; concurrent queries are safe.
class PrefixMoments {
public:
    PrefixMoments(const TimeSeries& ts, int max_degree)
        : max_degree_(max_degree), n_(ts.size()), stride_(ts.size() + 1) {
        if (max_degree < 0) {
            throw std::invalid_argument("max_degree must be >= 0");
        }
        if (max_degree > 2) {
            // 64-bit prefix sums lose too much accuracy past quadratic fits.
            throw std::invalid_argument("max_degree must be <= 2");
        }
        data_.assign(static_cast<std::size_t>(table_count()) * stride_, 0.0);

        const int d = max_degree_;
        for (std::size_t i = 0; i < n_; ++i) {
            const double x = ts.x(i);
            const double y = ts.y(i);
            double xp = 1.0;
            for (int j = 0; j <= 2 * d; ++j) {
                accumulate(slot_x(j), i, xp);
                if (j <= d) accumulate(slot_xy(j), i, xp * y);
                xp *= x;
            }
            accumulate(slot_yy(), i, y * y);
        }
    }

    int max_degree() const { return max_degree_; }
    std::size_t size() const { return n_; }
    int table_count() const { return 3 * (max_degree_ + 1); }

    /// sum_{i in [p,q)} x_i^xexp y_i^yexp.
    double range_sum(int xexp, int yexp, std::size_t p, std::size_t q) const {
        const double* t = table(xexp, yexp);
        if (p > q || q > n_) {
            throw std::invalid_argument("range_sum indexes out of bounds");
        }
        return t[q] - t[p];
    }

    /// Raw prefix table for a stored exponent pair; entry q holds
    /// sum_{i < q} x_i^xexp y_i^yexp (entry 0 is 0, length n+1).
    std::span<const double> prefix_table(int xexp, int yexp) const {
        return {table(xexp, yexp), stride_};
    }

private:
    int slot_x(int j) const { return j; }
    int slot_xy(int j) const { return 2 * max_degree_ + 1 + j; }
    int slot_yy() const { return 3 * max_degree_ + 2; }

    const double* table(int xexp, int yexp) const {
        int slot = -1;
        if (yexp == 0 && xexp >= 0 && xexp <= 2 * max_degree_) {
            slot = slot_x(xexp);
        } else if (yexp == 1 && xexp >= 0 && xexp <= max_degree_) {
            slot = slot_xy(xexp);
        } else if (yexp == 2 && xexp == 0) {
            slot = slot_yy();
        }
        if (slot < 0) {
            throw std::invalid_argument("moment pair (x^" + std::to_string(xexp) + ", y^" +
                                        std::to_string(yexp) + ") is not stored");
        }
        return data_.data() + static_cast<std::size_t>(slot) * stride_;
    }

    void accumulate(int slot, std::size_t i, double term) {
        double* t = data_.data() + static_cast<std::size_t>(slot) * stride_;
        t[i + 1] = t[i] + term;
    }

    int max_degree_;
    std::size_t n_;
    std::size_t stride_;
    std::vector<double> data_;
};

}  // namespace adaptseg
