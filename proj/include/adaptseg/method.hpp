#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "adaptseg/dp.hpp"
#include "adaptseg/topdown.hpp"

namespace adaptseg {

/// The four segmenters exposed to evaluation and the CLI.
enum class Method {
    Optimal,          // dynamic programming, exact
    TopDownAdaptive,  // mixed-degree greedy
    TopDownLinear,    // fixed degree 1
    TopDownConstant,  // fixed degree 0
};

inline constexpr Method kAllMethods[] = {Method::Optimal, Method::TopDownAdaptive,
                                         Method::TopDownLinear, Method::TopDownConstant};

/// CLI token for a method.
inline std::string_view method_name(Method m) {
    switch (m) {
        case Method::Optimal: return "dp";
        case Method::TopDownAdaptive: return "td-adaptive";
        case Method::TopDownLinear: return "td-linear";
        case Method::TopDownConstant: return "td-const";
    }
    return "?";
}

/// Short column header used in report tables.
inline std::string_view method_label(Method m) {
    switch (m) {
        case Method::Optimal: return "optimal";
        case Method::TopDownAdaptive: return "adaptive";
        case Method::TopDownLinear: return "linear";
        case Method::TopDownConstant: return "constant";
    }
    return "?";
}

inline std::optional<Method> parse_method(std::string_view name) {
    if (name == "dp" || name == "optimal") return Method::Optimal;
    if (name == "td-adaptive" || name == "topdown-adaptive") return Method::TopDownAdaptive;
    if (name == "td-linear" || name == "topdown-linear") return Method::TopDownLinear;
    if (name == "td-const" || name == "topdown-constant") return Method::TopDownConstant;
    return std::nullopt;
}

/// Smallest budget the method accepts given the per-interval degree bound.
inline int min_budget(Method m, int max_degree) {
    switch (m) {
        case Method::Optimal: return 1;
        case Method::TopDownAdaptive: return max_degree + 1;
        case Method::TopDownLinear: return 2;
        case Method::TopDownConstant: return 1;
    }
    return 1;
}

inline Segmentation run_method(const PrefixMoments& m, Method method, int budget) {
    switch (method) {
        case Method::Optimal: return optimal_segmentation(m, budget);
        case Method::TopDownAdaptive: return top_down_adaptive(m, budget);
        case Method::TopDownLinear: return top_down_fixed(m, 1, budget);
        case Method::TopDownConstant: return top_down_fixed(m, 0, budget);
    }
    throw std::invalid_argument("unknown method");
}

inline Segmentation run_method(const TimeSeries& ts, Method method, int budget, int max_degree) {
    PrefixMoments m(ts, max_degree);
    return run_method(m, method, budget);
}

}  // namespace adaptseg
