#pragma once

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "adaptseg/csv.hpp"
#include "adaptseg/evaluate.hpp"
#include "adaptseg/series.hpp"

namespace adaptseg {

inline nlohmann::json to_json(const Segmentation& seg) {
    nlohmann::json segments = nlohmann::json::array();
    for (const Segment& s : seg.segments()) {
        segments.push_back({{"start", s.start},
                            {"end", s.end},
                            {"degree", s.degree},
                            {"coefficients", s.coefficients},
                            {"sse", s.sse}});
    }
    return {{"n", seg.n()},
            {"segments", std::move(segments)},
            {"total_complexity", seg.total_complexity()},
            {"total_sse", seg.total_sse()},
            {"l2_error", seg.l2_error()}};
}

/// Plot-ready CSV: one row per point with the model evaluation and the
/// index of the owning segment.
inline void write_plot_csv(std::ostream& out, const TimeSeries& ts, const Segmentation& seg) {
    out << "x,y,model,segment_id\n";
    const std::vector<double> model = seg.model_values(ts);
    std::size_t segment_id = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        while (i >= seg.segments()[segment_id].end) ++segment_id;
        out << format_double(ts.x(i)) << ',' << format_double(ts.y(i)) << ','
            << format_double(model[i]) << ',' << segment_id << '\n';
    }
}

inline nlohmann::json to_json(const LooReport& report) {
    return {{"method", method_name(report.method)},
            {"k", report.budget},
            {"rms", report.rms},
            {"per_point_errors", report.abs_errors}};
}

namespace detail {

inline nlohmann::json optional_json(const std::optional<double>& v) {
    if (v) return *v;
    return nullptr;
}

}  // namespace detail

inline nlohmann::json to_json(const ComparisonReport& report) {
    nlohmann::json methods = nlohmann::json::array();
    for (const MethodResult& r : report.methods) {
        methods.push_back({{"method", method_name(r.method)},
                           {"fit_error", r.fit_error},
                           {"total_sse", r.total_sse},
                           {"complexity", r.complexity},
                           {"loo_rms", detail::optional_json(r.loo_rms)}});
    }
    return {{"k", report.budget},
            {"max_degree", report.max_degree},
            {"methods", std::move(methods)},
            {"fit_ratio_linear_adaptive", detail::optional_json(report.fit_ratio_linear_adaptive)},
            {"loo_ratio_linear_adaptive", detail::optional_json(report.loo_ratio_linear_adaptive)}};
}

inline nlohmann::json to_json(const ExperimentSummary& s) {
    nlohmann::json methods = nlohmann::json::array();
    for (std::size_t i = 0; i < s.methods.size(); ++i) {
        methods.push_back({{"method", method_name(s.methods[i])},
                           {"mean_fit_error", s.mean_fit[i]},
                           {"mean_loo_rms", detail::optional_json(s.mean_loo[i])}});
    }
    return {{"k", s.budget},
            {"trials", s.trials},
            {"methods", std::move(methods)},
            {"fit_ratio_of_means_linear_adaptive", detail::optional_json(s.fit_ratio_of_means)},
            {"loo_ratio_of_means_linear_adaptive", detail::optional_json(s.loo_ratio_of_means)},
            {"mean_fit_ratio_linear_adaptive", detail::optional_json(s.mean_fit_ratio)},
            {"mean_loo_ratio_linear_adaptive", detail::optional_json(s.mean_loo_ratio)}};
}

namespace detail {

inline std::string fixed(double v, int precision) {
    std::ostringstream out;
    out << std::fixed << std::setprecision(precision) << v;
    return out.str();
}

inline std::string ratio_cell(const std::optional<double>& ratio) {
    if (!ratio) return "n/a";
    return std::to_string(static_cast<long long>(std::lround(*ratio * 100.0))) + "%";
}

// One aligned row: label column then right-aligned cells.
inline void table_row(std::ostream& out, const std::string& label,
                      const std::vector<std::string>& cells) {
    out << std::left << std::setw(12) << label;
    for (const std::string& c : cells) {
        out << std::right << std::setw(12) << c;
    }
    out << '\n';
}

}  // namespace detail

/// Aligned-column table with one method per column plus the
/// linear/adaptive ratio column.
inline std::string render_table(const ComparisonReport& report) {
    std::ostringstream out;
    std::vector<std::string> header, fit, loo;
    bool any_loo = false;
    for (const MethodResult& r : report.methods) {
        header.emplace_back(method_label(r.method));
        fit.push_back(detail::fixed(r.fit_error, 4));
        loo.push_back(r.loo_rms ? detail::fixed(*r.loo_rms, 4) : "-");
        any_loo = any_loo || r.loo_rms.has_value();
    }
    header.emplace_back("lin/adapt");
    fit.push_back(detail::ratio_cell(report.fit_ratio_linear_adaptive));
    loo.push_back(detail::ratio_cell(report.loo_ratio_linear_adaptive));

    out << "k = " << report.budget << '\n';
    detail::table_row(out, "", header);
    detail::table_row(out, "fit error", fit);
    if (any_loo) detail::table_row(out, "loo error", loo);
    return out.str();
}

inline std::string render_table(const ExperimentSummary& s) {
    std::ostringstream out;
    std::vector<std::string> header, fit, loo;
    bool any_loo = false;
    for (std::size_t i = 0; i < s.methods.size(); ++i) {
        header.emplace_back(method_label(s.methods[i]));
        fit.push_back(detail::fixed(s.mean_fit[i], 4));
        loo.push_back(s.mean_loo[i] ? detail::fixed(*s.mean_loo[i], 4) : "-");
        any_loo = any_loo || s.mean_loo[i].has_value();
    }
    header.emplace_back("lin/adapt");
    fit.push_back(detail::ratio_cell(s.fit_ratio_of_means));
    loo.push_back(detail::ratio_cell(s.loo_ratio_of_means));

    out << "k = " << s.budget << "  (" << s.trials << " trials, mean per method)\n";
    detail::table_row(out, "", header);
    detail::table_row(out, "fit error", fit);
    if (any_loo) detail::table_row(out, "loo error", loo);
    return out.str();
}

}  // namespace adaptseg
