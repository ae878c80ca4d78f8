#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "mcda/errors.hpp"
#include "mcda/eval.hpp"
#include "mcda/solver.hpp"
#include "mcda/text_format.hpp"

namespace mcda {

namespace detail {

inline std::string json_escape(const std::string& s) {
    std::string out;
    out.reserve(s.size());
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof(buf), "\\u%04x", c);
                    out += buf;
                } else {
                    out += c;
                }
        }
    }
    return out;
}

inline void append_metrics(std::ostringstream& out, const Metrics& m) {
    out << "{\"accuracy\": " << format_double(m.accuracy)
        << ", \"macro_f1\": " << format_double(m.macro_f1)
        << ", \"micro_f1\": " << format_double(m.micro_f1) << ", \"per_class\": [";
    for (std::size_t c = 0; c < m.per_class.size(); ++c) {
        const auto& pc = m.per_class[c];
        if (c) out << ", ";
        out << "{\"class\": " << pc.class_id << ", \"precision\": " << format_double(pc.precision)
            << ", \"recall\": " << format_double(pc.recall)
            << ", \"f1\": " << format_double(pc.f1) << ", \"support\": " << pc.support << "}";
    }
    out << "]}";
}

inline void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    if (!out) throw DataError("CannotWrite: " + path);
    out << content;
    if (!out) throw DataError("CannotWrite: " + path);
}

}  // namespace detail

/// Reports serialize to JSON with a fixed key order and 17-significant-digit
/// floats, so identical runs produce byte-identical files.
template <typename Scalar>
std::string to_json(const SolverReport<Scalar>& report) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"gamma\": " << detail::format_double(double(report.gamma_used)) << ",\n";
    out << "  \"iterations\": " << report.iterations_run << ",\n";
    out << "  \"converged\": " << (report.converged ? "true" : "false") << ",\n";
    out << "  \"final_objective\": " << detail::format_double(double(report.final_objective))
        << ",\n";
    out << "  \"final_within_trace\": "
        << detail::format_double(double(report.final_within_trace)) << ",\n";
    out << "  \"final_min_pair_distance\": "
        << detail::format_double(double(report.final_min_pair_distance)) << ",\n";
    out << "  \"degenerate_pairs\": [";
    for (std::size_t i = 0; i < report.degenerate_pairs.size(); ++i) {
        if (i) out << ", ";
        // class ids are 1-based everywhere outside the library internals
        out << "[" << (report.degenerate_pairs[i].first + 1) << ", "
            << (report.degenerate_pairs[i].second + 1) << "]";
    }
    out << "],\n";
    out << "  \"objective_trace\": [";
    for (std::size_t i = 0; i < report.objective_trace.size(); ++i) {
        if (i) out << ", ";
        out << detail::format_double(double(report.objective_trace[i]));
    }
    out << "]\n}\n";
    return out.str();
}

inline std::string to_json(const EvalReport& report) {
    std::ostringstream out;
    out << "{\n";
    out << "  \"method\": \"" << detail::json_escape(report.method) << "\",\n";
    out << "  \"k\": " << report.k << ",\n";
    out << "  \"gamma\": \"" << detail::json_escape(report.gamma_policy) << "\",\n";
    out << "  \"infeasible\": " << (report.infeasible ? "true" : "false") << ",\n";
    if (report.infeasible)
        out << "  \"reason\": \"" << detail::json_escape(report.infeasible_reason) << "\",\n";
    out << "  \"folds\": [";
    for (std::size_t f = 0; f < report.fold_metrics.size(); ++f) {
        if (f) out << ", ";
        out << "\n    {\"gamma\": " << detail::format_double(report.fold_gamma[f])
            << ", \"metrics\": ";
        detail::append_metrics(out, report.fold_metrics[f]);
        out << "}";
    }
    out << (report.fold_metrics.empty() ? "],\n" : "\n  ],\n");
    out << "  \"mean\": ";
    detail::append_metrics(out, report.mean);
    out << ",\n";
    out << "  \"solver\": {\"iterations\": " << report.solver.iterations
        << ", \"converged\": " << (report.solver.converged ? "true" : "false")
        << ", \"objective_trace\": [";
    for (std::size_t i = 0; i < report.solver.objective_trace.size(); ++i) {
        if (i) out << ", ";
        out << detail::format_double(report.solver.objective_trace[i]);
    }
    out << "]}\n}\n";
    return out.str();
}

template <typename Scalar>
void write_report(const SolverReport<Scalar>& report, const std::string& path) {
    detail::write_text_file(path, to_json(report));
}

inline void write_report(const EvalReport& report, const std::string& path) {
    detail::write_text_file(path, to_json(report));
}

}  // namespace mcda
