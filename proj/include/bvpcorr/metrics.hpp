#pragma once

#include "bvpcorr/compact_fd.hpp"
#include "bvpcorr/correction.hpp"
#include "bvpcorr/galerkin.hpp"
#include "bvpcorr/problems.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bvpcorr {

/// max_i |approx_i - exact_i|
inline double linf_error(std::span<const double> approx, std::span<const double> exact) {
    if (approx.size() != exact.size() || approx.empty())
        throw LengthMismatch("linf_error: vectors must have equal nonzero length");
    double m = 0.0;
    for (std::size_t i = 0; i < approx.size(); ++i)
        m = std::max(m, std::abs(approx[i] - exact[i]));
    return m;
}

/// log(eps1 / eps2) / log(h1 / h2)
inline double convergence_rate(double eps1, double eps2, double h1, double h2) {
    if (!(eps1 > 0.0) || !(eps2 > 0.0) || !(h1 > 0.0) || !(h2 > 0.0))
        throw NonPositiveInput("convergence_rate: all inputs must be positive");
    if (h1 == h2) throw NonPositiveInput("convergence_rate: h1 and h2 must differ");
    return std::log(eps1 / eps2) / std::log(h1 / h2);
}

enum class Method { galerkin, compact_fd, corrected };

inline std::string_view method_name(Method m) {
    switch (m) {
        case Method::galerkin: return "galerkin";
        case Method::compact_fd: return "compact_fd";
        case Method::corrected: return "corrected";
    }
    return "?";
}

struct StudyRow {
    double h = 0.0;
    double linf = std::numeric_limits<double>::quiet_NaN();
    std::optional<double> cr;
    bool failed = false;
};

/// One benchmark study: nodal accuracy per grid size plus pairwise rates.
struct ConvergenceReport {
    std::string problem_id;
    Method method = Method::corrected;
    int degree = 4;
    std::chrono::system_clock::time_point created;
    std::vector<StudyRow> rows;
};

namespace detail {

inline int subintervals_for(const ProblemDefinition& def, double h) {
    if (!(h > 0.0)) throw InvalidArgument("run_study: grid sizes must be positive");
    const double ratio = (def.upper - def.lower) / h;
    const int n = static_cast<int>(std::lround(ratio));
    if (std::abs(ratio - n) > 1e-9 * std::max(1.0, ratio))
        throw InvalidArgument("run_study: h = " + std::to_string(h) +
                              " does not divide the interval into an integer grid");
    if (n < 4)
        throw InvalidArgument("run_study: h = " + std::to_string(h) +
                              " gives fewer than 4 subintervals");
    return n;
}

}  // namespace detail

/// Runs the chosen method over a decreasing list of grid sizes and records
/// the nodal max error against the benchmark's reference solution. A row
/// whose solve fails keeps linf = NaN and the study continues. The base
/// approximation is solved once and reused across rows.
inline ConvergenceReport run_study(const BenchmarkProblem& problem, int degree,
                                   const std::vector<double>& h_list, Method method,
                                   const NewtonSettings& settings = {}) {
    if (!problem.exact) throw NoExactSolution("run_study: '" + problem.id + "' has no reference solution");
    if (h_list.empty()) throw InvalidArgument("run_study: empty grid list");
    for (std::size_t i = 1; i < h_list.size(); ++i)
        if (!(h_list[i] < h_list[i - 1]))
            throw InvalidArgument("run_study: grid sizes must be strictly decreasing");

    const ProblemDefinition& def = problem.definition;
    std::vector<int> ns;
    ns.reserve(h_list.size());
    for (double h : h_list) ns.push_back(detail::subintervals_for(def, h));

    ConvergenceReport report{problem.id, method, degree, std::chrono::system_clock::now(), {}};

    std::optional<GalerkinSolution> base;
    if (method != Method::compact_fd) {
        try {
            base = solve_galerkin(def, degree, settings);
        } catch (const Error&) {
            // no usable base: every row fails, the report still comes back
            for (double h : h_list)
                report.rows.push_back(
                    StudyRow{h, std::numeric_limits<double>::quiet_NaN(), {}, true});
            return report;
        }
    }

    for (std::size_t k = 0; k < h_list.size(); ++k) {
        StudyRow row{h_list[k]};
        const int n = ns[k];
        try {
            const Grid grid(def.lower, def.upper, n);
            std::vector<double> approx(n + 1), reference(n + 1);
            for (int i = 0; i <= n; ++i) reference[i] = problem.exact(grid.node(i));
            switch (method) {
                case Method::galerkin:
                    for (int i = 0; i <= n; ++i) approx[i] = evaluate(*base, grid.node(i));
                    break;
                case Method::compact_fd:
                    approx = solve_compact_fd(def, n, settings).f;
                    break;
                case Method::corrected:
                    approx = correct(def, *base, n, settings).corrected_values;
                    break;
            }
            row.linf = linf_error(approx, reference);
        } catch (const Error&) {
            row.failed = true;
        }
        report.rows.push_back(row);
    }

    for (std::size_t k = 1; k < report.rows.size(); ++k) {
        StudyRow& cur = report.rows[k];
        const StudyRow& prev = report.rows[k - 1];
        if (!cur.failed && !prev.failed && cur.linf > 0.0 && prev.linf > 0.0)
            cur.cr = convergence_rate(prev.linf, cur.linf, prev.h, cur.h);
    }
    return report;
}

namespace detail {

inline std::string format_full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

inline std::string format_short(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

}  // namespace detail

/// CSV with header "h,linf,cr"; 17 significant digits so values round-trip.
/// The first row's cr field is empty; failed rows serialize linf as nan.
inline void write_csv(const ConvergenceReport& report, std::ostream& out) {
    out << "h,linf,cr\n";
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const StudyRow& row = report.rows[k];
        out << detail::format_full(row.h) << ',' << detail::format_full(row.linf) << ',';
        if (k > 0) {
            if (row.cr)
                out << detail::format_full(*row.cr);
            else
                out << "nan";
        }
        out << '\n';
    }
}

/// Human-readable table, 6 significant digits.
inline void write_table(const ConvergenceReport& report, std::ostream& out) {
    out << "problem " << report.problem_id << ", method " << method_name(report.method)
        << ", degree " << report.degree << "\n";
    char line[96];
    std::snprintf(line, sizeof line, "%-12s %-14s %-10s\n", "h", "linf", "cr");
    out << line;
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const StudyRow& row = report.rows[k];
        const std::string cr = k == 0 ? "" : (row.cr ? detail::format_short(*row.cr) : "nan");
        std::snprintf(line, sizeof line, "%-12s %-14s %-10s\n",
                      detail::format_short(row.h).c_str(), detail::format_short(row.linf).c_str(),
                      cr.c_str());
        out << line;
    }
}

/// Max error of the first-stage approximation on a fixed 1001-point uniform
/// sample (the first stage is grid-free, so a dense sample stands in for the
/// nodal measure).
inline double dense_linf(const GalerkinSolution& solution, const ScalarFn& exact) {
    const double a = solution.trial.basis.lower();
    const double b = solution.trial.basis.upper();
    double m = 0.0;
    for (int i = 0; i <= 1000; ++i) {
        const double x = a + (b - a) * i / 1000.0;
        m = std::max(m, std::abs(evaluate(solution, x) - exact(x)));
    }
    return m;
}

}  // namespace bvpcorr
