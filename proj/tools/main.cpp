// Command-line front end: solve a benchmark problem on one grid, run a
// convergence study over a list of grids, or list the built-in problems.

#include "bvpcorr/bvpcorr.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitNoConvergence = 2;
constexpr int kExitInvalidParameter = 3;

struct RunConfig {
    std::string problem_id;
    std::optional<double> lambda;
    int degree = 4;
    double h = 0.1;
    std::vector<double> grids;
    std::string method = "corrected";
    std::string output;
    std::string format = "table";
};

bvpcorr::Method parse_method(const std::string& name) {
    if (name == "galerkin") return bvpcorr::Method::galerkin;
    if (name == "cfd") return bvpcorr::Method::compact_fd;
    if (name == "corrected") return bvpcorr::Method::corrected;
    throw bvpcorr::InvalidArgument("unknown method '" + name + "'");
}

std::string full(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string brief(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void emit(const std::string& output, const std::string& text) {
    if (output.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(output, std::ios::binary);
    if (!file) throw bvpcorr::InvalidArgument("cannot open output file '" + output + "'");
    file << text;
}

bvpcorr::BenchmarkProblem load_problem(const RunConfig& config) {
    const bvpcorr::BenchmarkProblem problem =
        bvpcorr::get_problem(config.problem_id, config.lambda);
    if (problem.lambda && bvpcorr::bratu_near_critical(*problem.lambda))
        std::cerr << "warning: lambda is within 1e-6 of the critical value "
                  << full(bvpcorr::bratu_lambda_critical)
                  << "; the shape-parameter root is nearly double and ill-conditioned\n";
    return problem;
}

int cmd_solve(const RunConfig& config) {
    const bvpcorr::BenchmarkProblem problem = load_problem(config);
    const bvpcorr::ProblemDefinition& def = problem.definition;
    const bvpcorr::Method method = parse_method(config.method);
    const int n = bvpcorr::detail::subintervals_for(def, config.h);

    const bvpcorr::Grid grid(def.lower, def.upper, n);
    std::vector<double> approx(n + 1);
    switch (method) {
        case bvpcorr::Method::galerkin: {
            const auto base = bvpcorr::solve_galerkin(def, config.degree);
            for (int i = 0; i <= n; ++i) approx[i] = bvpcorr::evaluate(base, grid.node(i));
            break;
        }
        case bvpcorr::Method::compact_fd:
            approx = bvpcorr::solve_compact_fd(def, n).f;
            break;
        case bvpcorr::Method::corrected: {
            const auto base = bvpcorr::solve_galerkin(def, config.degree);
            approx = bvpcorr::correct(def, base, n).corrected_values;
            break;
        }
    }

    const bool have_exact = static_cast<bool>(problem.exact);
    std::ostringstream out;
    const bool csv = config.format == "csv";
    auto fmt = [&](double v) { return csv ? full(v) : brief(v); };
    const char sep = csv ? ',' : ' ';
    if (csv) {
        out << "x,f_approx";
        if (have_exact) out << ",f_exact,abs_error";
        out << '\n';
    } else {
        out << "x f_approx";
        if (have_exact) out << " f_exact abs_error";
        out << '\n';
    }
    for (int i = 0; i <= n; ++i) {
        const double x = grid.node(i);
        out << fmt(x) << sep << fmt(approx[i]);
        if (have_exact) {
            const double ex = problem.exact(x);
            out << sep << fmt(ex) << sep << fmt(std::abs(approx[i] - ex));
        }
        out << '\n';
    }
    emit(config.output, out.str());
    return 0;
}

int cmd_study(const RunConfig& config) {
    const bvpcorr::BenchmarkProblem problem = load_problem(config);
    const bvpcorr::ConvergenceReport report =
        bvpcorr::run_study(problem, config.degree, config.grids, parse_method(config.method));
    std::ostringstream out;
    if (config.format == "csv")
        bvpcorr::write_csv(report, out);
    else
        bvpcorr::write_table(report, out);
    emit(config.output, out.str());
    for (const auto& row : report.rows)
        if (row.failed)
            std::cerr << "warning: solve failed at h = " << brief(row.h) << "\n";
    return 0;
}

int cmd_list() {
    for (const std::string& id : bvpcorr::listed_problem_ids()) {
        const auto problem = bvpcorr::get_problem(id);
        std::cout << id << ": " << problem.description << " ["
                  << bvpcorr::to_string(problem.definition.bc_kind()) << "]\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-point BVP solver: Bernstein-Galerkin first stage with "
                 "compact finite difference residual correction"};
    app.set_help_flag("--help", "print usage");  // leave -h free for the grid flag
    app.require_subcommand(1);

    RunConfig config;

    auto add_common = [&](CLI::App* cmd, bool needs_problem) {
        cmd->set_help_flag("--help", "print usage");
        if (needs_problem)
            cmd->add_option("--problem", config.problem_id, "problem id (see list-problems)")
                ->required();
        cmd->add_option("--lambda", config.lambda, "parameter for the bratu problem");
        cmd->add_option("--degree", config.degree, "trial polynomial degree")
            ->check(CLI::Range(2, 20))
            ->capture_default_str();
        cmd->add_option("--method", config.method, "galerkin | cfd | corrected")
            ->check(CLI::IsMember({"galerkin", "cfd", "corrected"}))
            ->capture_default_str();
        cmd->add_option("--output", config.output, "write result to this file");
        cmd->add_option("--format", config.format, "csv | table")
            ->check(CLI::IsMember({"csv", "table"}))
            ->capture_default_str();
    };

    CLI::App* solve = app.add_subcommand("solve", "solve on a single grid and print nodal values");
    add_common(solve, true);
    solve->add_option("--h", config.h, "grid size")->required();

    CLI::App* study = app.add_subcommand("study", "accuracy and convergence-rate table");
    add_common(study, true);
    study->add_option("--grids", config.grids, "comma-separated decreasing grid sizes")
        ->required()
        ->delimiter(',');

    app.add_subcommand("list-problems", "list the built-in benchmark problems");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (solve->parsed()) return cmd_solve(config);
        if (study->parsed()) return cmd_study(config);
        return cmd_list();
    } catch (const bvpcorr::UnknownProblem& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const bvpcorr::LambdaOutOfRange& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParameter;
    } catch (const bvpcorr::InvalidArgument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParameter;
    } catch (const bvpcorr::DegreeTooSmall& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParameter;
    } catch (const bvpcorr::DegreeTooLarge& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParameter;
    } catch (const bvpcorr::GridTooCoarse& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParameter;
    } catch (const bvpcorr::NonPositiveInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParameter;
    } catch (const bvpcorr::NoExactSolution& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvalidParameter;
    } catch (const bvpcorr::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitNoConvergence;
    }
}
