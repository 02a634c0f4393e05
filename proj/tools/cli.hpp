#ifndef GHOPT_TOOLS_CLI_HPP
#define GHOPT_TOOLS_CLI_HPP

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ghopt::cli
{

enum ExitCode : int
{
    exit_ok = 0,
    exit_mismatch = 1,
    exit_input_error = 2,
    exit_solver_error = 3,
};

struct DemoOptions
{
    double w = 2.0 / 3.0;
    std::size_t iterations = 2;
};

// Runs the built-in kinked 1-D problem from x0 = -1 with α_k = 1/k and prints the
// iteration table. Returns exit_ok iff the archives match the known states
// ({-1}/{[4,7]} after 0 steps, {1/6}/{[19/6,7]} after 1, {0}/{[3,7]} after 2+).
int cmd_demo(const DemoOptions &opts, std::ostream &out, std::ostream &err);

struct FitOptions
{
    std::filesystem::path data;
    double w = 0.0;
    double l_lo = 0.03;
    double l_hi = 0.06;
    std::string schedule = "shifted:7,100000";
    std::size_t iterations = 10000;
    std::vector<double> init;
    std::filesystem::path out_dir = "ghopt-out";
    bool grid = false;
    std::vector<double> grid_w{0.0, 0.3, 0.6, 1.0};
    std::string grid_init = "11,2;6,25";
    bool memoize = false;
};

// Writes fit.json, trace.csv, summary.json and manifest.json under out_dir
// (one subdirectory per configuration with grid = true).
int cmd_lasso_fit(const FitOptions &opts, std::ostream &out, std::ostream &err);

struct PredictOptions
{
    std::filesystem::path data;
    std::filesystem::path fit;
    std::filesystem::path out_dir = "ghopt-out";
};

// Writes report.csv and manifest.json under out_dir.
int cmd_lasso_predict(const PredictOptions &opts, std::ostream &out, std::ostream &err);

// Full command line entry point.
int run(int argc, char **argv);

} // namespace ghopt::cli

#endif
