#include "cli.hpp"

#include <ghopt/error.hpp>
#include <ghopt/io.hpp>
#include <ghopt/lasso.hpp>
#include <ghopt/problems.hpp>
#include <ghopt/solver.hpp>

#include <CLI11.hpp>
#include <fmt/core.h>
#include <fmt/format.h>
#include <fmt/ostream.h>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace ghopt::cli
{

namespace fs = std::filesystem;

namespace
{

std::string vec_text(const std::vector<double> &v)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        out += (i ? ", " : "") + io::format_real(v[i]);
    }
    return out + ")";
}

std::string beta_3dp(const std::vector<double> &beta)
{
    std::string out;
    for (std::size_t i = 0; i < beta.size(); ++i) {
        out += (i ? ", " : "") + io::format_fixed(beta[i], 3);
    }
    return out;
}

std::string interval_3dp(const Interval &a)
{
    return "[" + io::format_fixed(a.lo(), 3) + ", " + io::format_fixed(a.hi(), 3) + "]";
}

void write_json(const fs::path &path, const nlohmann::json &doc)
{
    std::ofstream f(path);
    if (!f) {
        throw ParseError("cannot write " + path.string());
    }
    f << doc.dump(2) << '\n';
}

double seconds_since(std::chrono::steady_clock::time_point start)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

struct ExpectedArchive
{
    double point;
    Interval value;
};

ExpectedArchive expected_demo_archive(std::size_t iterations)
{
    if (iterations == 0) {
        return {-1.0, Interval(4, 7)};
    }
    if (iterations == 1) {
        return {1.0 / 6.0, Interval(19.0 / 6.0, 7)};
    }
    return {0.0, Interval(3, 7)};
}

bool archive_matches(const Archive &a, const ExpectedArchive &e, double tol)
{
    if (a.efficient_set.empty() || a.nondominated_set.empty()) {
        return false;
    }
    for (const auto &x : a.efficient_set) {
        if (std::abs(x[0] - e.point) > tol) {
            return false;
        }
    }
    for (const auto &v : a.nondominated_set) {
        if (std::abs(v.lo() - e.value.lo()) > tol || std::abs(v.hi() - e.value.hi()) > tol) {
            return false;
        }
    }
    return true;
}

std::vector<std::vector<double>> parse_init_list(const std::string &text)
{
    std::vector<std::vector<double>> out;
    std::stringstream groups(text);
    std::string group;
    while (std::getline(groups, group, ';')) {
        std::vector<double> v;
        std::stringstream cells(group);
        std::string cell;
        while (std::getline(cells, cell, ',')) {
            try {
                std::size_t used = 0;
                v.push_back(std::stod(cell, &used));
                if (used != cell.size()) {
                    throw std::invalid_argument(cell);
                }
            } catch (const std::exception &) {
                throw ParseError("bad initial point component '" + cell + "' in '" + text + "'");
            }
        }
        if (v.empty()) {
            throw ParseError("empty initial point in '" + text + "'");
        }
        out.push_back(std::move(v));
    }
    if (out.empty()) {
        throw ParseError("no initial points in '" + text + "'");
    }
    return out;
}

std::string config_dir_name(double w, const std::vector<double> &init)
{
    std::string name = "w" + io::format_real(w) + "_init";
    for (std::size_t i = 0; i < init.size(); ++i) {
        name += (i ? "_" : "") + io::format_real(init[i]);
    }
    return name;
}

} // namespace

int cmd_demo(const DemoOptions &opts, std::ostream &out, std::ostream &err)
{
    SolverConfig cfg;
    cfg.w = opts.w;
    cfg.max_iter = opts.iterations;
    cfg.x0 = {-1.0};
    cfg.schedule = StepSchedule::harmonic(1.0);

    SolveResult result;
    try {
        result = solve(problems::kinked_example(), cfg);
    } catch (const InvalidWeights &e) {
        fmt::print(err, "error: {}\n", e.what());
        return exit_input_error;
    } catch (const Error &e) {
        fmt::print(err, "solver error: {}\n", e.what());
        return exit_solver_error;
    }

    fmt::print(out, "kinked 1-D example: x0 = -1, alpha_k = 1/k, w = {}, w' = {}, m = {}\n",
               io::format_real(cfg.w), io::format_real(cfg.w_prime()), cfg.max_iter);
    fmt::print(out, "{:>3}  {:>22}  {:>26}  {:>26}  {:>22}  {:>8}  {:>22}  {:>26}\n", "k", "x_k", "F(x_k)", "G_k", "W(G_k)",
               "alpha_k", "x_k+1", "F(x_k+1)");
    for (const auto &r : result.trace.records) {
        fmt::print(out, "{:>3}  {:>22}  {:>26}  {:>26}  {:>22}  {:>8}  {:>22}  {:>26}\n", r.k, io::format_real(r.x[0]),
                   to_string(r.value, 6), to_string(r.subgradient[0], 6), io::format_real(r.direction[0]),
                   io::format_fixed(r.alpha, 4), io::format_real(r.x_next[0]), to_string(r.value_next, 6));
    }
    if (result.trace.termination == Termination::zero_direction) {
        fmt::print(out, "stopped: zero scalarized subgradient at iterate {}\n", result.trace.records.size() + 1);
    }
    std::vector<std::string> points;
    for (const auto &x : result.archive.efficient_set) {
        points.push_back(io::format_real(x[0]));
    }
    std::vector<std::string> values;
    for (const auto &v : result.archive.nondominated_set) {
        values.push_back(to_string(v));
    }
    fmt::print(out, "efficient set    {{{}}}\n", fmt::join(points, ", "));
    fmt::print(out, "nondominated set {{{}}}\n", fmt::join(values, ", "));

    const auto expected = expected_demo_archive(opts.iterations);
    if (!archive_matches(result.archive, expected, 1e-9)) {
        fmt::print(err, "archives differ from the reference state {{{}}} / {{{}}}\n", io::format_real(expected.point),
                   to_string(expected.value));
        return exit_mismatch;
    }
    fmt::print(out, "reproduced reference archives\n");
    return exit_ok;
}

int cmd_lasso_fit(const FitOptions &opts, std::ostream &out, std::ostream &err)
{
    const auto start = std::chrono::steady_clock::now();

    std::optional<LassoDataset> ds;
    std::optional<TuningParameter> tuning;
    std::vector<SolverConfig> configs;
    try {
        ds = io::read_dataset_csv(opts.data);
        tuning = TuningParameter(Interval(opts.l_lo, opts.l_hi));
        const StepSchedule schedule = StepSchedule::parse(opts.schedule);

        std::vector<double> ws{opts.w};
        std::vector<std::vector<double>> inits;
        if (opts.grid) {
            ws = opts.grid_w;
            inits = parse_init_list(opts.grid_init);
        } else {
            inits.push_back(opts.init.empty() ? std::vector<double>(ds->feature_dim(), 0.0) : opts.init);
        }
        for (double w : ws) {
            for (const auto &init : inits) {
                if (init.size() != ds->feature_dim()) {
                    throw DimensionMismatch("initial point has " + std::to_string(init.size())
                                            + " components but the dataset has " + std::to_string(ds->feature_dim())
                                            + " features");
                }
                SolverConfig cfg;
                cfg.w = w;
                cfg.max_iter = opts.iterations;
                cfg.x0 = init;
                cfg.schedule = schedule;
                cfg.memoize = opts.memoize;
                cfg.validate();
                configs.push_back(std::move(cfg));
            }
        }
    } catch (const Error &e) {
        fmt::print(err, "input error: {}\n", e.what());
        return exit_input_error;
    }

    std::vector<std::optional<LassoFit>> fits(configs.size());
    std::vector<double> wall(configs.size(), 0.0);
    try {
        for_each_index(configs.size(), opts.grid ? Execution::parallel : Execution::serial, [&](std::size_t j) {
            const auto t0 = std::chrono::steady_clock::now();
            fits[j] = fit(*ds, *tuning, configs[j]);
            wall[j] = seconds_since(t0);
        });
    } catch (const Error &e) {
        fmt::print(err, "solver error: {}\n", e.what());
        return exit_solver_error;
    }

    std::vector<std::string> outputs;
    try {
        fs::create_directories(opts.out_dir);
        for (std::size_t j = 0; j < configs.size(); ++j) {
            const auto &f = *fits[j];
            const fs::path dir = opts.grid ? opts.out_dir / config_dir_name(configs[j].w, configs[j].x0) : opts.out_dir;
            fs::create_directories(dir);
            write_json(dir / "fit.json", io::fit_to_json(f));
            {
                std::ofstream trace(dir / "trace.csv");
                io::write_trace_csv(trace, f.trace);
            }
            write_json(dir / "summary.json", io::run_summary(configs[j], SolveResult{f.archive, f.trace}, wall[j]));
            for (const char *name : {"fit.json", "trace.csv", "summary.json"}) {
                outputs.push_back((dir / name).string());
            }
            fmt::print(out, "w = {:<4} init = {:<14} beta = ({})  E(beta) = {}  |E_s| = {}  |N_s| = {}\n",
                       io::format_real(configs[j].w), vec_text(configs[j].x0),
                       beta_3dp(f.beta),
                       interval_3dp(f.error), f.archive.efficient_set.size(), f.archive.nondominated_set.size());
        }

        const fs::path manifest_path = opts.out_dir / "manifest.json";
        outputs.push_back(manifest_path.string());
        nlohmann::json manifest = {
            {"command", "lasso-fit"},
            {"config",
             {{"w", opts.grid ? nlohmann::json(opts.grid_w) : nlohmann::json(opts.w)},
              {"schedule", configs.front().schedule.describe()},
              {"iterations", opts.iterations},
              {"init", opts.grid ? nlohmann::json(opts.grid_init) : nlohmann::json(configs.front().x0)},
              {"L", {opts.l_lo, opts.l_hi}}}},
            {"inputs", {{{"path", opts.data.string()}, {"fnv1a64", io::file_digest(opts.data)}}}},
            {"outputs", outputs},
            {"wall_time_seconds", seconds_since(start)}};
        write_json(manifest_path, manifest);
    } catch (const std::exception &e) {
        fmt::print(err, "cannot write outputs: {}\n", e.what());
        return exit_input_error;
    }
    return exit_ok;
}

int cmd_lasso_predict(const PredictOptions &opts, std::ostream &out, std::ostream &err)
{
    const auto start = std::chrono::steady_clock::now();
    PredictionReport report;
    try {
        const auto ds = io::read_dataset_csv(opts.data);
        const auto fitted = io::read_fit_json(opts.fit);
        if (fitted.beta.size() != ds.feature_dim()) {
            throw DimensionMismatch("fit has " + std::to_string(fitted.beta.size())
                                    + " parameters but the dataset has " + std::to_string(ds.feature_dim())
                                    + " features");
        }
        report = predict_report(ds, fitted.beta);
    } catch (const Error &e) {
        fmt::print(err, "input error: {}\n", e.what());
        return exit_input_error;
    }

    try {
        fs::create_directories(opts.out_dir);
        const fs::path report_path = opts.out_dir / "report.csv";
        {
            std::ofstream f(report_path);
            io::write_report_csv(f, report);
        }
        const fs::path manifest_path = opts.out_dir / "manifest.json";
        write_json(manifest_path,
                   {{"command", "lasso-predict"},
                    {"inputs",
                     {{{"path", opts.data.string()}, {"fnv1a64", io::file_digest(opts.data)}},
                      {{"path", opts.fit.string()}, {"fnv1a64", io::file_digest(opts.fit)}}}},
                    {"outputs", {report_path.string(), manifest_path.string()}},
                    {"wall_time_seconds", seconds_since(start)}});
    } catch (const std::exception &e) {
        fmt::print(err, "cannot write outputs: {}\n", e.what());
        return exit_input_error;
    }

    fmt::print(out, "{:>3}  {:>20}  {:>20}  {:>20}  {:>8}  {:>8}\n", "k", "Y_k", "Yhat_k", "overlap", "ex(Y)", "ex(Yhat)");
    for (std::size_t k = 0; k < report.rows.size(); ++k) {
        const auto &r = report.rows[k];
        fmt::print(out, "{:>3}  {:>20}  {:>20}  {:>20}  {:>8}  {:>8}\n", k + 1, interval_3dp(r.actual),
                   interval_3dp(r.estimate), r.overlap ? interval_3dp(*r.overlap) : std::string("-"),
                   io::format_fixed(r.actual_excess_width(), 3), io::format_fixed(r.estimate_excess_width(), 3));
    }
    return exit_ok;
}

int run(int argc, char **argv)
{
    CLI::App app{"gH-subgradient method for interval-valued optimization"};
    app.require_subcommand(1);

    DemoOptions demo;
    auto *demo_cmd = app.add_subcommand("demo", "Run the built-in kinked 1-D example and check its archives");
    demo_cmd->add_option("--w", demo.w, "Weight w of the lower endpoint (w' = 1 - w)");
    demo_cmd->add_option("--m", demo.iterations, "Number of iterations");

    FitOptions fit_opts;
    auto *fit_cmd = app.add_subcommand("lasso-fit", "Fit an interval-valued lasso model to a dataset CSV");
    fit_cmd->add_option("data", fit_opts.data, "Dataset CSV (x1_lo,x1_hi,...,y_lo,y_hi)")->required();
    fit_cmd->add_option("--w", fit_opts.w, "Weight w of the lower endpoint (w' = 1 - w)");
    fit_cmd->add_option("--l-lo", fit_opts.l_lo, "Lower endpoint of the tuning parameter L");
    fit_cmd->add_option("--l-hi", fit_opts.l_hi, "Upper endpoint of the tuning parameter L");
    fit_cmd->add_option("--schedule", fit_opts.schedule, "Step schedule: harmonic:c or shifted:c,s");
    fit_cmd->add_option("--iters", fit_opts.iterations, "Number of iterations");
    fit_cmd->add_option("--init", fit_opts.init, "Initial point, comma separated")->delimiter(',');
    fit_cmd->add_option("--out", fit_opts.out_dir, "Output directory");
    fit_cmd->add_flag("--grid", fit_opts.grid, "Run every (w, init) pair of --grid-w x --grid-init concurrently");
    fit_cmd->add_option("--grid-w", fit_opts.grid_w, "Weights for --grid")->delimiter(',');
    fit_cmd->add_option("--grid-init", fit_opts.grid_init, "Initial points for --grid, e.g. '11,2;6,25'");
    fit_cmd->add_flag("--memoize", fit_opts.memoize, "Cache F at archived points");

    PredictOptions predict;
    auto *predict_cmd = app.add_subcommand("lasso-predict", "Compare fitted and actual interval outputs");
    predict_cmd->add_option("data", predict.data, "Dataset CSV")->required();
    predict_cmd->add_option("fit", predict.fit, "fit.json written by lasso-fit")->required();
    predict_cmd->add_option("--out", predict.out_dir, "Output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_input_error;
    }

    if (*demo_cmd) {
        return cmd_demo(demo, std::cout, std::cerr);
    }
    if (*fit_cmd) {
        return cmd_lasso_fit(fit_opts, std::cout, std::cerr);
    }
    return cmd_lasso_predict(predict, std::cout, std::cerr);
}

} // namespace ghopt::cli
