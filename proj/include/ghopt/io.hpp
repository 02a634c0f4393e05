#ifndef GHOPT_IO_HPP
#define GHOPT_IO_HPP

#include <ghopt/ivf.hpp>
#include <ghopt/lasso.hpp>
#include <ghopt/solver.hpp>

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ghopt::io
{

// Shortest round-trip decimal representation.
std::string format_real(double v);
// Fixed-point with the given number of decimals (human-facing columns).
std::string format_fixed(double v, int decimals);

// Dataset CSV: header x1_lo,x1_hi,...,xl_lo,xl_hi,y_lo,y_hi then one sample per
// row. Throws ParseError with the offending line and column.
LassoDataset read_dataset_csv(std::istream &in);
LassoDataset read_dataset_csv(const std::filesystem::path &path);
void write_dataset_csv(std::ostream &out, const LassoDataset &ds);

// k, x components, F_lo, F_hi, g components (lo/hi pairs), W components, alpha.
void write_trace_csv(std::ostream &out, const IterationTrace &trace);

nlohmann::json to_json(const Interval &a);
nlohmann::json to_json(const IntervalVector &v);
nlohmann::json to_json(const Archive &archive);
nlohmann::json to_json(const SubgradientCheckReport &report);
// One line per fact: point, candidate, each violation, verdict.
std::string to_text(const SubgradientCheckReport &report);

nlohmann::json fit_to_json(const LassoFit &fit);

struct FitFile
{
    std::vector<double> beta;
};
// Throws ParseError on a missing or malformed beta array.
FitFile read_fit_json(std::istream &in);
FitFile read_fit_json(const std::filesystem::path &path);

// Config echo, final archives, termination and wall time.
nlohmann::json run_summary(const SolverConfig &cfg, const SolveResult &result, double wall_seconds);

// k, y_lo, y_hi, yhat_lo, yhat_hi, has_overlap, overlap_lo, overlap_hi,
// actual_excess, estimate_excess, actual_excess_width, estimate_excess_width.
void write_report_csv(std::ostream &out, const PredictionReport &report);

// FNV-1a 64-bit digest of a file's bytes, as 16 hex digits.
std::string file_digest(const std::filesystem::path &path);

} // namespace ghopt::io

#endif
