#ifndef GHOPT_LASSO_HPP
#define GHOPT_LASSO_HPP

#include <ghopt/interval.hpp>
#include <ghopt/ivf.hpp>
#include <ghopt/parallel.hpp>
#include <ghopt/solver.hpp>

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ghopt
{

struct LassoSample
{
    IntervalVector x; // features X^1..X^l
    Interval y;
};

// Interval-valued regression data. All samples share the feature dimension l >= 1
// and there is at least one sample.
class LassoDataset
{
public:
    // Throws InvalidConfig / DimensionMismatch.
    explicit LassoDataset(std::vector<LassoSample> samples);

    std::size_t feature_dim() const noexcept { return feature_dim_; }
    std::size_t sample_count() const noexcept { return samples_.size(); }
    const std::vector<LassoSample> &samples() const noexcept { return samples_; }
    const LassoSample &operator[](std::size_t k) const { return samples_[k]; }

private:
    std::vector<LassoSample> samples_;
    std::size_t feature_dim_;
};

// Interval tuning parameter L with 0 <= L.lo.
class TuningParameter
{
public:
    // Throws InvalidConfig when L.lo < 0.
    explicit TuningParameter(Interval value);

    const Interval &value() const noexcept { return value_; }

private:
    Interval value_;
};

// How the per-sample terms of E1 are summed.
enum class Reduction
{
    sequential,        // strict left-to-right; reference semantics
    pairwise_parallel, // terms computed under OpenMP, summed by a fixed-shape pairwise tree
};

// H(X; β) = ⊕_i β_i ⊙ X^i, left to right.
Interval hypothesis(const IntervalVector &x, std::span<const double> beta);

// ½ ⊕_k (H(X_k;β) ⊖gH Y_k) ⊙s (H(X_k;β) ⊖gH Y_k)
Interval error_e1(const LassoDataset &ds, std::span<const double> beta, Reduction reduction = Reduction::sequential);
// L ⊙ (|β_1| + ... + |β_l|)
Interval error_e2(std::span<const double> beta, const TuningParameter &l);
// E1 ⊕ E2
Interval error_total(const LassoDataset &ds, std::span<const double> beta, const TuningParameter &l,
                     Reduction reduction = Reduction::sequential);

// G_i = ⊕_k (H(X_k;β) ⊖gH Y_k) ⊙s X_k^i ⊕ L        if β_i >= 0
//     = ⊕_k (H(X_k;β) ⊖gH Y_k) ⊙s X_k^i ⊕ (-1)⊙L   if β_i < 0
IntervalVector analytic_subgradient(const LassoDataset &ds, std::span<const double> beta, const TuningParameter &l);

// E as an IVF on R^l with analytic_subgradient as its oracle.
Ivf make_error_ivf(std::shared_ptr<const LassoDataset> ds, TuningParameter l);

struct LassoFit
{
    std::vector<double> beta;
    Interval error; // E(beta)
    Archive archive;
    IterationTrace trace;
    // Config echo.
    double w = 0.0;
    std::string schedule;
    std::size_t iterations = 0;
    std::vector<double> init;
    Interval tuning;
};

// Runs the solver on E; beta is the efficient-set element minimizing
// w*E.lo + w'*E.hi, ties broken by archive order (earliest iterate first).
LassoFit fit(const LassoDataset &ds, const TuningParameter &l, const SolverConfig &cfg);

// Independent fits, one per config, optionally run concurrently.
std::vector<LassoFit> fit_grid(const LassoDataset &ds, const TuningParameter &l,
                               const std::vector<SolverConfig> &configs, Execution execution = Execution::serial);

// A closed sub-segment; empty widths are allowed (single points).
struct Segment
{
    double lo;
    double hi;
    double width() const noexcept { return hi - lo; }
};

struct PredictionRow
{
    Interval actual;                  // Y_k
    Interval estimate;                // H(X_k; β̂)
    std::optional<Interval> overlap;  // Y_k ∩ Ŷ_k
    std::vector<Segment> actual_excess;   // parts of Y_k outside Ŷ_k
    std::vector<Segment> estimate_excess; // parts of Ŷ_k outside Y_k

    double actual_excess_width() const noexcept;
    double estimate_excess_width() const noexcept;
};

struct PredictionReport
{
    std::vector<PredictionRow> rows;
};

// Throws DimensionMismatch.
PredictionReport predict_report(const LassoDataset &ds, std::span<const double> beta);
PredictionRow compare_intervals(const Interval &actual, const Interval &estimate);

} // namespace ghopt

#endif
