#ifndef GHOPT_SOLVER_HPP
#define GHOPT_SOLVER_HPP

#include <ghopt/interval.hpp>
#include <ghopt/ivf.hpp>

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghopt
{

// Diminishing step length α_k, k >= 1.
class StepSchedule
{
public:
    // α_k = c / k
    static StepSchedule harmonic(double c);
    // α_k = c / (k + s)
    static StepSchedule shifted(double c, double s);
    static StepSchedule custom(std::function<double(std::size_t)> fn, std::string label = "custom");
    // "harmonic:c" or "shifted:c,s"; throws ParseError.
    static StepSchedule parse(std::string_view text);

    double operator()(std::size_t k) const;
    const std::string &describe() const noexcept { return label_; }

    // Throws InvalidConfig unless α_k > 0 for k = 1..max_iter.
    void validate(std::size_t max_iter) const;

private:
    StepSchedule(std::function<double(std::size_t)> fn, std::string label)
        : fn_(std::move(fn)), label_(std::move(label))
    {
    }

    std::function<double(std::size_t)> fn_;
    std::string label_;
};

enum class ZeroDirectionPolicy
{
    stop, // end the run at the current iterate
    skip, // re-query the oracle once at a perturbed point, stop if still zero
};

using PerturbFn = std::function<std::vector<double>(std::span<const double> x, std::size_t k)>;

struct SolverConfig
{
    double w = 0.5; // w' = 1 - w
    std::size_t max_iter = 0;
    std::vector<double> x0;
    StepSchedule schedule = StepSchedule::harmonic(1.0);
    ZeroDirectionPolicy zero_direction_policy = ZeroDirectionPolicy::stop;
    // Used by ZeroDirectionPolicy::skip; defaults to a relative 1e-8 shift per coordinate.
    PerturbFn perturb;
    // Cache F at archived points instead of re-evaluating during archive updates.
    bool memoize = false;
    // Check archive invariants after every iteration (also enabled by GHOPT_DEBUG_ASSERT=1).
    bool debug_assert = false;

    double w_prime() const noexcept { return 1.0 - w; }
    Weights weights() const { return Weights(w, w_prime()); }
    // Throws InvalidConfig / InvalidWeights.
    void validate() const;
};

struct Archive
{
    std::vector<std::vector<double>> efficient_set;
    std::vector<Interval> nondominated_set;

    friend bool operator==(const Archive &, const Archive &) = default;
};

struct ArchiveDelta
{
    std::vector<std::vector<double>> removed_efficient;
    std::vector<Interval> removed_nondominated;
    bool inserted_efficient = false;
    bool inserted_nondominated = false;
};

using EvalFn = std::function<Interval(std::span<const double>)>;

// One archive step: prune points whose value is strictly dominated by F_new and
// values dominated by F_new, then insert x_new / F_new if nothing left blocks them.
ArchiveDelta archive_update(Archive &archive, std::span<const double> x_new, const Interval &f_new,
                            const EvalFn &evaluate);

// No x, x' in the efficient set with F(x) ≺ F(x'), and no A ≠ B in the
// nondominated set with A ⪯ B.
bool archive_invariants_hold(const Archive &archive, const EvalFn &evaluate);

struct IterationRecord
{
    std::size_t k;
    std::vector<double> x;         // x_k
    Interval value;                // F(x_k)
    IntervalVector subgradient;    // Ĝ_k
    std::vector<double> direction; // W(Ĝ_k)
    double alpha;
    std::vector<double> x_next;    // x_{k+1}
    Interval value_next;           // F(x_{k+1})
    bool perturbed = false;        // Ĝ_k came from the zero-direction re-query
    ArchiveDelta delta;
};

enum class Termination
{
    max_iterations,
    zero_direction,
};

std::string_view to_string(Termination t) noexcept;

struct IterationTrace
{
    std::vector<double> initial_x;
    std::optional<Interval> initial_value;
    std::vector<IterationRecord> records;
    Termination termination = Termination::max_iterations;
    // Set when the run stopped on a zero scalarized subgradient at x_{records.size()+1}.
    std::optional<IntervalVector> zero_subgradient;

    // Number of iterates x_1, ..., x_{records.size()+1}; 0 for an empty trace.
    std::size_t iterate_count() const noexcept { return initial_value ? records.size() + 1 : 0; }
};

struct SolveResult
{
    Archive archive;
    IterationTrace trace;
};

// gH-subgradient method with W-map directions and dual archives.
// Throws OracleFailure, InvalidConfig, or whatever F raises on evaluation.
SolveResult solve(const Ivf &f, const SolverConfig &cfg);

struct TrajectoryPoint
{
    std::size_t k;
    Interval value;
};

// Greedy ⪯-monotone subsequence of iterate values starting at x_1. Throws EmptyTrace.
std::vector<TrajectoryPoint> best_trajectory(const IterationTrace &trace);

} // namespace ghopt

#endif
