#ifndef GHOPT_IVF_HPP
#define GHOPT_IVF_HPP

#include <ghopt/interval.hpp>
#include <ghopt/parallel.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ghopt
{

using RealFn = std::function<double(std::span<const double>)>;
using EndpointsFn = std::function<std::pair<double, double>(std::span<const double>)>;
using SubgradientOracle = std::function<IntervalVector(std::span<const double>)>;

// Interval-valued function F(x) = [f_lower(x), f_upper(x)] on R^n, optionally
// carrying a subgradient oracle. The callables must be pure and reentrant:
// checkers may call them concurrently.
class Ivf
{
public:
    Ivf(std::size_t dim, RealFn lower, RealFn upper, SubgradientOracle oracle = {});

    // Both endpoints from one callable, for functions that share work between them.
    static Ivf from_endpoints(std::size_t dim, EndpointsFn endpoints, SubgradientOracle oracle = {});
    // [f, f]
    static Ivf degenerate(std::size_t dim, RealFn f, SubgradientOracle oracle = {});

    std::size_t dim() const noexcept { return dim_; }

    // Throws DimensionMismatch or EndpointOrderViolation.
    Interval operator()(std::span<const double> x) const;
    std::pair<double, double> endpoints(std::span<const double> x) const;

    bool has_oracle() const noexcept { return static_cast<bool>(oracle_); }
    // Throws OracleFailure if there is no oracle, it throws, or it returns the wrong length.
    IntervalVector subgradient(std::span<const double> x) const;

    // The endpoint functions as degenerate IVFs.
    Ivf lower_part() const;
    Ivf upper_part() const;

private:
    Ivf(std::size_t dim, EndpointsFn endpoints, SubgradientOracle oracle, int);

    void check_dim(std::span<const double> x) const;

    std::size_t dim_;
    EndpointsFn endpoints_;
    SubgradientOracle oracle_;
};

inline Interval eval(const Ivf &f, std::span<const double> x)
{
    return f(x);
}

struct DerivativeOptions
{
    // Initial step; halved until successive estimates agree.
    double step = 1e-3;
    // Per-endpoint agreement, scaled by max(1, |value|).
    double tolerance = 1e-6;
    int max_halvings = 30;
    // Extrapolate 2*q(h/2) - q(h) per endpoint before comparing.
    bool richardson = true;
};

struct GhPartial
{
    Interval right;                    // (1/h) ⊙ (F(x + h e_i) ⊖gH F(x)), h -> 0+
    Interval left;                     // (1/-h) ⊙ (F(x - h e_i) ⊖gH F(x)), h -> 0+
    std::optional<Interval> two_sided; // present iff left and right agree
    bool right_converged = false;
    bool left_converged = false;
};

// i is 0-based. Throws DimensionMismatch, InvalidConfig for a bad step or index.
GhPartial numeric_gh_partial(const Ivf &f, std::span<const double> x, std::size_t i,
                             const DerivativeOptions &opts = {});

// Throws NotGHDifferentiable (1-based coordinate) when a partial has no two-sided value.
IntervalVector numeric_gh_gradient(const Ivf &f, std::span<const double> x, const DerivativeOptions &opts = {});

struct SubgradientViolation
{
    std::size_t sample_index;
    std::vector<double> x;
    Interval lhs; // (x - x̄)ᵀ ⊙ Ĝ
    Interval rhs; // F(x) ⊖gH F(x̄)
};

struct SubgradientCheckReport
{
    std::vector<double> point;
    IntervalVector candidate;
    std::size_t samples_checked = 0;
    std::vector<SubgradientViolation> violations; // ordered by sample index

    bool passed() const noexcept { return violations.empty(); }
};

struct SubgradientCheckOptions
{
    // lhs ⪯ rhs is accepted when each lhs endpoint exceeds the rhs endpoint by
    // at most slack * max(1, |rhs endpoint|).
    double slack = 1e-9;
    Execution execution = Execution::serial;
};

// Checks (x - x̄)ᵀ ⊙ Ĝ ⪯ F(x) ⊖gH F(x̄) at every sample.
SubgradientCheckReport check_subgradient(const Ivf &f, std::span<const double> x_bar, const IntervalVector &g,
                                         std::span<const std::vector<double>> samples,
                                         const SubgradientCheckOptions &opts = {});

struct Box
{
    std::vector<double> lo;
    std::vector<double> hi;

    std::size_t dim() const noexcept { return lo.size(); }
};

// Regular grid with points_per_axis points per axis (>= 2), endpoints included.
std::vector<std::vector<double>> grid_samples(const Box &box, std::size_t points_per_axis);
// Uniform samples drawn from a mt19937_64 stream seeded with seed.
std::vector<std::vector<double>> random_samples(const Box &box, std::size_t count, std::uint64_t seed);

enum class Endpoint
{
    lower,
    upper,
};

struct ConvexityWitness
{
    std::size_t trial;
    Endpoint endpoint;
    std::vector<double> x1;
    std::vector<double> x2;
    double lambda;
    double value_at_combination;   // f(λ x1 + (1-λ) x2)
    double chord_value;            // λ f(x1) + (1-λ) f(x2)
};

struct ConvexityResult
{
    bool convex = true;
    std::size_t trials = 0;
    std::size_t lower_violations = 0;
    std::size_t upper_violations = 0;
    std::optional<ConvexityWitness> witness; // first violating trial
};

struct ConvexityOptions
{
    double slack = 1e-9; // scaled by max(1, |chord value|)
    Execution execution = Execution::serial;
};

// Samples (x1, x2, λ) in the box and tests convexity of f_lower and f_upper
// separately.
ConvexityResult check_convexity(const Ivf &f, const Box &domain, std::size_t trials, std::uint64_t seed,
                                const ConvexityOptions &opts = {});

// Samples λ on a regular grid inside (0, δ) and checks F(x̄) ⋠ F(x̄ + λ d) at each.
bool check_efficient_direction_condition_i(const Ivf &f, std::span<const double> x_bar, std::span<const double> d,
                                           double delta, std::size_t samples);

} // namespace ghopt

#endif
