#include <ghopt/error.hpp>
#include <ghopt/ivf.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace ghopt
{

Ivf::Ivf(std::size_t dim, RealFn lower, RealFn upper, SubgradientOracle oracle)
    : Ivf(dim,
          EndpointsFn([lower = std::move(lower), upper = std::move(upper)](std::span<const double> x) {
              return std::pair{lower(x), upper(x)};
          }),
          std::move(oracle), 0)
{
}

Ivf::Ivf(std::size_t dim, EndpointsFn endpoints, SubgradientOracle oracle, int)
    : dim_(dim), endpoints_(std::move(endpoints)), oracle_(std::move(oracle))
{
    if (dim_ == 0) {
        throw InvalidConfig("IVF dimension must be positive");
    }
    if (!endpoints_) {
        throw InvalidConfig("IVF needs endpoint functions");
    }
}

Ivf Ivf::from_endpoints(std::size_t dim, EndpointsFn endpoints, SubgradientOracle oracle)
{
    return Ivf(dim, std::move(endpoints), std::move(oracle), 0);
}

Ivf Ivf::degenerate(std::size_t dim, RealFn f, SubgradientOracle oracle)
{
    return Ivf(
        dim,
        EndpointsFn([f = std::move(f)](std::span<const double> x) {
            const double v = f(x);
            return std::pair{v, v};
        }),
        std::move(oracle), 0);
}

void Ivf::check_dim(std::span<const double> x) const
{
    if (x.size() != dim_) {
        throw DimensionMismatch("IVF of dimension " + std::to_string(dim_) + " evaluated at a point of length "
                                + std::to_string(x.size()));
    }
}

std::pair<double, double> Ivf::endpoints(std::span<const double> x) const
{
    check_dim(x);
    return endpoints_(x);
}

Interval Ivf::operator()(std::span<const double> x) const
{
    const auto [lo, hi] = endpoints(x);
    if (lo > hi) {
        throw EndpointOrderViolation("f_lower = " + std::to_string(lo) + " exceeds f_upper = " + std::to_string(hi));
    }
    return Interval(lo, hi);
}

IntervalVector Ivf::subgradient(std::span<const double> x) const
{
    check_dim(x);
    if (!oracle_) {
        throw OracleFailure("IVF has no subgradient oracle");
    }
    IntervalVector g;
    try {
        g = oracle_(x);
    } catch (const std::exception &e) {
        throw OracleFailure(std::string("subgradient oracle failed: ") + e.what());
    }
    if (g.size() != dim_) {
        throw OracleFailure("subgradient oracle returned " + std::to_string(g.size()) + " components, expected "
                            + std::to_string(dim_));
    }
    return g;
}

Ivf Ivf::lower_part() const
{
    return Ivf(
        dim_, EndpointsFn([e = endpoints_](std::span<const double> x) {
            const double v = e(x).first;
            return std::pair{v, v};
        }),
        {}, 0);
}

Ivf Ivf::upper_part() const
{
    return Ivf(
        dim_, EndpointsFn([e = endpoints_](std::span<const double> x) {
            const double v = e(x).second;
            return std::pair{v, v};
        }),
        {}, 0);
}

namespace
{

double scale(double v)
{
    return std::max(1.0, std::abs(v));
}

bool agree(const Interval &a, const Interval &b, double tol)
{
    return std::abs(a.lo() - b.lo()) <= tol * scale(a.lo()) && std::abs(a.hi() - b.hi()) <= tol * scale(a.hi());
}

Interval extrapolate(const Interval &coarse, const Interval &fine)
{
    const double lo = 2.0 * fine.lo() - coarse.lo();
    const double hi = 2.0 * fine.hi() - coarse.hi();
    return Interval(std::min(lo, hi), std::max(lo, hi));
}

struct OneSided
{
    Interval value;
    bool converged;
};

// direction is +1 or -1.
OneSided one_sided_quotient(const Ivf &f, std::span<const double> x, const Interval &fx, std::size_t i,
                            double direction, const DerivativeOptions &opts)
{
    std::vector<double> probe(x.begin(), x.end());
    auto quotient = [&](double h) {
        probe[i] = x[i] + direction * h;
        // Use the realized step so the quotient matches the point actually evaluated.
        const double realized = probe[i] - x[i];
        return scalar_mul(1.0 / realized, gh_sub(f(probe), fx));
    };

    double h = opts.step;
    Interval q_prev = quotient(h);
    std::optional<Interval> est_prev;
    Interval est = q_prev;
    for (int j = 0; j < opts.max_halvings; ++j) {
        h *= 0.5;
        const Interval q = quotient(h);
        est = opts.richardson ? extrapolate(q_prev, q) : q;
        if (est_prev && agree(*est_prev, est, opts.tolerance)) {
            return {est, true};
        }
        if (!opts.richardson && agree(q_prev, q, opts.tolerance)) {
            return {q, true};
        }
        est_prev = est;
        q_prev = q;
    }
    return {est, false};
}

} // namespace

GhPartial numeric_gh_partial(const Ivf &f, std::span<const double> x, std::size_t i, const DerivativeOptions &opts)
{
    if (x.size() != f.dim()) {
        throw DimensionMismatch("point of length " + std::to_string(x.size()) + " for IVF of dimension "
                                + std::to_string(f.dim()));
    }
    if (i >= f.dim()) {
        throw InvalidConfig("coordinate index " + std::to_string(i) + " out of range");
    }
    if (!(opts.step > 0.0)) {
        throw InvalidConfig("derivative step must be positive");
    }
    const Interval fx = f(x);
    const auto right = one_sided_quotient(f, x, fx, i, +1.0, opts);
    const auto left = one_sided_quotient(f, x, fx, i, -1.0, opts);

    GhPartial out{right.value, left.value, std::nullopt, right.converged, left.converged};
    if (agree(left.value, right.value, opts.tolerance)) {
        out.two_sided = Interval(0.5 * (left.value.lo() + right.value.lo()), 0.5 * (left.value.hi() + right.value.hi()));
    }
    return out;
}

IntervalVector numeric_gh_gradient(const Ivf &f, std::span<const double> x, const DerivativeOptions &opts)
{
    IntervalVector g(f.dim());
    for (std::size_t i = 0; i < f.dim(); ++i) {
        const auto p = numeric_gh_partial(f, x, i, opts);
        if (!p.two_sided) {
            throw NotGHDifferentiable(i + 1, "not gH-differentiable in coordinate " + std::to_string(i + 1)
                                                 + ": left " + to_string(p.left) + " vs right " + to_string(p.right));
        }
        g[i] = *p.two_sided;
    }
    return g;
}

namespace
{

bool exceeds(double lhs, double rhs, double slack)
{
    return lhs > rhs + slack * scale(rhs);
}

} // namespace

SubgradientCheckReport check_subgradient(const Ivf &f, std::span<const double> x_bar, const IntervalVector &g,
                                         std::span<const std::vector<double>> samples,
                                         const SubgradientCheckOptions &opts)
{
    if (x_bar.size() != f.dim() || g.size() != f.dim()) {
        throw DimensionMismatch("subgradient check needs point and candidate of dimension " + std::to_string(f.dim()));
    }
    for (const auto &s : samples) {
        if (s.size() != f.dim()) {
            throw DimensionMismatch("sample of length " + std::to_string(s.size()) + " for IVF of dimension "
                                    + std::to_string(f.dim()));
        }
    }

    const Interval f_bar = f(x_bar);
    std::vector<std::optional<SubgradientViolation>> found(samples.size());
    for_each_index(samples.size(), opts.execution, [&](std::size_t j) {
        const auto &x = samples[j];
        std::vector<double> d(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            d[i] = x[i] - x_bar[i];
        }
        const Interval lhs = interval_dot(d, g);
        const Interval rhs = gh_sub(f(x), f_bar);
        if (exceeds(lhs.lo(), rhs.lo(), opts.slack) || exceeds(lhs.hi(), rhs.hi(), opts.slack)) {
            found[j] = SubgradientViolation{j, x, lhs, rhs};
        }
    });

    SubgradientCheckReport report;
    report.point.assign(x_bar.begin(), x_bar.end());
    report.candidate = g;
    report.samples_checked = samples.size();
    for (auto &v : found) {
        if (v) {
            report.violations.push_back(std::move(*v));
        }
    }
    return report;
}

std::vector<std::vector<double>> grid_samples(const Box &box, std::size_t points_per_axis)
{
    if (box.lo.size() != box.hi.size() || box.lo.empty()) {
        throw DimensionMismatch("box bounds must have equal nonzero length");
    }
    if (points_per_axis < 2) {
        throw InvalidConfig("grid needs at least 2 points per axis");
    }
    const std::size_t n = box.dim();
    std::size_t total = 1;
    for (std::size_t i = 0; i < n; ++i) {
        total *= points_per_axis;
    }
    std::vector<std::vector<double>> out;
    out.reserve(total);
    std::vector<std::size_t> idx(n, 0);
    for (std::size_t t = 0; t < total; ++t) {
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i) {
            const double u = static_cast<double>(idx[i]) / static_cast<double>(points_per_axis - 1);
            x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * u;
        }
        out.push_back(std::move(x));
        for (std::size_t i = 0; i < n; ++i) {
            if (++idx[i] < points_per_axis) {
                break;
            }
            idx[i] = 0;
        }
    }
    return out;
}

namespace
{

std::vector<double> draw_point(const Box &box, std::mt19937_64 &rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> x(box.dim());
    for (std::size_t i = 0; i < box.dim(); ++i) {
        x[i] = box.lo[i] + (box.hi[i] - box.lo[i]) * unit(rng);
    }
    return x;
}

void check_box(const Box &box)
{
    if (box.lo.size() != box.hi.size() || box.lo.empty()) {
        throw DimensionMismatch("box bounds must have equal nonzero length");
    }
    for (std::size_t i = 0; i < box.dim(); ++i) {
        if (!(box.lo[i] <= box.hi[i])) {
            throw InvalidConfig("box lower bound exceeds upper bound on axis " + std::to_string(i + 1));
        }
    }
}

} // namespace

std::vector<std::vector<double>> random_samples(const Box &box, std::size_t count, std::uint64_t seed)
{
    check_box(box);
    std::mt19937_64 rng(seed);
    std::vector<std::vector<double>> out;
    out.reserve(count);
    for (std::size_t t = 0; t < count; ++t) {
        out.push_back(draw_point(box, rng));
    }
    return out;
}

ConvexityResult check_convexity(const Ivf &f, const Box &domain, std::size_t trials, std::uint64_t seed,
                                const ConvexityOptions &opts)
{
    check_box(domain);
    if (domain.dim() != f.dim()) {
        throw DimensionMismatch("convexity box of dimension " + std::to_string(domain.dim()) + " for IVF of dimension "
                                + std::to_string(f.dim()));
    }
    if (trials == 0) {
        throw InvalidConfig("convexity check needs at least one trial");
    }

    struct Trial
    {
        std::vector<double> x1, x2;
        double lambda;
    };
    // Draws happen up front so the sample stream does not depend on execution.
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<Trial> plan;
    plan.reserve(trials);
    for (std::size_t t = 0; t < trials; ++t) {
        auto x1 = draw_point(domain, rng);
        auto x2 = draw_point(domain, rng);
        const double lambda = unit(rng);
        plan.push_back({std::move(x1), std::move(x2), lambda});
    }

    struct Outcome
    {
        bool lower_bad = false, upper_bad = false;
        double lower_value = 0, lower_chord = 0, upper_value = 0, upper_chord = 0;
    };
    std::vector<Outcome> outcomes(trials);
    for_each_index(trials, opts.execution, [&](std::size_t t) {
        const auto &tr = plan[t];
        std::vector<double> xc(tr.x1.size());
        for (std::size_t i = 0; i < xc.size(); ++i) {
            xc[i] = tr.lambda * tr.x1[i] + (1.0 - tr.lambda) * tr.x2[i];
        }
        const auto [l1, u1] = f.endpoints(tr.x1);
        const auto [l2, u2] = f.endpoints(tr.x2);
        const auto [lc, uc] = f.endpoints(xc);
        Outcome &o = outcomes[t];
        o.lower_value = lc;
        o.lower_chord = tr.lambda * l1 + (1.0 - tr.lambda) * l2;
        o.upper_value = uc;
        o.upper_chord = tr.lambda * u1 + (1.0 - tr.lambda) * u2;
        o.lower_bad = exceeds(o.lower_value, o.lower_chord, opts.slack);
        o.upper_bad = exceeds(o.upper_value, o.upper_chord, opts.slack);
    });

    ConvexityResult result;
    result.trials = trials;
    for (std::size_t t = 0; t < trials; ++t) {
        const auto &o = outcomes[t];
        result.lower_violations += o.lower_bad ? 1 : 0;
        result.upper_violations += o.upper_bad ? 1 : 0;
        if ((o.lower_bad || o.upper_bad) && !result.witness) {
            const bool lower = o.lower_bad;
            result.witness = ConvexityWitness{t,
                                              lower ? Endpoint::lower : Endpoint::upper,
                                              plan[t].x1,
                                              plan[t].x2,
                                              plan[t].lambda,
                                              lower ? o.lower_value : o.upper_value,
                                              lower ? o.lower_chord : o.upper_chord};
        }
    }
    result.convex = !result.witness.has_value();
    return result;
}

bool check_efficient_direction_condition_i(const Ivf &f, std::span<const double> x_bar, std::span<const double> d,
                                           double delta, std::size_t samples)
{
    if (x_bar.size() != f.dim() || d.size() != f.dim()) {
        throw DimensionMismatch("point and direction must match the IVF dimension");
    }
    if (!(delta > 0.0)) {
        throw InvalidConfig("delta must be positive");
    }
    if (samples == 0) {
        throw InvalidConfig("at least one sample is required");
    }
    const Interval f_bar = f(x_bar);
    std::vector<double> x(x_bar.size());
    for (std::size_t j = 1; j <= samples; ++j) {
        const double lambda = delta * static_cast<double>(j) / static_cast<double>(samples + 1);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = x_bar[i] + lambda * d[i];
        }
        if (dominates(f_bar, f(x))) {
            return false;
        }
    }
    return true;
}

} // namespace ghopt
