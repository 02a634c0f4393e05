#include <ghopt/problems.hpp>

#include <cmath>

namespace ghopt::problems
{

Interval kinked_example_value(double x)
{
    const Interval ax = Interval::point(std::abs(x));
    if (-1.0 <= x && x <= 1.0) {
        return gh_sub(Interval(3, 7), mul(Interval(-1, 0), ax));
    }
    return add(Interval(3, 5), mul(Interval(1, 2), ax));
}

namespace
{

IntervalVector kinked_example_subgradient(double x)
{
    if (x == -1.0) {
        return {Interval(-1.5, -0.5)};
    }
    if (x == 1.0) {
        return {Interval(0.5, 1.5)};
    }
    if (x == 0.0) {
        return {Interval(0, 0)};
    }
    if (x < -1.0) {
        return {Interval(-2, -1)};
    }
    if (x < 0.0) {
        return {Interval(-1, 0)};
    }
    if (x < 1.0) {
        return {Interval(0, 1)};
    }
    return {Interval(1, 2)};
}

} // namespace

Ivf kinked_example()
{
    return Ivf::from_endpoints(
        1,
        [](std::span<const double> x) {
            const Interval v = kinked_example_value(x[0]);
            return std::pair{v.lo(), v.hi()};
        },
        [](std::span<const double> x) { return kinked_example_subgradient(x[0]); });
}

LassoDataset interval_lasso_data()
{
    struct Row
    {
        double x1_lo, x1_hi, x2_lo, x2_hi, y_lo, y_hi;
    };
    static constexpr Row rows[] = {
        {15.88, 16.54, 37.28, 38.04, 398.74, 409.02}, {16.41, 16.85, 37.84, 38.4, 405.9, 413.5},
        {16.87, 17.43, 38.48, 38.97, 413.5, 420.95},  {16.77, 17.29, 38.3, 38.97, 411.48, 420.39},
        {16.35, 17, 38.93, 39.52, 415.47, 424.18},    {16.5, 16.84, 39.57, 40.32, 421.83, 430.74},
        {16.33, 16.77, 39.66, 40.29, 421.96, 430.19}, {16.82, 17.09, 39.77, 40.2, 424.91, 430.66},
        {16.54, 17.13, 39.96, 40.84, 425.5, 436.58},  {16.71, 17.31, 40.52, 41.22, 431.22, 440.72},
        {17.13, 17.62, 40.35, 41.05, 431.37, 440.43}, {16.03, 16.59, 41.09, 41.5, 433.63, 440.36},
    };
    std::vector<LassoSample> samples;
    for (const auto &r : rows) {
        samples.push_back({IntervalVector{Interval(r.x1_lo, r.x1_hi), Interval(r.x2_lo, r.x2_hi)},
                           Interval(r.y_lo, r.y_hi)});
    }
    return LassoDataset(std::move(samples));
}

} // namespace ghopt::problems
