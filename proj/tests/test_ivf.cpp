#include <doctest.h>

#include <ghopt/error.hpp>
#include <ghopt/ivf.hpp>
#include <ghopt/lasso.hpp>
#include <ghopt/problems.hpp>

#include <cmath>

using namespace ghopt;

namespace
{

Interval at(const Ivf &f, double x)
{
    const std::vector<double> p{x};
    return f(p);
}

std::vector<std::vector<double>> line_grid(double lo, double hi, double step)
{
    std::vector<std::vector<double>> out;
    const auto n = static_cast<int>(std::lround((hi - lo) / step));
    for (int i = 0; i <= n; ++i) {
        out.push_back({lo + i * step});
    }
    return out;
}

} // namespace

TEST_CASE("kinked example values")
{
    const Ivf f = problems::kinked_example();
    CHECK(at(f, -1) == Interval(4, 7));
    CHECK(at(f, 0) == Interval(3, 7));
    CHECK(at(f, -2) == Interval(5, 9));
    const Interval v = at(f, 1.0 / 6.0);
    CHECK(std::abs(v.lo() - 19.0 / 6.0) <= 1e-15);
    CHECK(v.hi() == 7);
}

TEST_CASE("evaluation checks dimension and endpoint order")
{
    const Ivf f(2, [](std::span<const double> x) { return x[0]; }, [](std::span<const double> x) { return x[1]; });
    const std::vector<double> ok{1, 2}, bad{2, 1}, short_x{1};
    CHECK(f(ok) == Interval(1, 2));
    CHECK_THROWS_AS(f(bad), EndpointOrderViolation);
    CHECK_THROWS_AS(f(short_x), DimensionMismatch);
    CHECK_FALSE(f.has_oracle());
    CHECK_THROWS_AS(f.subgradient(ok), OracleFailure);
    CHECK(f.lower_part()(bad) == Interval(2, 2));
    CHECK(f.upper_part()(bad) == Interval(1, 1));
}

TEST_CASE("oracle failures are wrapped")
{
    const Ivf throwing = Ivf::degenerate(
        1, [](std::span<const double> x) { return x[0]; },
        [](std::span<const double>) -> IntervalVector { throw std::runtime_error("boom"); });
    const Ivf wrong_len = Ivf::degenerate(
        1, [](std::span<const double> x) { return x[0]; },
        [](std::span<const double>) { return IntervalVector{Interval(0, 0), Interval(0, 0)}; });
    const std::vector<double> x{0};
    CHECK_THROWS_AS(throwing.subgradient(x), OracleFailure);
    CHECK_THROWS_AS(wrong_len.subgradient(x), OracleFailure);
}

TEST_CASE("one-sided gH quotients at the kink x = -1")
{
    const Ivf f = problems::kinked_example();
    const std::vector<double> x{-1};
    const GhPartial p = numeric_gh_partial(f, x, 0);
    CHECK(p.right_converged);
    CHECK(p.left_converged);
    CHECK(std::abs(p.right.lo() + 1) <= 1e-6);
    CHECK(std::abs(p.right.hi() - 0) <= 1e-6);
    CHECK(std::abs(p.left.lo() + 2) <= 1e-6);
    CHECK(std::abs(p.left.hi() + 1) <= 1e-6);
    CHECK_FALSE(p.two_sided.has_value());
}

TEST_CASE("gH gradient where it exists")
{
    const Ivf f = problems::kinked_example();
    const std::vector<double> x{1.0 / 6.0};
    const IntervalVector g = numeric_gh_gradient(f, x);
    CHECK(std::abs(g[0].lo()) <= 1e-6);
    CHECK(std::abs(g[0].hi() - 1) <= 1e-6);

    const std::vector<double> zero{0};
    try {
        numeric_gh_gradient(f, zero);
        FAIL("expected NotGHDifferentiable");
    } catch (const NotGHDifferentiable &e) {
        CHECK(e.coordinate() == 1);
    }

    const Ivf constant(1, [](std::span<const double>) { return 3.0; }, [](std::span<const double>) { return 7.0; });
    const IntervalVector c = numeric_gh_gradient(constant, x);
    CHECK(c[0] == Interval(0, 0));
}

TEST_CASE("numeric gradient of a smooth 2-D IVF")
{
    const Ivf f(
        2, [](std::span<const double> x) { return x[0] * x[0] + x[1]; },
        [](std::span<const double> x) { return x[0] * x[0] + 3 * x[1] + 10; });
    const std::vector<double> x{1.5, -2};
    const IntervalVector g = numeric_gh_gradient(f, x);
    CHECK(std::abs(g[0].lo() - 3) <= 1e-6);
    CHECK(std::abs(g[0].hi() - 3) <= 1e-6);
    CHECK(std::abs(g[1].lo() - 1) <= 1e-6);
    CHECK(std::abs(g[1].hi() - 3) <= 1e-6);
}

TEST_CASE("subgradient inequality check")
{
    const Ivf f = problems::kinked_example();
    const std::vector<double> x{-1};
    const auto samples = line_grid(-3, 3, 0.01);

    const auto good = check_subgradient(f, x, IntervalVector{Interval(-1.5, -0.5)}, samples);
    CHECK(good.passed());
    CHECK(good.samples_checked == samples.size());

    const auto bad = check_subgradient(f, x, IntervalVector{Interval(-3, -3)}, samples);
    CHECK_FALSE(bad.passed());
    CHECK(bad.violations.front().sample_index < bad.violations.back().sample_index + 1);

    const std::vector<std::vector<double>> self{x};
    CHECK(check_subgradient(f, x, IntervalVector{Interval(-100, 100)}, self).passed());

    // At every point the oracle's choice satisfies the inequality on the grid.
    for (double p : {-2.5, -1.0, -0.4, 0.0, 0.3, 1.0, 2.2}) {
        const std::vector<double> xp{p};
        CHECK(check_subgradient(f, xp, f.subgradient(xp), samples).passed());
    }
}

TEST_CASE("subgradient check rejects mismatched lengths")
{
    const Ivf f = problems::kinked_example();
    const std::vector<double> x{-1};
    const std::vector<std::vector<double>> samples{{0.0, 1.0}};
    CHECK_THROWS(check_subgradient(f, x, IntervalVector{Interval(0, 0)}, samples));
}

TEST_CASE("sampling helpers")
{
    const Box box{{0, -1}, {1, 1}};
    const auto grid = grid_samples(box, 3);
    CHECK(grid.size() == 9);
    CHECK(grid.front() == std::vector<double>{0, -1});
    CHECK(grid.back() == std::vector<double>{1, 1});
    const auto a = random_samples(box, 50, 11);
    const auto b = random_samples(box, 50, 11);
    CHECK(a == b);
    for (const auto &p : a) {
        CHECK(p[0] >= 0);
        CHECK(p[0] <= 1);
        CHECK(p[1] >= -1);
        CHECK(p[1] <= 1);
    }
}

TEST_CASE("convexity sampling")
{
    const Box line{{-3}, {3}};
    const auto kinked = check_convexity(problems::kinked_example(), line, 10000, 1);
    CHECK(kinked.convex);
    CHECK(kinked.trials == 10000);

    const Ivf concave(
        1, [](std::span<const double> x) { return -x[0] * x[0]; },
        [](std::span<const double> x) { return -x[0] * x[0] + 1; });
    const auto r = check_convexity(concave, Box{{-1}, {1}}, 1000, 2);
    CHECK_FALSE(r.convex);
    REQUIRE(r.witness.has_value());
    CHECK(r.witness->value_at_combination > r.witness->chord_value);
    CHECK(r.lower_violations > 0);
    CHECK(r.upper_violations > 0);
}

TEST_CASE("lasso error lower endpoint is not convex near the fitted parameters")
{
    // E.lo sums min(r_lo^2, r_hi^2) terms; a pointwise minimum of convex
    // functions, so convexity sampling finds violations.
    auto ds = std::make_shared<const LassoDataset>(problems::interval_lasso_data());
    const Ivf e = make_error_ivf(ds, TuningParameter(Interval(0.03, 0.06)));
    const auto r = check_convexity(e, Box{{4.5, 7.5}, {6.5, 9.5}}, 2000, 3);
    CHECK_FALSE(r.convex);
    CHECK(r.lower_violations > 0);
    CHECK(r.upper_violations == 0);
}

TEST_CASE("efficient direction condition")
{
    const Ivf f = problems::kinked_example();
    const std::vector<double> m1{-1}, half{0.5};
    const std::vector<double> right{7.0 / 6.0}, unit{1}, zero{0};
    CHECK(check_efficient_direction_condition_i(f, m1, right, 1, 200));
    CHECK_FALSE(check_efficient_direction_condition_i(f, m1, zero, 1, 200));
    CHECK_FALSE(check_efficient_direction_condition_i(f, half, unit, 0.4, 200));
}
