#include <doctest.h>

#include <ghopt/error.hpp>
#include <ghopt/problems.hpp>
#include <ghopt/solver.hpp>

#include <cmath>

using namespace ghopt;

namespace
{

SolverConfig kinked_config(std::size_t m)
{
    SolverConfig cfg;
    cfg.w = 2.0 / 3.0;
    cfg.max_iter = m;
    cfg.x0 = {-1};
    cfg.schedule = StepSchedule::harmonic(1);
    return cfg;
}

Ivf square()
{
    return Ivf::degenerate(
        1, [](std::span<const double> x) { return x[0] * x[0]; },
        [](std::span<const double> x) { return IntervalVector{Interval::point(2 * x[0])}; });
}

EvalFn kinked_eval()
{
    return [](std::span<const double> x) { return problems::kinked_example_value(x[0]); };
}

} // namespace

TEST_CASE("step schedules")
{
    CHECK(StepSchedule::harmonic(1)(4) == 0.25);
    CHECK(StepSchedule::shifted(7, 100000)(1) == 7.0 / 100001.0);
    CHECK(StepSchedule::parse("harmonic:2")(2) == 1.0);
    CHECK(StepSchedule::parse("shifted:7,100000")(5) == 7.0 / 100005.0);
    CHECK(StepSchedule::parse("shifted:7,100000").describe() == StepSchedule::shifted(7, 100000).describe());
    CHECK_THROWS_AS(StepSchedule::parse("constant:1"), ParseError);
    CHECK_THROWS_AS(StepSchedule::parse("harmonic:"), ParseError);
    CHECK_THROWS_AS(StepSchedule::parse("shifted:1"), ParseError);
    CHECK_THROWS(StepSchedule::harmonic(-1).validate(10));
    CHECK_THROWS(StepSchedule::custom([](std::size_t) { return 0.0; }).validate(10));
    CHECK_NOTHROW(StepSchedule::custom([](std::size_t k) { return 1.0 / double(k * k); }).validate(10));
}

TEST_CASE("config validation")
{
    SolverConfig cfg = kinked_config(2);
    CHECK_NOTHROW(cfg.validate());
    cfg.w = 1.5;
    CHECK_THROWS_AS(cfg.validate(), InvalidWeights);
    cfg = kinked_config(2);
    cfg.x0 = {};
    CHECK_THROWS(cfg.validate());
    cfg = kinked_config(2);
    cfg.x0 = {-1, 0};
    CHECK_THROWS_AS(solve(problems::kinked_example(), cfg), DimensionMismatch);
    const Ivf no_oracle(1, [](std::span<const double> x) { return x[0]; }, [](std::span<const double> x) { return x[0]; });
    CHECK_THROWS_AS(solve(no_oracle, kinked_config(2)), OracleFailure);
}

TEST_CASE("kinked example trajectory")
{
    const SolveResult r = solve(problems::kinked_example(), kinked_config(2));
    REQUIRE(r.trace.records.size() == 2);
    const auto &first = r.trace.records[0];
    CHECK(first.subgradient == IntervalVector{Interval(-1.5, -0.5)});
    CHECK(std::abs(first.direction[0] + 7.0 / 6.0) <= 1e-15);
    CHECK(std::abs(first.x_next[0] - 1.0 / 6.0) <= 1e-12);
    const auto &second = r.trace.records[1];
    CHECK(second.subgradient == IntervalVector{Interval(0, 1)});
    CHECK(second.alpha == 0.5);
    CHECK(std::abs(second.x_next[0]) <= 1e-12);
    CHECK(second.value_next == Interval(3, 7));
    REQUIRE(r.archive.efficient_set.size() == 1);
    CHECK(std::abs(r.archive.efficient_set[0][0]) <= 1e-12);
    CHECK(r.archive.nondominated_set == std::vector<Interval>{Interval(3, 7)});
    CHECK(r.trace.termination == Termination::max_iterations);

    const auto best = best_trajectory(r.trace);
    REQUIRE(best.size() == 3);
    CHECK(best[0].k == 1);
    CHECK(best[0].value == Interval(4, 7));
    CHECK(best[1].k == 2);
    CHECK(std::abs(best[1].value.lo() - 19.0 / 6.0) <= 1e-12);
    CHECK(best[2].value == Interval(3, 7));
}

TEST_CASE("zero iterations keep only the start")
{
    const SolveResult r = solve(problems::kinked_example(), kinked_config(0));
    CHECK(r.trace.records.empty());
    CHECK(r.archive.efficient_set == std::vector<std::vector<double>>{{-1}});
    CHECK(r.archive.nondominated_set == std::vector<Interval>{Interval(4, 7)});
    CHECK(r.trace.iterate_count() == 1);
    const auto best = best_trajectory(r.trace);
    REQUIRE(best.size() == 1);
    CHECK(best[0].value == Interval(4, 7));
    CHECK_THROWS_AS(best_trajectory(IterationTrace{}), EmptyTrace);
}

TEST_CASE("zero direction handling")
{
    SolverConfig cfg = kinked_config(5);
    cfg.w = 0.5;
    const SolveResult stop = solve(problems::kinked_example(), cfg);
    CHECK(stop.trace.termination == Termination::zero_direction);
    CHECK(stop.trace.records.size() == 1);
    REQUIRE(stop.trace.zero_subgradient.has_value());
    CHECK((*stop.trace.zero_subgradient)[0] == Interval(0, 0));

    cfg.zero_direction_policy = ZeroDirectionPolicy::skip;
    const SolveResult skip = solve(problems::kinked_example(), cfg);
    CHECK(skip.trace.records.size() == 5);
    CHECK(skip.trace.records[1].perturbed);
    CHECK(skip.trace.records[1].subgradient[0] == Interval(0, 1));

    cfg.perturb = [](std::span<const double> x, std::size_t) { return std::vector<double>(x.begin(), x.end()); };
    const SolveResult stuck = solve(problems::kinked_example(), cfg);
    CHECK(stuck.trace.termination == Termination::zero_direction);
}

TEST_CASE("degenerate IVF reduces to the classical method")
{
    SolverConfig cfg;
    cfg.w = 0.3;
    cfg.max_iter = 50;
    cfg.x0 = {1};
    cfg.schedule = StepSchedule::harmonic(1);
    cfg.zero_direction_policy = ZeroDirectionPolicy::skip;
    const SolveResult r = solve(square(), cfg);
    REQUIRE(r.archive.efficient_set.size() == 1);
    CHECK(std::abs(r.archive.efficient_set[0][0]) <= 0.2);

    cfg.x0 = {1.3};
    cfg.schedule = StepSchedule::shifted(1, 2);
    cfg.max_iter = 100;
    const SolveResult s = solve(square(), cfg);
    double x = 1.3;
    REQUIRE(s.trace.records.size() == 100);
    for (std::size_t k = 1; k <= 100; ++k) {
        x = x - (1.0 / (double(k) + 2.0)) * (2 * x);
        CHECK(s.trace.records[k - 1].x_next[0] == x);
    }
}

TEST_CASE("archive update cases")
{
    const EvalFn eval = kinked_eval();
    Archive a{{{-1}}, {Interval(4, 7)}};
    const std::vector<double> sixth{1.0 / 6.0};
    const auto d = archive_update(a, sixth, Interval(19.0 / 6.0, 7), eval);
    CHECK(a.efficient_set == std::vector<std::vector<double>>{sixth});
    CHECK(a.nondominated_set == std::vector<Interval>{Interval(19.0 / 6.0, 7)});
    CHECK(d.removed_efficient == std::vector<std::vector<double>>{{-1}});
    CHECK(d.removed_nondominated == std::vector<Interval>{Interval(4, 7)});
    CHECK(d.inserted_efficient);
    CHECK(d.inserted_nondominated);

    Archive b{{{0}}, {Interval(3, 7)}};
    const Archive before = b;
    const std::vector<double> half{0.5};
    const auto d2 = archive_update(b, half, Interval(3.5, 7), eval);
    CHECK(b == before);
    CHECK_FALSE(d2.inserted_efficient);
    CHECK_FALSE(d2.inserted_nondominated);

    const EvalFn table = [](std::span<const double> x) { return x[0] < 0.5 ? Interval(3, 7) : Interval(2, 9); };
    Archive c{{{0}}, {Interval(3, 7)}};
    const std::vector<double> one{1};
    archive_update(c, one, Interval(2, 9), table);
    CHECK(c.efficient_set.size() == 2);
    CHECK(c.nondominated_set.size() == 2);
    CHECK(archive_invariants_hold(c, table));
}

TEST_CASE("archive keeps equal values once and points that tie")
{
    const EvalFn constant = [](std::span<const double>) { return Interval(1, 2); };
    Archive a{{{0}}, {Interval(1, 2)}};
    const std::vector<double> p{3};
    archive_update(a, p, Interval(1, 2), constant);
    CHECK(a.nondominated_set.size() == 1);
    CHECK(archive_invariants_hold(a, constant));
}

TEST_CASE("memoization and invariant checking do not change results")
{
    SolverConfig cfg = kinked_config(40);
    const SolveResult plain = solve(problems::kinked_example(), cfg);
    cfg.memoize = true;
    cfg.debug_assert = true;
    const SolveResult checked = solve(problems::kinked_example(), cfg);
    CHECK(plain.archive == checked.archive);
    REQUIRE(plain.trace.records.size() == checked.trace.records.size());
    for (std::size_t i = 0; i < plain.trace.records.size(); ++i) {
        CHECK(plain.trace.records[i].x_next == checked.trace.records[i].x_next);
    }
}

TEST_CASE("best trajectory is monotone")
{
    const SolveResult r = solve(problems::kinked_example(), kinked_config(200));
    const auto best = best_trajectory(r.trace);
    for (std::size_t i = 1; i < best.size(); ++i) {
        CHECK(dominates(best[i].value, best[i - 1].value));
        CHECK(best[i].k > best[i - 1].k);
    }
    CHECK(to_string(Termination::zero_direction) == "zero_direction");
}
