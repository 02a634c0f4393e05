#include <doctest.h>

#include <ghopt/error.hpp>
#include <ghopt/ivf.hpp>
#include <ghopt/lasso.hpp>
#include <ghopt/parallel.hpp>
#include <ghopt/problems.hpp>

#include <atomic>
#include <random>

using namespace ghopt;

namespace
{

LassoDataset synthetic(std::size_t n, std::size_t l, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-5, 5), w(0, 1);
    std::vector<LassoSample> samples;
    for (std::size_t k = 0; k < n; ++k) {
        std::vector<Interval> x;
        for (std::size_t i = 0; i < l; ++i) {
            const double a = u(rng);
            x.emplace_back(a, a + w(rng));
        }
        const double y = u(rng);
        samples.push_back({IntervalVector(std::move(x)), Interval(y, y + w(rng))});
    }
    return LassoDataset(std::move(samples));
}

} // namespace

TEST_CASE("for_each_index visits every index once")
{
    for (auto exec : {Execution::serial, Execution::parallel}) {
        std::vector<std::atomic<int>> hits(1000);
        for_each_index(hits.size(), exec, [&](std::size_t i) { hits[i]++; });
        for (auto &h : hits) {
            CHECK(h.load() == 1);
        }
    }
}

TEST_CASE("for_each_index rethrows the lowest failing index")
{
    for (auto exec : {Execution::serial, Execution::parallel}) {
        try {
            for_each_index(100, exec, [](std::size_t i) {
                if (i == 17 || i == 80) {
                    throw InvalidConfig("index " + std::to_string(i));
                }
            });
            FAIL("expected exception");
        } catch (const InvalidConfig &e) {
            CHECK(std::string(e.what()) == "index 17");
        }
    }
}

TEST_CASE("subgradient check: serial and parallel reports agree")
{
    const Ivf f = problems::kinked_example();
    const std::vector<double> x{-1};
    const auto samples = random_samples(Box{{-3}, {3}}, 5000, 9);
    const IntervalVector g{Interval(-3, -3)};
    const auto s = check_subgradient(f, x, g, samples, {1e-9, Execution::serial});
    const auto p = check_subgradient(f, x, g, samples, {1e-9, Execution::parallel});
    REQUIRE(s.violations.size() == p.violations.size());
    for (std::size_t i = 0; i < s.violations.size(); ++i) {
        CHECK(s.violations[i].sample_index == p.violations[i].sample_index);
        CHECK(s.violations[i].rhs == p.violations[i].rhs);
    }
}

TEST_CASE("convexity check: serial and parallel results agree")
{
    auto ds = std::make_shared<const LassoDataset>(problems::interval_lasso_data());
    const Ivf e = make_error_ivf(ds, TuningParameter(Interval(0.03, 0.06)));
    const Box box{{-20, -20}, {20, 20}};
    const auto s = check_convexity(e, box, 3000, 4, {1e-9, Execution::serial});
    const auto p = check_convexity(e, box, 3000, 4, {1e-9, Execution::parallel});
    CHECK(s.convex == p.convex);
    CHECK(s.lower_violations == p.lower_violations);
    CHECK(s.upper_violations == p.upper_violations);
    REQUIRE(s.witness.has_value() == p.witness.has_value());
    if (s.witness) {
        CHECK(s.witness->trial == p.witness->trial);
    }
}

TEST_CASE("squared error: pairwise parallel sum stays within rounding of the sequential sum")
{
    const LassoDataset ds = synthetic(20000, 3, 21);
    const std::vector<double> beta{0.7, -1.2, 2.5};
    const Interval a = error_e1(ds, beta, Reduction::sequential);
    const Interval b = error_e1(ds, beta, Reduction::pairwise_parallel);
    CHECK(std::abs(a.lo() - b.lo()) <= 1e-10 * a.lo());
    CHECK(std::abs(a.hi() - b.hi()) <= 1e-10 * a.hi());
    // The pairwise tree has a fixed shape, so repeated runs are bit-identical.
    CHECK(error_e1(ds, beta, Reduction::pairwise_parallel) == b);
}
