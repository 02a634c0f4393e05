#include <ghopt/error.hpp>
#include <ghopt/solver.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <map>
#include <stdexcept>
#include <string>

namespace ghopt
{

StepSchedule StepSchedule::harmonic(double c)
{
    if (!(c > 0.0) || !std::isfinite(c)) {
        throw InvalidConfig("harmonic schedule needs c > 0");
    }
    char buf[64];
    std::snprintf(buf, sizeof buf, "harmonic:%.17g", c);
    return StepSchedule([c](std::size_t k) { return c / static_cast<double>(k); }, buf);
}

StepSchedule StepSchedule::shifted(double c, double s)
{
    if (!(c > 0.0) || !std::isfinite(c) || !(s >= 0.0) || !std::isfinite(s)) {
        throw InvalidConfig("shifted schedule needs c > 0 and s >= 0");
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "shifted:%.17g,%.17g", c, s);
    return StepSchedule([c, s](std::size_t k) { return c / (static_cast<double>(k) + s); }, buf);
}

StepSchedule StepSchedule::custom(std::function<double(std::size_t)> fn, std::string label)
{
    if (!fn) {
        throw InvalidConfig("custom schedule needs a callable");
    }
    return StepSchedule(std::move(fn), std::move(label));
}

namespace
{

double parse_double(std::string_view s, std::string_view whole)
{
    const std::string tmp(s);
    char *end = nullptr;
    const double v = std::strtod(tmp.c_str(), &end);
    if (tmp.empty() || end != tmp.c_str() + tmp.size()) {
        throw ParseError("bad number '" + tmp + "' in schedule '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace

StepSchedule StepSchedule::parse(std::string_view text)
{
    const auto colon = text.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("schedule must look like harmonic:c or shifted:c,s, got '" + std::string(text) + "'");
    }
    const auto kind = text.substr(0, colon);
    const auto args = text.substr(colon + 1);
    try {
        if (kind == "harmonic") {
            return harmonic(parse_double(args, text));
        }
        if (kind == "shifted") {
            const auto comma = args.find(',');
            if (comma == std::string_view::npos) {
                throw ParseError("shifted schedule needs c,s in '" + std::string(text) + "'");
            }
            return shifted(parse_double(args.substr(0, comma), text), parse_double(args.substr(comma + 1), text));
        }
    } catch (const InvalidConfig &e) {
        throw ParseError(e.what());
    }
    throw ParseError("unknown schedule kind '" + std::string(kind) + "'");
}

double StepSchedule::operator()(std::size_t k) const
{
    return fn_(k);
}

void StepSchedule::validate(std::size_t max_iter) const
{
    for (std::size_t k = 1; k <= max_iter; ++k) {
        const double a = fn_(k);
        if (!(a > 0.0) || !std::isfinite(a)) {
            throw InvalidConfig("step schedule " + label_ + " gives non-positive step at k = " + std::to_string(k));
        }
    }
}

void SolverConfig::validate() const
{
    (void)weights();
    if (x0.empty()) {
        throw InvalidConfig("initial point must be nonempty");
    }
    for (double v : x0) {
        if (!std::isfinite(v)) {
            throw InvalidConfig("initial point must be finite");
        }
    }
    schedule.validate(max_iter);
}

ArchiveDelta archive_update(Archive &archive, std::span<const double> x_new, const Interval &f_new,
                            const EvalFn &evaluate)
{
    ArchiveDelta delta;

    std::vector<std::vector<double>> kept_points;
    kept_points.reserve(archive.efficient_set.size());
    for (auto &x : archive.efficient_set) {
        if (dominates_strictly(f_new, evaluate(x))) {
            delta.removed_efficient.push_back(std::move(x));
        } else {
            kept_points.push_back(std::move(x));
        }
    }
    archive.efficient_set = std::move(kept_points);

    std::vector<Interval> kept_values;
    kept_values.reserve(archive.nondominated_set.size());
    for (const auto &a : archive.nondominated_set) {
        if (dominates(f_new, a)) {
            delta.removed_nondominated.push_back(a);
        } else {
            kept_values.push_back(a);
        }
    }
    archive.nondominated_set = std::move(kept_values);

    bool blocked = false;
    for (const auto &x : archive.efficient_set) {
        if (dominates_strictly(evaluate(x), f_new)) {
            blocked = true;
            break;
        }
    }
    if (!blocked) {
        archive.efficient_set.emplace_back(x_new.begin(), x_new.end());
        delta.inserted_efficient = true;
    }

    blocked = false;
    for (const auto &a : archive.nondominated_set) {
        if (dominates(a, f_new)) {
            blocked = true;
            break;
        }
    }
    if (!blocked) {
        archive.nondominated_set.push_back(f_new);
        delta.inserted_nondominated = true;
    }
    return delta;
}

bool archive_invariants_hold(const Archive &archive, const EvalFn &evaluate)
{
    std::vector<Interval> values;
    values.reserve(archive.efficient_set.size());
    for (const auto &x : archive.efficient_set) {
        values.push_back(evaluate(x));
    }
    for (std::size_t i = 0; i < values.size(); ++i) {
        for (std::size_t j = 0; j < values.size(); ++j) {
            if (i != j && dominates_strictly(values[i], values[j])) {
                return false;
            }
        }
    }
    const auto &n = archive.nondominated_set;
    for (std::size_t i = 0; i < n.size(); ++i) {
        for (std::size_t j = 0; j < n.size(); ++j) {
            if (i != j && n[i] != n[j] && dominates(n[i], n[j])) {
                return false;
            }
        }
    }
    return true;
}

std::string_view to_string(Termination t) noexcept
{
    switch (t) {
        case Termination::max_iterations:
            return "max_iterations";
        case Termination::zero_direction:
            return "zero_direction";
    }
    return "unknown";
}

namespace
{

bool is_zero_direction(std::span<const double> w)
{
    for (double v : w) {
        if (std::abs(v) > 1e-12) {
            return false;
        }
    }
    return true;
}

std::vector<double> default_perturb(std::span<const double> x, std::size_t)
{
    std::vector<double> out(x.begin(), x.end());
    for (double &v : out) {
        v += 1e-8 * std::max(1.0, std::abs(v));
    }
    return out;
}

bool debug_assert_from_env()
{
    const char *v = std::getenv("GHOPT_DEBUG_ASSERT");
    return v != nullptr && std::strcmp(v, "1") == 0;
}

} // namespace

SolveResult solve(const Ivf &f, const SolverConfig &cfg)
{
    cfg.validate();
    if (cfg.x0.size() != f.dim()) {
        throw DimensionMismatch("initial point of length " + std::to_string(cfg.x0.size()) + " for IVF of dimension "
                                + std::to_string(f.dim()));
    }
    if (!f.has_oracle()) {
        throw OracleFailure("solver needs an IVF with a subgradient oracle");
    }
    const Weights weights = cfg.weights();
    const bool check_invariants = cfg.debug_assert || debug_assert_from_env();

    // Keyed on exact coordinates; F is pure so cached values are exact.
    std::map<std::vector<double>, Interval> cache;
    EvalFn evaluate;
    if (cfg.memoize) {
        evaluate = [&](std::span<const double> x) {
            std::vector<double> key(x.begin(), x.end());
            if (auto it = cache.find(key); it != cache.end()) {
                return it->second;
            }
            const Interval v = f(x);
            cache.emplace(std::move(key), v);
            return v;
        };
    } else {
        evaluate = [&](std::span<const double> x) { return f(x); };
    }

    SolveResult out;
    auto &trace = out.trace;
    auto &archive = out.archive;

    std::vector<double> x = cfg.x0;
    Interval fx = evaluate(x);
    trace.initial_x = x;
    trace.initial_value = fx;
    archive.efficient_set.push_back(x);
    archive.nondominated_set.push_back(fx);

    for (std::size_t k = 1; k <= cfg.max_iter; ++k) {
        IntervalVector g = f.subgradient(x);
        std::vector<double> dir = w_map(g, weights);
        bool perturbed = false;
        if (is_zero_direction(dir)) {
            bool recovered = false;
            if (cfg.zero_direction_policy == ZeroDirectionPolicy::skip) {
                const auto probe = cfg.perturb ? cfg.perturb(x, k) : default_perturb(x, k);
                if (probe.size() != x.size()) {
                    throw InvalidConfig("perturbation hook changed the point dimension");
                }
                IntervalVector g2 = f.subgradient(probe);
                auto dir2 = w_map(g2, weights);
                if (!is_zero_direction(dir2)) {
                    g = std::move(g2);
                    dir = std::move(dir2);
                    perturbed = true;
                    recovered = true;
                }
            }
            if (!recovered) {
                trace.termination = Termination::zero_direction;
                trace.zero_subgradient = std::move(g);
                break;
            }
        }

        const double alpha = cfg.schedule(k);
        std::vector<double> x_next(x.size());
        for (std::size_t i = 0; i < x.size(); ++i) {
            x_next[i] = x[i] - alpha * dir[i];
        }
        const Interval f_next = evaluate(x_next);
        ArchiveDelta delta = archive_update(archive, x_next, f_next, evaluate);

        if (check_invariants && !archive_invariants_hold(archive, evaluate)) {
            throw std::logic_error("archive invariant broken after iteration " + std::to_string(k));
        }

        trace.records.push_back(IterationRecord{k, x, fx, std::move(g), std::move(dir), alpha, x_next, f_next,
                                                perturbed, std::move(delta)});
        x = std::move(x_next);
        fx = f_next;
    }
    return out;
}

std::vector<TrajectoryPoint> best_trajectory(const IterationTrace &trace)
{
    if (!trace.initial_value) {
        throw EmptyTrace("trace has no iterates");
    }
    std::vector<TrajectoryPoint> out{{1, *trace.initial_value}};
    for (const auto &r : trace.records) {
        if (dominates(r.value_next, out.back().value)) {
            out.push_back({r.k + 1, r.value_next});
        }
    }
    return out;
}

} // namespace ghopt
