#include <ghopt/error.hpp>
#include <ghopt/lasso.hpp>

#include <algorithm>
#include <cmath>
#include <string>

namespace ghopt
{

LassoDataset::LassoDataset(std::vector<LassoSample> samples) : samples_(std::move(samples)), feature_dim_(0)
{
    if (samples_.empty()) {
        throw InvalidConfig("lasso dataset needs at least one sample");
    }
    feature_dim_ = samples_.front().x.size();
    if (feature_dim_ == 0) {
        throw InvalidConfig("lasso dataset needs at least one feature");
    }
    for (std::size_t k = 0; k < samples_.size(); ++k) {
        if (samples_[k].x.size() != feature_dim_) {
            throw DimensionMismatch("sample " + std::to_string(k + 1) + " has " + std::to_string(samples_[k].x.size())
                                    + " features, expected " + std::to_string(feature_dim_));
        }
    }
}

TuningParameter::TuningParameter(Interval value) : value_(value)
{
    if (value_.lo() < 0.0) {
        throw InvalidConfig("tuning parameter must be nonnegative, got " + to_string(value_));
    }
}

namespace
{

void check_beta(const LassoDataset &ds, std::span<const double> beta)
{
    if (beta.size() != ds.feature_dim()) {
        throw DimensionMismatch("parameter vector of length " + std::to_string(beta.size()) + " for "
                                + std::to_string(ds.feature_dim()) + " features");
    }
}

Interval residual(const LassoSample &s, std::span<const double> beta)
{
    return gh_sub(hypothesis(s.x, beta), s.y);
}

// Fixed-shape tree: the split points depend only on the range length.
Interval pairwise_sum(std::span<const Interval> terms)
{
    if (terms.size() == 1) {
        return terms[0];
    }
    const std::size_t half = terms.size() / 2;
    return add(pairwise_sum(terms.first(half)), pairwise_sum(terms.subspan(half)));
}

} // namespace

Interval hypothesis(const IntervalVector &x, std::span<const double> beta)
{
    if (x.size() != beta.size()) {
        throw DimensionMismatch("hypothesis with " + std::to_string(x.size()) + " features and "
                                + std::to_string(beta.size()) + " parameters");
    }
    Interval acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = add(acc, scalar_mul(beta[i], x[i]));
    }
    return acc;
}

Interval error_e1(const LassoDataset &ds, std::span<const double> beta, Reduction reduction)
{
    check_beta(ds, beta);
    const auto &samples = ds.samples();
    Interval sum;
    if (reduction == Reduction::sequential) {
        for (const auto &s : samples) {
            const Interval r = residual(s, beta);
            sum = add(sum, special_mul(r, r));
        }
    } else {
        std::vector<Interval> terms(samples.size());
        for_each_index(samples.size(), Execution::parallel, [&](std::size_t k) {
            const Interval r = residual(samples[k], beta);
            terms[k] = special_mul(r, r);
        });
        sum = pairwise_sum(terms);
    }
    return scalar_mul(0.5, sum);
}

Interval error_e2(std::span<const double> beta, const TuningParameter &l)
{
    double s = 0.0;
    for (double b : beta) {
        s += std::abs(b);
    }
    return scalar_mul(s, l.value());
}

Interval error_total(const LassoDataset &ds, std::span<const double> beta, const TuningParameter &l,
                     Reduction reduction)
{
    return add(error_e1(ds, beta, reduction), error_e2(beta, l));
}

IntervalVector analytic_subgradient(const LassoDataset &ds, std::span<const double> beta, const TuningParameter &l)
{
    check_beta(ds, beta);
    const std::size_t dim = ds.feature_dim();
    std::vector<Interval> residuals;
    residuals.reserve(ds.sample_count());
    for (const auto &s : ds.samples()) {
        residuals.push_back(residual(s, beta));
    }
    const Interval neg_l = scalar_mul(-1.0, l.value());
    IntervalVector g(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        Interval acc;
        for (std::size_t k = 0; k < ds.sample_count(); ++k) {
            acc = add(acc, special_mul(residuals[k], ds[k].x[i]));
        }
        g[i] = add(acc, beta[i] >= 0.0 ? l.value() : neg_l);
    }
    return g;
}

Ivf make_error_ivf(std::shared_ptr<const LassoDataset> ds, TuningParameter l)
{
    if (!ds) {
        throw InvalidConfig("dataset is null");
    }
    const std::size_t dim = ds->feature_dim();
    return Ivf::from_endpoints(
        dim,
        [ds, l](std::span<const double> beta) {
            const Interval e = error_total(*ds, beta, l);
            return std::pair{e.lo(), e.hi()};
        },
        [ds, l](std::span<const double> beta) { return analytic_subgradient(*ds, beta, l); });
}

LassoFit fit(const LassoDataset &ds, const TuningParameter &l, const SolverConfig &cfg)
{
    auto shared = std::make_shared<const LassoDataset>(ds);
    const Ivf f = make_error_ivf(shared, l);
    SolveResult run = solve(f, cfg);

    const Weights weights = cfg.weights();
    const auto &candidates = run.archive.efficient_set;
    std::size_t best = 0;
    double best_score = 0.0;
    Interval best_error;
    for (std::size_t j = 0; j < candidates.size(); ++j) {
        const Interval e = f(candidates[j]);
        const double score = weights.lower() * e.lo() + weights.upper() * e.hi();
        if (j == 0 || score < best_score) {
            best = j;
            best_score = score;
            best_error = e;
        }
    }

    LassoFit out;
    out.beta = candidates.at(best);
    out.error = best_error;
    out.archive = std::move(run.archive);
    out.trace = std::move(run.trace);
    out.w = cfg.w;
    out.schedule = cfg.schedule.describe();
    out.iterations = cfg.max_iter;
    out.init = cfg.x0;
    out.tuning = l.value();
    return out;
}

std::vector<LassoFit> fit_grid(const LassoDataset &ds, const TuningParameter &l,
                               const std::vector<SolverConfig> &configs, Execution execution)
{
    std::vector<std::optional<LassoFit>> slots(configs.size());
    for_each_index(configs.size(), execution, [&](std::size_t j) { slots[j] = fit(ds, l, configs[j]); });
    std::vector<LassoFit> out;
    out.reserve(configs.size());
    for (auto &s : slots) {
        out.push_back(std::move(*s));
    }
    return out;
}

double PredictionRow::actual_excess_width() const noexcept
{
    double w = 0.0;
    for (const auto &s : actual_excess) {
        w += s.width();
    }
    return w;
}

double PredictionRow::estimate_excess_width() const noexcept
{
    double w = 0.0;
    for (const auto &s : estimate_excess) {
        w += s.width();
    }
    return w;
}

namespace
{

std::vector<Segment> outside(const Interval &whole, const std::optional<Interval> &inner)
{
    if (!inner) {
        return {Segment{whole.lo(), whole.hi()}};
    }
    std::vector<Segment> out;
    if (whole.lo() < inner->lo()) {
        out.push_back({whole.lo(), inner->lo()});
    }
    if (inner->hi() < whole.hi()) {
        out.push_back({inner->hi(), whole.hi()});
    }
    return out;
}

} // namespace

PredictionRow compare_intervals(const Interval &actual, const Interval &estimate)
{
    PredictionRow row{actual, estimate, std::nullopt, {}, {}};
    const double lo = std::max(actual.lo(), estimate.lo());
    const double hi = std::min(actual.hi(), estimate.hi());
    if (lo <= hi) {
        row.overlap = Interval(lo, hi);
    }
    row.actual_excess = outside(actual, row.overlap);
    row.estimate_excess = outside(estimate, row.overlap);
    return row;
}

PredictionReport predict_report(const LassoDataset &ds, std::span<const double> beta)
{
    check_beta(ds, beta);
    PredictionReport report;
    report.rows.reserve(ds.sample_count());
    for (const auto &s : ds.samples()) {
        report.rows.push_back(compare_intervals(s.y, hypothesis(s.x, beta)));
    }
    return report;
}

} // namespace ghopt
