#include <ghopt/error.hpp>
#include <ghopt/interval.hpp>

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <ostream>

namespace ghopt
{

Interval::Interval(double lo, double hi) : lo_(lo), hi_(hi)
{
    if (!std::isfinite(lo) || !std::isfinite(hi)) {
        throw InvalidInterval("interval endpoints must be finite");
    }
    if (lo > hi) {
        throw InvalidInterval("interval lower endpoint " + std::to_string(lo) + " exceeds upper endpoint "
                              + std::to_string(hi));
    }
}

Interval add(const Interval &a, const Interval &b)
{
    return Interval(a.lo() + b.lo(), a.hi() + b.hi());
}

Interval moore_sub(const Interval &a, const Interval &b)
{
    return Interval(a.lo() - b.hi(), a.hi() - b.lo());
}

Interval mul(const Interval &a, const Interval &b)
{
    const double p1 = a.lo() * b.lo();
    const double p2 = a.lo() * b.hi();
    const double p3 = a.hi() * b.lo();
    const double p4 = a.hi() * b.hi();
    return Interval(std::min(std::min(p1, p2), std::min(p3, p4)), std::max(std::max(p1, p2), std::max(p3, p4)));
}

Interval scalar_mul(double lambda, const Interval &a)
{
    if (lambda >= 0.0) {
        return Interval(lambda * a.lo(), lambda * a.hi());
    }
    return Interval(lambda * a.hi(), lambda * a.lo());
}

Interval div(const Interval &a, const Interval &b)
{
    if (b.contains(0.0)) {
        throw DivisionByIntervalContainingZero("divisor " + to_string(b) + " contains 0");
    }
    const double q1 = a.lo() / b.lo();
    const double q2 = a.lo() / b.hi();
    const double q3 = a.hi() / b.lo();
    const double q4 = a.hi() / b.hi();
    return Interval(std::min(std::min(q1, q2), std::min(q3, q4)), std::max(std::max(q1, q2), std::max(q3, q4)));
}

Interval gh_sub(const Interval &a, const Interval &b)
{
    const double dl = a.lo() - b.lo();
    const double du = a.hi() - b.hi();
    return Interval(std::min(dl, du), std::max(dl, du));
}

Interval special_mul(const Interval &a, const Interval &b)
{
    const double pl = a.lo() * b.lo();
    const double pu = a.hi() * b.hi();
    return Interval(std::min(pl, pu), std::max(pl, pu));
}

double norm(const Interval &a) noexcept
{
    return std::max(std::abs(a.lo()), std::abs(a.hi()));
}

Dominance classify(const Interval &a, const Interval &b) noexcept
{
    if (a == b) {
        return Dominance::equal;
    }
    if (a.lo() <= b.lo() && a.hi() <= b.hi()) {
        return Dominance::dominates_strictly;
    }
    if (b.lo() <= a.lo() && b.hi() <= a.hi()) {
        return Dominance::is_dominated_strictly;
    }
    return Dominance::incomparable;
}

Dominance mirror(Dominance d) noexcept
{
    switch (d) {
        case Dominance::dominates_strictly:
            return Dominance::is_dominated_strictly;
        case Dominance::is_dominated_strictly:
            return Dominance::dominates_strictly;
        default:
            return d;
    }
}

std::string_view to_string(Dominance d) noexcept
{
    switch (d) {
        case Dominance::dominates_strictly:
            return "dominates_strictly";
        case Dominance::is_dominated_strictly:
            return "is_dominated_strictly";
        case Dominance::equal:
            return "equal";
        case Dominance::incomparable:
            return "incomparable";
    }
    return "unknown";
}

IntervalVector vec_op(const IntervalVector &a, const IntervalVector &b, VecOp op)
{
    if (a.size() != b.size()) {
        throw LengthMismatch("interval vectors of length " + std::to_string(a.size()) + " and "
                             + std::to_string(b.size()));
    }
    IntervalVector out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (op) {
            case VecOp::add:
                out[i] = add(a[i], b[i]);
                break;
            case VecOp::moore_sub:
                out[i] = moore_sub(a[i], b[i]);
                break;
            case VecOp::gh_sub:
                out[i] = gh_sub(a[i], b[i]);
                break;
        }
    }
    return out;
}

Weights::Weights(double w, double w_prime) : w_(w), w_prime_(w_prime)
{
    const bool in_range = w >= 0.0 && w <= 1.0 && w_prime >= 0.0 && w_prime <= 1.0;
    if (!in_range || std::abs(w + w_prime - 1.0) > 1e-12) {
        throw InvalidWeights("weights (" + std::to_string(w) + ", " + std::to_string(w_prime)
                             + ") must lie in [0, 1] and sum to 1");
    }
}

double Weights::apply(const Interval &a) const noexcept
{
    if (a.is_degenerate()) {
        return a.lo();
    }
    return w_ * a.lo() + w_prime_ * a.hi();
}

std::vector<double> w_map(const IntervalVector &g, const Weights &weights)
{
    std::vector<double> out;
    out.reserve(g.size());
    for (const auto &gi : g) {
        out.push_back(weights.apply(gi));
    }
    return out;
}

std::vector<double> w_map(const IntervalVector &g, double w, double w_prime)
{
    return w_map(g, Weights(w, w_prime));
}

Interval interval_dot(std::span<const double> x, const IntervalVector &g)
{
    if (x.size() != g.size()) {
        throw LengthMismatch("dot of real vector of length " + std::to_string(x.size())
                             + " with interval vector of length " + std::to_string(g.size()));
    }
    Interval acc;
    for (std::size_t i = 0; i < x.size(); ++i) {
        acc = add(acc, scalar_mul(x[i], g[i]));
    }
    return acc;
}

namespace
{

std::string format_g(double v, int digits)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

double parse_number(std::string_view s, std::string_view whole)
{
    s = trim(s);
    if (!s.empty() && s.front() == '+') {
        s.remove_prefix(1);
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
        throw ParseError("cannot parse number '" + std::string(s) + "' in interval '" + std::string(whole) + "'");
    }
    return v;
}

} // namespace

std::string to_string(const Interval &a, int significant_digits)
{
    return "[" + format_g(a.lo(), significant_digits) + ", " + format_g(a.hi(), significant_digits) + "]";
}

std::string to_string(const IntervalVector &v, int significant_digits)
{
    std::string out = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i != 0) {
            out += ", ";
        }
        out += to_string(v[i], significant_digits);
    }
    return out + ")";
}

Interval parse_interval(std::string_view text)
{
    auto body = trim(text);
    if (!body.empty() && body.front() == '[') {
        if (body.back() != ']') {
            throw ParseError("unterminated interval '" + std::string(text) + "'");
        }
        body = body.substr(1, body.size() - 2);
    }
    const auto comma = body.find(',');
    if (comma == std::string_view::npos || body.find(',', comma + 1) != std::string_view::npos) {
        throw ParseError("expected exactly two endpoints in '" + std::string(text) + "'");
    }
    const double lo = parse_number(body.substr(0, comma), text);
    const double hi = parse_number(body.substr(comma + 1), text);
    try {
        return Interval(lo, hi);
    } catch (const InvalidInterval &e) {
        throw ParseError(std::string("invalid interval: ") + e.what());
    }
}

std::ostream &operator<<(std::ostream &os, const Interval &a)
{
    return os << to_string(a);
}

std::ostream &operator<<(std::ostream &os, const IntervalVector &v)
{
    return os << to_string(v);
}

} // namespace ghopt
