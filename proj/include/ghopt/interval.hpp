#ifndef GHOPT_INTERVAL_HPP
#define GHOPT_INTERVAL_HPP

#include <cstddef>
#include <initializer_list>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace ghopt
{

// Compact real interval [lo, hi]. Endpoints are finite doubles with lo <= hi;
// no outward rounding is performed by any operation.
class Interval
{
public:
    // [0, 0]
    constexpr Interval() noexcept = default;
    // Throws InvalidInterval when lo > hi or either endpoint is not finite.
    Interval(double lo, double hi);

    static Interval point(double v) { return Interval(v, v); }

    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }
    double width() const noexcept { return hi_ - lo_; }
    double mid() const noexcept { return 0.5 * (lo_ + hi_); }
    bool is_degenerate() const noexcept { return lo_ == hi_; }
    bool contains(double v) const noexcept { return lo_ <= v && v <= hi_; }
    bool contains(const Interval &other) const noexcept
    {
        return lo_ <= other.lo_ && other.hi_ <= hi_;
    }

    friend bool operator==(const Interval &, const Interval &) = default;

private:
    double lo_ = 0.0;
    double hi_ = 0.0;
};

// Moore arithmetic.
Interval add(const Interval &a, const Interval &b);
Interval moore_sub(const Interval &a, const Interval &b);
Interval mul(const Interval &a, const Interval &b);
Interval scalar_mul(double lambda, const Interval &a);
// Throws DivisionByIntervalContainingZero when 0 is in b.
Interval div(const Interval &a, const Interval &b);

// Generalized Hukuhara difference: [min(a.lo-b.lo, a.hi-b.hi), max(...)].
Interval gh_sub(const Interval &a, const Interval &b);
// Special multiplication: [min(a.lo*b.lo, a.hi*b.hi), max(...)].
Interval special_mul(const Interval &a, const Interval &b);

inline Interval operator+(const Interval &a, const Interval &b) { return add(a, b); }
inline Interval operator-(const Interval &a, const Interval &b) { return moore_sub(a, b); }
inline Interval operator*(const Interval &a, const Interval &b) { return mul(a, b); }
inline Interval operator*(double lambda, const Interval &a) { return scalar_mul(lambda, a); }
inline Interval operator/(const Interval &a, const Interval &b) { return div(a, b); }

// max(|lo|, |hi|)
double norm(const Interval &a) noexcept;

// Classification of the ordered pair (a, b) under the endpoint-wise partial
// order. For finite intervals "a <= b componentwise and a != b" already implies
// strict dominance, so a non-strict non-equal class does not exist.
enum class Dominance
{
    dominates_strictly,    // a < b
    is_dominated_strictly, // b < a
    equal,
    incomparable,
};

Dominance classify(const Interval &a, const Interval &b) noexcept;
Dominance mirror(Dominance d) noexcept;
std::string_view to_string(Dominance d) noexcept;

// Boolean views derived from classify().
inline bool dominates(const Interval &a, const Interval &b) noexcept // a ⪯ b
{
    const auto c = classify(a, b);
    return c == Dominance::dominates_strictly || c == Dominance::equal;
}
inline bool dominates_strictly(const Interval &a, const Interval &b) noexcept // a ≺ b
{
    return classify(a, b) == Dominance::dominates_strictly;
}

// Element of I(R)^n.
class IntervalVector
{
public:
    IntervalVector() = default;
    explicit IntervalVector(std::vector<Interval> components) : components_(std::move(components)) {}
    IntervalVector(std::initializer_list<Interval> components) : components_(components) {}
    explicit IntervalVector(std::size_t n) : components_(n) {}

    std::size_t size() const noexcept { return components_.size(); }
    bool empty() const noexcept { return components_.empty(); }

    const Interval &operator[](std::size_t i) const { return components_[i]; }
    Interval &operator[](std::size_t i) { return components_[i]; }

    auto begin() const noexcept { return components_.begin(); }
    auto end() const noexcept { return components_.end(); }
    auto begin() noexcept { return components_.begin(); }
    auto end() noexcept { return components_.end(); }

    std::span<const Interval> span() const noexcept { return components_; }
    const std::vector<Interval> &components() const noexcept { return components_; }

    friend bool operator==(const IntervalVector &, const IntervalVector &) = default;

private:
    std::vector<Interval> components_;
};

enum class VecOp
{
    add,
    moore_sub,
    gh_sub,
};

// Componentwise; throws LengthMismatch.
IntervalVector vec_op(const IntervalVector &a, const IntervalVector &b, VecOp op);

// Convex weights (w, w') with w + w' = 1.
class Weights
{
public:
    // Throws InvalidWeights unless both lie in [0, 1] and sum to 1 within 1e-12.
    Weights(double w, double w_prime);
    static Weights from_lower(double w) { return Weights(w, 1.0 - w); }

    double lower() const noexcept { return w_; }
    double upper() const noexcept { return w_prime_; }

    // w*lo + w'*hi, exact on degenerate intervals.
    double apply(const Interval &a) const noexcept;

private:
    double w_;
    double w_prime_;
};

// (w*lo_i + w'*hi_i)_i
std::vector<double> w_map(const IntervalVector &g, const Weights &weights);
std::vector<double> w_map(const IntervalVector &g, double w, double w_prime);

// Left-to-right sum of scalar_mul(x_i, g_i); throws LengthMismatch.
Interval interval_dot(std::span<const double> x, const IntervalVector &g);

// "[lo, hi]" using the given number of significant digits.
std::string to_string(const Interval &a, int significant_digits = 17);
std::string to_string(const IntervalVector &v, int significant_digits = 17);
// Accepts "[lo, hi]" and "lo,hi" with optional surrounding whitespace.
Interval parse_interval(std::string_view text);

std::ostream &operator<<(std::ostream &os, const Interval &a);
std::ostream &operator<<(std::ostream &os, const IntervalVector &v);

} // namespace ghopt

#endif
