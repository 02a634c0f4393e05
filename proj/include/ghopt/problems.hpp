#ifndef GHOPT_PROBLEMS_HPP
#define GHOPT_PROBLEMS_HPP

#include <ghopt/ivf.hpp>
#include <ghopt/lasso.hpp>

namespace ghopt::problems
{

// One-dimensional nonsmooth convex IVF on [-3, 3]:
//   F(x) = [3, 7] ⊖gH [-1, 0] ⊙ |x|   for -1 <= x <= 1
//   F(x) = [3, 5] ⊕ [1, 2] ⊙ |x|      otherwise
// x = 0 is its only efficient solution, F(0) = [3, 7].
Interval kinked_example_value(double x);

// The oracle returns the gH-gradient where it exists, [-3/2, -1/2] at -1,
// [1/2, 3/2] at 1 and [0, 0] at 0.
Ivf kinked_example();

// 12 samples, two interval features, interval response.
LassoDataset interval_lasso_data();

} // namespace ghopt::problems

#endif
