#ifndef CMC_NUMERICS_HPP
#define CMC_NUMERICS_HPP

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

namespace cmc {

// Integral of the piecewise-quadratic interpolant through (xs, fs):
// composite Simpson generalized to a non-uniform grid (local parabola fits,
// odd tail integrated from the last three points).
double simpson_nonuniform(std::span<const double> xs, std::span<const double> fs);

// Finite-difference weights on arbitrary nodes (Fornberg): weights w such
// that sum_i w_i f(x_i) approximates the deriv-th derivative at x0.
std::vector<double> fd_weights(std::span<const double> xs, double x0, int deriv);

}  // namespace cmc

#endif
