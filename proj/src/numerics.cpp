#include "cmc/numerics.hpp"

#include <cmath>

namespace cmc {

namespace {

// Integral over [a, b] of the parabola through (x0,f0), (x1,f1), (x2,f2),
// in Newton form around x0.
double quad3(double x0, double x1, double x2, double f0, double f1, double f2,
             double a, double b) {
    const double d1 = (f1 - f0) / (x1 - x0);
    const double d2 = ((f2 - f1) / (x2 - x1) - d1) / (x2 - x0);
    // f(x) = f0 + d1 (x - x0) + d2 (x - x0)(x - x1); with t = x - x0 the last
    // factor is t^2 - (x1 - x0) t
    auto antideriv = [&](double x) {
        const double t = x - x0;
        return f0 * t + d1 * 0.5 * t * t + d2 * (t * t * t / 3.0 - 0.5 * (x1 - x0) * t * t);
    };
    return antideriv(b) - antideriv(a);
}

}  // namespace

double simpson_nonuniform(std::span<const double> xs, std::span<const double> fs) {
    const std::size_t n = xs.size();
    if (n != fs.size()) throw std::invalid_argument("simpson_nonuniform: size mismatch");
    if (n < 2) return 0.0;
    if (n == 2) return 0.5 * (fs[0] + fs[1]) * (xs[1] - xs[0]);
    double total = 0.0;
    std::size_t i = 0;
    for (; i + 2 < n; i += 2)
        total += quad3(xs[i], xs[i + 1], xs[i + 2], fs[i], fs[i + 1], fs[i + 2],
                       xs[i], xs[i + 2]);
    if (i + 2 == n) {
        // one interval left: integrate the parabola through the last 3 points
        total += quad3(xs[n - 3], xs[n - 2], xs[n - 1], fs[n - 3], fs[n - 2], fs[n - 1],
                       xs[n - 2], xs[n - 1]);
    }
    return total;
}

std::vector<double> fd_weights(std::span<const double> xs, double x0, int deriv) {
    // B. Fornberg, Math. Comp. 51 (1988) 699-706.
    const int nd = static_cast<int>(xs.size()) - 1;
    const int m = deriv;
    if (nd < m) throw std::invalid_argument("fd_weights: not enough nodes");
    std::vector<std::vector<double>> c(
        static_cast<std::size_t>(nd + 1), std::vector<double>(static_cast<std::size_t>(m + 1), 0.0));
    double c1 = 1.0;
    double c4 = xs[0] - x0;
    c[0][0] = 1.0;
    for (int i = 1; i <= nd; ++i) {
        const int mn = std::min(i, m);
        double c2 = 1.0;
        const double c5 = c4;
        c4 = xs[static_cast<std::size_t>(i)] - x0;
        for (int j = 0; j < i; ++j) {
            const double c3 = xs[static_cast<std::size_t>(i)] - xs[static_cast<std::size_t>(j)];
            c2 *= c3;
            if (j == i - 1) {
                for (int k = mn; k >= 1; --k)
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
                        c1 * (k * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k - 1)] -
                              c5 * c[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(k)]) /
                        c2;
                c[static_cast<std::size_t>(i)][0] =
                    -c1 * c5 * c[static_cast<std::size_t>(i - 1)][0] / c2;
            }
            for (int k = mn; k >= 1; --k)
                c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                    (c4 * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] -
                     k * c[static_cast<std::size_t>(j)][static_cast<std::size_t>(k - 1)]) /
                    c3;
            c[static_cast<std::size_t>(j)][0] = c4 * c[static_cast<std::size_t>(j)][0] / c3;
        }
        c1 = c2;
    }
    std::vector<double> w(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) w[i] = c[i][static_cast<std::size_t>(m)];
    return w;
}

}  // namespace cmc
