#ifndef CMC_RK_HPP
#define CMC_RK_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>

// Dormand-Prince 5(4) embedded pair. The right-hand side is a callable
//   bool rhs(double t, const std::array<double,N>& y, std::array<double,N>& dydt)
// returning false when y is outside the domain; a false stage evaluation
// rejects the whole step.
namespace cmc::rk {

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
Vec<N> axpy(const Vec<N>& y, double h, const Vec<N>& k) {
    Vec<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + h * k[i];
    return out;
}

template <std::size_t N, class RHS>
bool dopri5_try_step(const RHS& rhs, double t, const Vec<N>& y, const Vec<N>& k1,
                     double h, Vec<N>& y5, Vec<N>& k_last, double& err_norm,
                     double atol, double rtol) {
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    Vec<N> k2, k3, k4, k5, k6, tmp;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * a21 * k1[i];
    if (!rhs(t + h / 5, tmp, k2)) return false;
    for (std::size_t i = 0; i < N; ++i) tmp[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    if (!rhs(t + 3 * h / 10, tmp, k3)) return false;
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    if (!rhs(t + 4 * h / 5, tmp, k4)) return false;
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    if (!rhs(t + 8 * h / 9, tmp, k5)) return false;
    for (std::size_t i = 0; i < N; ++i)
        tmp[i] = y[i] +
                 h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i]);
    if (!rhs(t + h, tmp, k6)) return false;
    for (std::size_t i = 0; i < N; ++i)
        y5[i] = y[i] +
                h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
    if (!rhs(t + h, y5, k_last)) return false;  // FSAL stage

    double acc = 0.0;
    for (std::size_t i = 0; i < N; ++i) {
        const double err = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                e6 * k6[i] + e7 * k_last[i]);
        const double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
        acc += (err / sc) * (err / sc);
    }
    err_norm = std::sqrt(acc / N);
    return std::isfinite(err_norm);
}

// PI step-size controller for the 5(4) pair.
struct StepController {
    double prev_err = 1.0;
    bool have_prev = false;

    double factor(double err) {
        constexpr double kAlpha = 0.7 / 5.0, kBeta = 0.4 / 5.0;
        constexpr double kSafety = 0.9, kMin = 0.2, kMax = 5.0;
        double f;
        if (err <= 0.0) {
            f = kMax;
        } else if (have_prev) {
            f = kSafety * std::pow(err, -kAlpha) * std::pow(prev_err, kBeta);
        } else {
            f = kSafety * std::pow(err, -0.2);
        }
        return std::clamp(f, kMin, kMax);
    }

    void accept(double err) {
        prev_err = std::max(err, 1e-10);
        have_prev = true;
    }
};

}  // namespace cmc::rk

#endif
