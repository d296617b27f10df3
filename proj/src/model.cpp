#include "cmc/model.hpp"

#include <numbers>

namespace cmc {

namespace {
constexpr double kPi = std::numbers::pi;
}

double slice_height(const GeometryParams& params) {
    // cot(x) = h/(m-1) with x in (0, pi)  <=>  x = atan2(m-1, h)
    return std::atan2(static_cast<double>(params.m - 1), params.h);
}

bool interior(const CurveState& st) {
    return st.x > 0.0 && st.y > 0.0 && st.y < kPi;
}

Derivative vector_field(const CurveState& st, const GeometryParams& params) {
    if (!interior(st))
        throw std::domain_error("vector_field: state outside the open orbit space");
    const double cs = std::cos(st.sigma);
    const double sn = std::sin(st.sigma);
    const double coty = std::cos(st.y) / std::sin(st.y);
    const double dsigma =
        (params.m - 1) * coty * cs - (params.n - 1) * sn / st.x - params.h;
    return {cs, sn, dsigma};
}

CurveState AxisStart::step_off(double eps) const {
    // Second-order expansion around the axis point; the curve leaves the
    // boundary orthogonally, so the transverse coordinate is quadratic in s.
    CurveState st;
    const double c = rate.dsigma;
    st.s = state.s + eps;
    st.sigma = state.sigma + c * eps;
    st.x = state.x + rate.dx * eps;
    st.y = state.y + rate.dy * eps;
    // quadratic corrections: (x'', y'') = (-sin(sigma0), cos(sigma0)) * c
    st.x += -0.5 * std::sin(state.sigma) * c * eps * eps;
    st.y += 0.5 * std::cos(state.sigma) * c * eps * eps;
    return st;
}

AxisStart regularized_start(const YAxisStart& k, const GeometryParams& params) {
    const double A = k.height;
    if (!(A > 0.0 && A < kPi))
        throw std::invalid_argument("regularized_start: A must lie in (0, pi)");
    const double cotA = std::cos(A) / std::sin(A);
    const double c = ((params.m - 1) * cotA - params.h) / params.n;
    return {{0.0, 0.0, A, 0.0}, {1.0, 0.0, c}};
}

AxisStart regularized_start(const XAxisSouthStart& k, const GeometryParams& params) {
    const double r = k.radius;
    if (!(r > 0.0))
        throw std::invalid_argument("regularized_start: r must be positive");
    const double c = -((params.n - 1) / r + params.h) / params.m;
    return {{0.0, r, 0.0, kPi / 2.0}, {0.0, 1.0, c}};
}

AxisStart regularized_start(const XAxisNorthStart& k, const GeometryParams& params) {
    const double r = k.radius;
    if (!(r > 0.0))
        throw std::invalid_argument("regularized_start: r must be positive");
    const double c = ((params.n - 1) / r - params.h) / params.m;
    return {{0.0, r, kPi, -kPi / 2.0}, {0.0, -1.0, c}};
}

double pointwise_mean_curvature(const CurveState& st, double dsigma,
                                const GeometryParams& params) {
    if (!interior(st))
        throw std::domain_error("pointwise_mean_curvature: state outside the interior");
    const double coty = std::cos(st.y) / std::sin(st.y);
    return (params.m - 1) * coty * std::cos(st.sigma) -
           (params.n - 1) * std::sin(st.sigma) / st.x - dsigma;
}

StabilityIntegrands stability_integrands(const CurveState& st, double dsigma,
                                         const GeometryParams& params) {
    if (!interior(st))
        throw std::domain_error("stability_integrands: state outside the interior");
    const double cs = std::cos(st.sigma);
    const double sn = std::sin(st.sigma);
    const double coty = std::cos(st.y) / std::sin(st.y);
    StabilityIntegrands out;
    out.ric = (params.m - 1) * cs * cs;
    out.b2 = dsigma * dsigma + (params.m - 1) * coty * coty * cs * cs +
             (params.n - 1) * sn * sn / (st.x * st.x);
    out.weight = std::pow(st.x, params.n - 1) * std::pow(std::sin(st.y), params.m - 1);
    return out;
}

double sphere_volume(int k) {
    if (k < 0)
        throw std::invalid_argument("sphere_volume: k must be nonnegative");
    return 2.0 * std::pow(kPi, 0.5 * (k + 1)) / std::tgamma(0.5 * (k + 1));
}

double sigma_second(const CurveState& st, const GeometryParams& params) {
    const Derivative d = vector_field(st, params);
    const double cs = std::cos(st.sigma);
    const double sn = std::sin(st.sigma);
    const double siny = std::sin(st.y);
    const double coty = std::cos(st.y) / siny;
    const double csc2 = 1.0 / (siny * siny);
    // d/ds of (m-1) cot(y) cos(sigma) - (n-1) sin(sigma)/x - h
    return (params.m - 1) * (-csc2 * sn * cs - coty * sn * d.dsigma) -
           (params.n - 1) * (cs * d.dsigma / st.x - sn * cs / (st.x * st.x));
}

}  // namespace cmc
