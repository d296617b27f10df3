#include "cmc/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cmc/numerics.hpp"
#include "cmc/rk.hpp"

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> node_s(const TestFunction& tf) {
    std::vector<double> s(tf.nodes.size());
    for (std::size_t i = 0; i < s.size(); ++i) s[i] = tf.nodes[i].s;
    return s;
}

// second derivatives by 5-point finite differences on the (non-uniform) grid
std::vector<double> fd_second(const TestFunction& tf) {
    const std::size_t n = tf.nodes.size();
    if (n < 5) throw std::invalid_argument("jacobi_apply: too few nodes for FD");
    const std::vector<double> s = node_s(tf);
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t lo = std::min(std::max<std::size_t>(i, 2) - 2, n - 5);
        const std::span<const double> win(&s[lo], 5);
        const std::vector<double> w = fd_weights(win, s[i], 2);
        double acc = 0.0;
        for (std::size_t k = 0; k < 5; ++k) acc += w[k] * tf.u[lo + k];
        out[i] = acc;
    }
    return out;
}

}  // namespace

TestFunction sin_sigma_window(const ProfileCurve& curve, double s0, double s1) {
    if (!(s0 < s1)) throw std::invalid_argument("sin_sigma_window: need s0 < s1");
    // Subdivide each inter-sample gap so the composite-Simpson error sits well
    // below the cross-check tolerance between the two index-form quadratures.
    constexpr int kRefine = 6;
    std::vector<double> grid{s0};
    for (const CurveState& st : curve.samples)
        if (st.s > s0 && st.s < s1) grid.push_back(st.s);
    grid.push_back(s1);
    TestFunction tf;
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        for (int j = 0; j < kRefine; ++j)
            tf.nodes.push_back(
                state_at(curve, grid[i] + (grid[i + 1] - grid[i]) * j / kRefine));
    tf.nodes.push_back(state_at(curve, s1));
    const GeometryParams& p = curve.params;
    for (const CurveState& st : tf.nodes) {
        const Derivative d = vector_field(st, p);
        const double cs = std::cos(st.sigma);
        const double sn = std::sin(st.sigma);
        const double s2 = sigma_second(st, p);
        tf.u.push_back(sn);
        tf.du.push_back(d.dsigma * cs);
        tf.ddu.push_back(s2 * cs - d.dsigma * d.dsigma * sn);
    }
    return tf;
}

std::vector<double> jacobi_apply(const TestFunction& tf, const GeometryParams& params) {
    const std::size_t n = tf.nodes.size();
    if (n == 0 || tf.u.size() != n || tf.du.size() != n)
        throw std::invalid_argument("jacobi_apply: misaligned test function");
    const std::vector<double> upp = tf.ddu.empty() ? fd_second(tf) : tf.ddu;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const CurveState& st = tf.nodes[i];
        if (!interior(st))
            throw std::domain_error("jacobi_apply: support touches an axis");
        const Derivative d = vector_field(st, params);
        const StabilityIntegrands gi = stability_integrands(st, d.dsigma, params);
        const double coty = std::cos(st.y) / std::sin(st.y);
        const double drift =
            (params.n - 1) * d.dx / st.x + (params.m - 1) * coty * d.dy;
        out[i] = upp[i] + drift * tf.du[i] + (gi.ric + gi.b2) * tf.u[i];
    }
    return out;
}

IndexFormReport index_form(const ProfileCurve& curve, const TestFunction& tf,
                           const GeometryParams& params, bool include_constants) {
    const std::size_t n = tf.nodes.size();
    if (n < 2) {
        IndexFormReport zero;
        zero.constants_included = include_constants;
        return zero;
    }
    double umax = 0.0;
    for (double v : tf.u) umax = std::max(umax, std::abs(v));
    if (umax > 0.0 &&
        (std::abs(tf.u.front()) > 1e-6 * umax || std::abs(tf.u.back()) > 1e-6 * umax))
        throw std::invalid_argument("index_form: u must vanish at the support endpoints");

    const std::vector<double> Lu = jacobi_apply(tf, params);
    const std::vector<double> s = node_s(tf);
    std::vector<double> dirichlet(n), jacobi(n), massd(n), wall(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Derivative d = vector_field(tf.nodes[i], params);
        const StabilityIntegrands gi = stability_integrands(tf.nodes[i], d.dsigma, params);
        dirichlet[i] = (tf.du[i] * tf.du[i] - (gi.ric + gi.b2) * tf.u[i] * tf.u[i]) *
                       gi.weight;
        jacobi[i] = -tf.u[i] * Lu[i] * gi.weight;
        massd[i] = tf.u[i] * gi.weight;
        wall[i] = gi.weight;
    }
    const double omega =
        include_constants ? sphere_volume(params.m - 1) * sphere_volume(params.n - 1)
                          : 1.0;
    IndexFormReport rep;
    rep.constants_included = include_constants;
    rep.Q = omega * simpson_nonuniform(s, dirichlet);
    rep.Q_jacobi = omega * simpson_nonuniform(s, jacobi);
    rep.mass = omega * simpson_nonuniform(s, massd);
    rep.weighted_length = omega * simpson_nonuniform(s, wall);
    rep.window1 = {s.front(), s.back()};
    const double scale = std::max({std::abs(rep.Q), std::abs(rep.Q_jacobi), 1e-300});
    if (std::abs(rep.Q - rep.Q_jacobi) > 1e-6 * scale)
        throw std::runtime_error(
            "index_form: Dirichlet and Jacobi quadratures disagree beyond tolerance");
    return rep;
}

IndexFormReport instability_certificate(const ProfileCurve& curve,
                                        const GeometryParams& params) {
    std::vector<double> ext;
    for (const Event& e : curve.events)
        if (e.kind == EventKind::YMax || e.kind == EventKind::YMin) ext.push_back(e.s);
    if (ext.size() < 3)
        throw std::runtime_error(
            "instability_certificate: need >= 3 extrema within the horizon");

    for (std::size_t k = 0; k + 2 < ext.size(); ++k) {
        const TestFunction u1 = sin_sigma_window(curve, ext[k], ext[k + 1]);
        const TestFunction u2 = sin_sigma_window(curve, ext[k + 1], ext[k + 2]);
        const IndexFormReport r1 = index_form(curve, u1, params);
        const IndexFormReport r2 = index_form(curve, u2, params);
        const double c1 = r2.mass;
        const double c2 = -r1.mass;
        IndexFormReport rep;
        rep.Q = c1 * c1 * r1.Q + c2 * c2 * r2.Q;
        rep.Q_jacobi = c1 * c1 * r1.Q_jacobi + c2 * c2 * r2.Q_jacobi;
        rep.mass = c1 * r1.mass + c2 * r2.mass;
        rep.weighted_length = r1.weighted_length + r2.weighted_length;
        rep.window1 = r1.window1;
        rep.window2 = r2.window1;
        if (std::abs(rep.Q) > 1e-14 * rep.weighted_length && rep.Q < 0.0)
            return rep;
        // degenerate window pair: try the next one
    }
    throw std::runtime_error("instability_certificate: no usable window pair");
}

CriteriaReport cylinder_slice_criteria(const GeometryParams& params) {
    CriteriaReport rep;
    rep.slice_unstable = true;  // n, m > 1 by construction
    rep.threshold_h = std::sqrt(static_cast<double>(params.m) * (params.n - 1));
    rep.cylinder_unstable = params.h > rep.threshold_h;
    rep.cylinder_radius =
        params.h > 0.0 ? (params.n - 1) / params.h
                       : std::numeric_limits<double>::infinity();
    rep.threshold_radius = std::sqrt(static_cast<double>(params.n - 1)) /
                           std::sqrt(static_cast<double>(params.m));
    rep.cylinder_unstable_by_radius = rep.cylinder_radius < rep.threshold_radius;
    return rep;
}

LinearizedSolution linearized_solution(const GeometryParams& params, double x_max) {
    if (!(x_max > 0.0))
        throw std::invalid_argument("linearized_solution: x_max must be positive");
    const double xh = slice_height(params);
    const double sxh = std::sin(xh);
    const double k = (params.m - 1) / (sxh * sxh);
    const int n = params.n;

    auto rhs = [&](double x, const rk::Vec<2>& y, rk::Vec<2>& d) {
        if (!(x > 0.0)) return false;
        d[0] = y[1];
        d[1] = -k * y[0] - (n - 1) * y[1] / x;
        return true;
    };

    LinearizedSolution out;
    // series start: w = 1 + a x^2 + b x^4 + O(x^6)
    const double a = -k / (2.0 * n);
    const double b = -k * a / (4.0 * (n + 2));
    const double eps = 1e-6;
    out.x.push_back(0.0);
    out.w.push_back(1.0);
    out.dw.push_back(0.0);
    double x = eps;
    rk::Vec<2> y{1.0 + a * eps * eps + b * eps * eps * eps * eps,
                 2.0 * a * eps + 4.0 * b * eps * eps * eps};
    rk::Vec<2> k1;
    rhs(x, y, k1);
    out.x.push_back(x);
    out.w.push_back(y[0]);
    out.dw.push_back(y[1]);

    const double rtol = 1e-12, atol = 1e-14;
    double h = 1e-4;
    rk::StepController ctl;
    while (x < x_max) {
        if (x + h > x_max) h = x_max - x;
        rk::Vec<2> y5, klast;
        double err;
        if (!rk::dopri5_try_step(rhs, x, y, k1, h, y5, klast, err, atol, rtol) ||
            err > 1.0) {
            h *= 0.5;
            continue;
        }
        const double x_new = x + h;
        if (out.w.back() * y5[0] < 0.0) {
            // refine the zero by bisection on the cubic Hermite interpolant
            const double xa = x, xb = x_new;
            const double wa = y[0], wb = y5[0], va = y[1], vb = y5[1];
            auto hermite = [&](double t) {
                const double hh = xb - xa;
                const double u = (t - xa) / hh;
                const double h00 = (1 + 2 * u) * (1 - u) * (1 - u);
                const double h10 = u * (1 - u) * (1 - u);
                const double h01 = u * u * (3 - 2 * u);
                const double h11 = u * u * (u - 1);
                return h00 * wa + h10 * hh * va + h01 * wb + h11 * hh * vb;
            };
            double lo = xa, hi = xb, flo = wa;
            while (hi - lo > 1e-13) {
                const double mid = 0.5 * (lo + hi);
                const double fm = hermite(mid);
                if (flo * fm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    flo = fm;
                }
            }
            out.zeros.push_back(0.5 * (lo + hi));
        }
        x = x_new;
        y = y5;
        k1 = klast;
        out.x.push_back(x);
        out.w.push_back(y[0]);
        out.dw.push_back(y[1]);
        ctl.accept(err);
        h *= ctl.factor(err);
    }
    return out;
}

}  // namespace cmc
