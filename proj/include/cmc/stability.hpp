#ifndef CMC_STABILITY_HPP
#define CMC_STABILITY_HPP

#include <utility>
#include <vector>

#include "cmc/integrate.hpp"

namespace cmc {

// A compactly supported invariant test function sampled along a curve. Nodes
// are the curve samples inside the support plus the exact endpoint states;
// u must vanish at the endpoints. ddu may be empty, in which case second
// derivatives are taken by fourth-order finite differences on the s-grid.
struct TestFunction {
    std::vector<CurveState> nodes;  // strictly increasing s
    std::vector<double> u;
    std::vector<double> du;
    std::vector<double> ddu;  // optional analytic second derivative
};

// u = sin(sigma) restricted to [s0, s1] (an inter-extrema window, where it
// vanishes at both ends); derivatives are analytic along the flow.
TestFunction sin_sigma_window(const ProfileCurve& curve, double s0, double s1);

struct IndexFormReport {
    double Q = 0.0;          // index form, Dirichlet-form quadrature
    double Q_jacobi = 0.0;   // -∫ u Lu dΣ
    double mass = 0.0;       // ∫ u dΣ
    double weighted_length = 0.0;  // ∫ dΣ over the support
    bool constants_included = true;
    std::pair<double, double> window1{0, 0};
    std::pair<double, double> window2{0, 0};  // used by certificates only
};

// Jacobi operator applied at each node:
// Lu = u'' + ((n-1) x'/x + (m-1) cot(y) y') u' + (Ric(N) + |B|^2) u.
std::vector<double> jacobi_apply(const TestFunction& tf, const GeometryParams& params);

// Evaluates Q both as the Dirichlet form and as -∫ u Lu dΣ; the two must
// agree to quadrature accuracy (integration-by-parts consistency).
IndexFormReport index_form(const ProfileCurve& curve, const TestFunction& tf,
                           const GeometryParams& params,
                           bool include_constants = true);

// Mean-zero instability witness built from u = sin(sigma) on the first two
// inter-extrema windows: ubar = C1 u1 + C2 u2 with C1 = mass(u2),
// C2 = -mass(u1). Requires >= 3 extrema on the curve.
IndexFormReport instability_certificate(const ProfileCurve& curve,
                                        const GeometryParams& params);

struct CriteriaReport {
    bool slice_unstable;          // R^n x S^{m-1}_{x_h}: always true for n,m > 1
    bool cylinder_unstable;       // S^{n-1}((n-1)/h) x S^m: h > sqrt(m(n-1))
    double threshold_h;           // sqrt(m(n-1))
    double cylinder_radius;       // (n-1)/h
    double threshold_radius;      // sqrt(n-1)/sqrt(m)
    bool cylinder_unstable_by_radius;  // r < sqrt(n-1)/sqrt(m)
};

CriteriaReport cylinder_slice_criteria(const GeometryParams& params);

struct LinearizedSolution {
    std::vector<double> x;
    std::vector<double> w;
    std::vector<double> dw;
    std::vector<double> zeros;
};

// The linearized oscillation equation
//   w'' = -(m-1)/sin^2(x_h) w - (n-1)/x w',  w(0) = 1, w'(0) = 0,
// integrated on [0, x_max] with refined zeros.
LinearizedSolution linearized_solution(const GeometryParams& params, double x_max);

}  // namespace cmc

#endif
