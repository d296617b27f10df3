#ifndef CMC_MODEL_HPP
#define CMC_MODEL_HPP

#include <cmath>
#include <stdexcept>
#include <variant>

// Geometry of O(n) x O(m)-invariant hypersurfaces of R^n x S^m, reduced to
// the generating curve (x(s), y(s)) in the orbit space [0,inf) x [0,pi].
// The curve is parametrized by arclength with tangent angle sigma:
//   x' = cos(sigma), y' = sin(sigma),
//   sigma' = (m-1) cot(y) cos(sigma) - (n-1) sin(sigma)/x - h.
namespace cmc {

struct GeometryParams {
    int n;      // dimension of the Euclidean factor, n >= 2
    int m;      // dimension of the sphere factor, m >= 2
    double h;   // constant mean curvature w.r.t. normal (sin sigma, -cos sigma)

    GeometryParams() : n(2), m(2), h(0.0) {}
    GeometryParams(int n_, int m_, double h_) : n(n_), m(m_), h(h_) {
        if (n < 2 || m < 2)
            throw std::invalid_argument("GeometryParams: need n >= 2 and m >= 2");
        if (!std::isfinite(h))
            throw std::invalid_argument("GeometryParams: h must be finite");
    }
};

// One point of a generating curve. sigma is tracked as a continuous real
// (winding included), never reduced mod 2*pi, so event predicates on
// sin(sigma) and cos(sigma) are honest sign changes.
struct CurveState {
    double s;       // arclength
    double x;       // radial coordinate in R^n, x >= 0
    double y;       // colatitude in S^m, in [0, pi]
    double sigma;   // tangent angle
};

struct Derivative {
    double dx;
    double dy;
    double dsigma;
};

// Starts on the boundary of the orbit space, where the ODE is singular and
// the initial sigma' is obtained by L'Hopital.
struct YAxisStart { double height; };       // (0, A, 0), A in (0, pi)
struct XAxisSouthStart { double radius; };  // (r, 0, pi/2), r > 0
struct XAxisNorthStart { double radius; };  // (r, pi, -pi/2), r > 0

using StartSpec = std::variant<CurveState, YAxisStart, XAxisSouthStart, XAxisNorthStart>;

struct AxisStart {
    CurveState state;   // the boundary point, s = 0
    Derivative rate;    // regularized initial derivative (L'Hopital value)
    // Quadratic-order predictor for the first step off the axis.
    CurveState step_off(double eps) const;
};

// The colatitude x_h in (0, pi) with (m-1) cot(x_h) = h; the constant slice
// R^n x S^{m-1}_{x_h} has mean curvature h.
double slice_height(const GeometryParams& params);

bool interior(const CurveState& st);

// Right-hand side of the arclength system. Requires an interior state.
Derivative vector_field(const CurveState& st, const GeometryParams& params);

// Boundary state plus regularized initial rate for an axis start.
AxisStart regularized_start(const YAxisStart& k, const GeometryParams& params);
AxisStart regularized_start(const XAxisSouthStart& k, const GeometryParams& params);
AxisStart regularized_start(const XAxisNorthStart& k, const GeometryParams& params);

// (m-1) cot(y) cos(sigma) - (n-1) sin(sigma)/x - dsigma; equals params.h on
// any integrated curve.
double pointwise_mean_curvature(const CurveState& st, double dsigma,
                                const GeometryParams& params);

struct StabilityIntegrands {
    double ric;     // Ric(N) = (m-1) cos^2(sigma)
    double b2;      // |B|^2 = sigma'^2 + (m-1) cot^2(y) cos^2(sigma) + (n-1) sin^2(sigma)/x^2
    double weight;  // x^{n-1} sin^{m-1}(y), without the omega factors
};

StabilityIntegrands stability_integrands(const CurveState& st, double dsigma,
                                         const GeometryParams& params);

// Volume of the unit k-sphere, 2 pi^{(k+1)/2} / Gamma((k+1)/2).
double sphere_volume(int k);

// sigma'' along the flow, from differentiating the RHS. Used for analytic
// second derivatives of test functions built from sigma.
double sigma_second(const CurveState& st, const GeometryParams& params);

}  // namespace cmc

#endif
