#ifndef CMC_SHOOT_HPP
#define CMC_SHOOT_HPP

#include <stdexcept>
#include <utility>
#include <vector>

#include "cmc/classify.hpp"
#include "cmc/integrate.hpp"

namespace cmc {

enum class ShootTag { Undershoot, Overshoot, Sphere };

std::string to_string(ShootTag t);

struct ShootOutcome {
    ShootTag tag;
    double s_terminal;
    CurveState state_terminal;
};

// Budget ran out before any terminal predicate fired.
struct InconclusiveError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Integrates from YAxis(A), h > 0, A in (x_h, pi), and reports the first of:
// sigma crossing 0 from below (Undershoot), sigma crossing -pi/2
// (Overshoot), or an orthogonal x-axis contact (Sphere).
ShootOutcome shoot_once(double A, const GeometryParams& params,
                        const IntegrationControls& controls = {});

struct SphereResult {
    double A_star;
    ProfileCurve curve;
};

// Bisection on the Undershoot/Overshoot dichotomy. The bracket is refined
// past the requested tol (down to floating precision) so the returned curve
// reaches the axis and carries the orthogonality certificate.
SphereResult find_sphere_height(const GeometryParams& params,
                                std::pair<double, double> bracket, double tol,
                                const IntegrationControls& controls = {});

// Scans A upward from x_h + delta until the first Overshoot.
std::pair<double, double> find_bracket(const GeometryParams& params,
                                       const IntegrationControls& controls = {});

struct SweepItem {
    double A;
    ProfileCurve curve;
    ClassificationResult result;
    std::string error;  // nonempty when this item failed
};

std::vector<SweepItem> sweep_family(const GeometryParams& params,
                                    const std::vector<double>& A_values,
                                    const IntegrationControls& controls = {});

}  // namespace cmc

#endif
