#include "cmc/shoot.hpp"

#include <cmath>
#include <future>
#include <limits>
#include <numbers>

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;

struct ShotCurve {
    ShootOutcome outcome;
    ProfileCurve curve;
};

ShotCurve shoot_curve(double A, const GeometryParams& params,
                      const IntegrationControls& controls) {
    if (!(params.h > 0.0))
        throw std::invalid_argument("shoot_once: requires h > 0");
    const double xh = slice_height(params);
    if (!(A > xh && A < kPi))
        throw std::invalid_argument("shoot_once: A must lie in (x_h, pi)");
    ProfileCurve curve =
        integrate(YAxisStart{A}, params, controls,
                  {EventKind::YMin, EventKind::VerticalTangent});
    ShootOutcome out{};
    switch (curve.termination) {
        case Termination::EventHalt: {
            const Event& e = curve.events.back();
            out.tag = e.kind == EventKind::YMin ? ShootTag::Undershoot
                                                : ShootTag::Overshoot;
            out.s_terminal = e.s;
            out.state_terminal = e.state;
            return {out, std::move(curve)};
        }
        case Termination::AxisContact: {
            const Event& e = curve.events.back();
            out.s_terminal = e.s;
            out.state_terminal = e.state;
            if (e.orthogonal) {
                out.tag = ShootTag::Sphere;
            } else {
                // the bounce was cut off inside the axis margin: decide by
                // which side of -pi/2 the extrapolated contact angle lies on
                out.tag = e.state.sigma > -kPi / 2.0 ? ShootTag::Undershoot
                                                     : ShootTag::Overshoot;
            }
            return {out, std::move(curve)};
        }
        default:
            throw InconclusiveError(
                "shoot_once: no terminal predicate within the integration budget "
                "(termination: " + to_string(curve.termination) + ")");
    }
}

}  // namespace

std::string to_string(ShootTag t) {
    switch (t) {
        case ShootTag::Undershoot: return "undershoot";
        case ShootTag::Overshoot: return "overshoot";
        case ShootTag::Sphere: return "sphere";
    }
    return "?";
}

ShootOutcome shoot_once(double A, const GeometryParams& params,
                        const IntegrationControls& controls) {
    return shoot_curve(A, params, controls).outcome;
}

SphereResult find_sphere_height(const GeometryParams& params,
                                std::pair<double, double> bracket, double tol,
                                const IntegrationControls& controls) {
    if (!(tol > 0.0)) throw std::invalid_argument("find_sphere_height: tol must be positive");
    double lo = bracket.first, hi = bracket.second;
    if (!(lo < hi)) throw std::invalid_argument("find_sphere_height: invalid bracket");
    if (shoot_once(lo, params, controls).tag != ShootTag::Undershoot)
        throw std::invalid_argument("find_sphere_height: lower endpoint must undershoot");
    if (shoot_once(hi, params, controls).tag != ShootTag::Overshoot)
        throw std::invalid_argument("find_sphere_height: upper endpoint must overshoot");

    // Refine past the requested tol: near floating precision the midpoint
    // curve follows the critical trajectory into the axis margin, where the
    // contact angle can be certified.
    const double floor_width =
        std::max(8.0 * std::numeric_limits<double>::epsilon() * hi, tol * 1e-14);
    ShotCurve last{};
    bool have_sphere = false;
    double A_star = 0.5 * (lo + hi);
    while (hi - lo > floor_width) {
        const double mid = 0.5 * (lo + hi);
        ShotCurve shot = shoot_curve(mid, params, controls);
        last = std::move(shot);
        if (last.outcome.tag == ShootTag::Sphere) {
            A_star = mid;
            have_sphere = true;
            break;
        }
        if (last.outcome.tag == ShootTag::Undershoot) {
            lo = mid;
        } else {
            hi = mid;
        }
        A_star = 0.5 * (lo + hi);
    }
    if (!have_sphere) {
        // the bracket collapsed to floating precision: the midpoint curve is
        // the best available witness, whatever its terminal report says
        last = shoot_curve(A_star, params, controls);
    }
    return {A_star, std::move(last.curve)};
}

std::pair<double, double> find_bracket(const GeometryParams& params,
                                       const IntegrationControls& controls) {
    const double xh = slice_height(params);
    const double delta = 1e-3, step = 0.05;
    double prev = xh + delta;
    if (shoot_once(prev, params, controls).tag != ShootTag::Undershoot)
        throw std::runtime_error("find_bracket: no undershoot just above x_h");
    for (double A = prev + step; A < kPi; A += step) {
        const ShootTag tag = shoot_once(A, params, controls).tag;
        if (tag == ShootTag::Overshoot) return {prev, A};
        prev = A;
    }
    throw std::runtime_error("find_bracket: no overshoot found below pi");
}

std::vector<SweepItem> sweep_family(const GeometryParams& params,
                                    const std::vector<double>& A_values,
                                    const IntegrationControls& controls) {
    std::vector<std::future<SweepItem>> futs;
    futs.reserve(A_values.size());
    for (double A : A_values) {
        futs.push_back(std::async(std::launch::async, [A, &params, &controls]() {
            SweepItem item;
            item.A = A;
            try {
                item.curve = integrate(YAxisStart{A}, params, controls);
                item.result = classify(item.curve, params);
            } catch (const std::exception& e) {
                item.error = e.what();
            }
            return item;
        }));
    }
    std::vector<SweepItem> out;
    out.reserve(futs.size());
    for (auto& f : futs) out.push_back(f.get());
    return out;
}

}  // namespace cmc
