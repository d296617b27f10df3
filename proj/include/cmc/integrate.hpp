#ifndef CMC_INTEGRATE_HPP
#define CMC_INTEGRATE_HPP

#include <optional>
#include <string>
#include <vector>

#include "cmc/model.hpp"

namespace cmc {

struct IntegrationControls {
    double rtol = 1e-10;
    double atol = 1e-12;
    double max_arclength = 100.0;
    long max_steps = 10'000'000;
    double axis_margin = 1e-8;        // distance at which contact handling engages
    double event_refine_tol = 1e-12;  // arclength tolerance for event localization
    double angle_tol = 1e-6;          // orthogonality certification tolerance

    void validate() const;
};

enum class EventKind { YMax, YMin, VerticalTangent, XAxisContact, YAxisContact, NorthContact };

bool is_contact(EventKind k);
std::string to_string(EventKind k);

struct Event {
    double s;
    EventKind kind;
    CurveState state;
    bool orthogonal = false;  // contacts only: sigma within angle_tol of perpendicular
};

enum class Termination { BudgetExhausted, AxisContact, StepFailure, EventHalt };

std::string to_string(Termination t);

struct ProfileCurve {
    GeometryParams params;
    std::vector<CurveState> samples;   // strictly increasing in s
    std::vector<Derivative> rates;     // RHS at each sample
    std::vector<Event> events;
    Termination termination = Termination::BudgetExhausted;
    bool contact_orthogonal = false;   // meaningful for Termination::AxisContact

    const CurveState& front() const { return samples.front(); }
    const CurveState& back() const { return samples.back(); }
    double arclength() const { return samples.back().s - samples.front().s; }
};

// Integrates forward in arclength until the budget runs out, the curve
// reaches an axis, or the step controller underflows. Every accepted step is
// recorded; sign changes of sin(sigma) and cos(sigma) are localized by
// bisection to event_refine_tol. When halt_kinds is nonempty, integration
// stops right after the first event whose kind is listed (Termination::EventHalt).
ProfileCurve integrate(const StartSpec& start, const GeometryParams& params,
                       const IntegrationControls& controls = {},
                       const std::vector<EventKind>& halt_kinds = {});

// State inside an accepted step, by one RK step of size (s - sample.s) from
// the nearest recorded sample at or before s.
CurveState state_at(const ProfileCurve& curve, double s);

struct GraphPoint {
    double x;
    double p;   // y as a function of x
    double dp;  // p' = tan(sigma)
};

// Monotone-in-x resampling of the curve between arclengths s0 < s1. Requires
// cos(sigma) of one sign strictly inside; rejects segments containing an
// interior VerticalTangent event.
std::vector<GraphPoint> graph_extract(const ProfileCurve& curve, double s0, double s1);

}  // namespace cmc

#endif
