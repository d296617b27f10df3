#include "cmc/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "cmc/rk.hpp"

namespace cmc {

namespace {

constexpr double kPi = std::numbers::pi;

using rk::Vec;

struct CurveRhs {
    int n, m;
    double h;
    double sgn = 1.0;  // -1 traverses the curve against its orientation

    bool operator()(double /*s*/, const Vec<3>& u, Vec<3>& d) const {
        const double x = u[0], y = u[1], sigma = u[2];
        if (!(x > 0.0 && y > 0.0 && y < kPi)) return false;
        const double cs = std::cos(sigma);
        const double sn = std::sin(sigma);
        d[0] = sgn * cs;
        d[1] = sgn * sn;
        d[2] = sgn * ((m - 1) * (std::cos(y) / std::sin(y)) * cs - (n - 1) * sn / x - h);
        return std::isfinite(d[2]);
    }
};

Vec<3> pack(const CurveState& st) { return {st.x, st.y, st.sigma}; }

CurveState unpack(double s, const Vec<3>& u) { return {s, u[0], u[1], u[2]}; }

// Off-axis step size for the quadratic predictor: its O(eps^3) truncation
// must stay below atol.
double axis_eps(const IntegrationControls& c) {
    return std::clamp(0.1 * std::cbrt(c.atol), 1e-9, 1e-5);
}

// Distance from sigma to the nearest angle congruent to ref mod pi.
double angle_defect(double sigma, double ref) {
    const double d = std::remainder(sigma - ref, kPi);
    return std::abs(d);
}

class Integrator {
public:
    Integrator(const GeometryParams& params, const IntegrationControls& controls,
               std::vector<EventKind> halt_kinds, bool reverse = false)
        : params_(params),
          controls_(controls),
          halt_kinds_(std::move(halt_kinds)),
          rhs_{params.n, params.m, params.h, reverse ? -1.0 : 1.0},
          curve_{params, {}, {}, {}, Termination::BudgetExhausted, false} {}

    ProfileCurve run(const StartSpec& start) {
        if (!begin(start)) return std::move(curve_);
        loop();
        return std::move(curve_);
    }

private:
    // Returns false when the start itself terminates the curve.
    bool begin(const StartSpec& start) {
        if (const auto* st = std::get_if<CurveState>(&start)) {
            if (!interior(*st))
                throw std::invalid_argument("integrate: interior start required");
            s_ = st->s;
            u_ = pack(*st);
            if (!rhs_(s_, u_, k1_))
                throw std::invalid_argument("integrate: start state not integrable");
            record(s_, u_, k1_);
            return true;
        }
        AxisStart as;
        if (const auto* ya = std::get_if<YAxisStart>(&start)) {
            as = regularized_start(*ya, params_);
        } else if (const auto* xs = std::get_if<XAxisSouthStart>(&start)) {
            as = regularized_start(*xs, params_);
        } else {
            as = regularized_start(std::get<XAxisNorthStart>(start), params_);
        }
        curve_.samples.push_back(as.state);
        curve_.rates.push_back(as.rate);
        Event e;
        e.s = as.state.s;
        e.state = as.state;
        e.kind = as.state.x == 0.0 ? EventKind::YAxisContact
                 : as.state.y == 0.0 ? EventKind::XAxisContact
                                     : EventKind::NorthContact;
        e.orthogonal = true;
        curve_.events.push_back(e);
        const CurveState first = as.step_off(axis_eps(controls_));
        s_ = first.s;
        u_ = pack(first);
        if (!rhs_(s_, u_, k1_)) {
            curve_.termination = Termination::StepFailure;
            return false;
        }
        record(s_, u_, k1_);
        return true;
    }

    void record(double s, const Vec<3>& u, const Vec<3>& k) {
        curve_.samples.push_back(unpack(s, u));
        curve_.rates.push_back({k[0], k[1], k[2]});
    }

    void loop() {
        const double s_end = curve_.samples.front().s + controls_.max_arclength;
        double h = 1e-4;
        rk::StepController ctl;
        long steps = 0;
        while (true) {
            if (s_ >= s_end) {
                curve_.termination = Termination::BudgetExhausted;
                return;
            }
            if (++steps > controls_.max_steps) {
                curve_.termination = Termination::BudgetExhausted;
                return;
            }
            bool clipped = false;
            if (s_ + h >= s_end) {
                h = s_end - s_;
                clipped = true;
            }
            const double hmin = 16.0 * std::numeric_limits<double>::epsilon() *
                                std::max(1.0, std::abs(s_));
            Vec<3> y5, klast;
            double err;
            const bool ok = rk::dopri5_try_step(rhs_, s_, u_, k1_, h, y5, klast, err,
                                                controls_.atol, controls_.rtol);
            if (!ok || err > 1.0) {
                h *= ok ? std::min(ctl.factor(err), 0.9) : 0.5;
                if (h < hmin) {
                    if (underflow_contact()) return;
                    curve_.termination = Termination::StepFailure;
                    return;
                }
                continue;
            }
            const double s_new = s_ + h;
            const bool halted = scan_events(s_, u_, k1_, s_new, y5);
            if (halted) return;
            record(s_new, y5, klast);
            if (near_axis(y5) < controls_.axis_margin) {
                resolve_contact(s_new, y5, klast);
                return;
            }
            s_ = s_new;
            u_ = y5;
            k1_ = klast;
            if (!clipped) {
                ctl.accept(err);
                h *= ctl.factor(err);
            }
        }
    }

    static double near_axis(const Vec<3>& u) {
        return std::min({u[0], u[1], kPi - u[1]});
    }

    // One RK step of size ds from (s0, u0, k0); ds <= the accepted step size,
    // so the local error matches the step's own error model.
    CurveState substate(double s0, const Vec<3>& u0, const Vec<3>& k0, double ds) const {
        if (ds <= 0.0) return unpack(s0, u0);
        Vec<3> y5, klast;
        double err;
        rk::dopri5_try_step(rhs_, s0, u0, k0, ds, y5, klast, err, controls_.atol,
                            controls_.rtol);
        return unpack(s0 + ds, y5);
    }

    // Localizes sign changes of sin(sigma) and cos(sigma) inside an accepted
    // step. Returns true when a halt-listed event ends the integration.
    bool scan_events(double s0, const Vec<3>& u0, const Vec<3>& k0, double s1,
                     const Vec<3>& u1) {
        struct Pred {
            double (*g)(double);
            bool vertical;
        };
        static const Pred preds[2] = {{[](double sg) { return std::sin(sg); }, false},
                                      {[](double sg) { return std::cos(sg); }, true}};
        std::vector<Event> found;
        for (const Pred& p : preds) {
            const double g0 = p.g(u0[2]);
            const double g1 = p.g(u1[2]);
            if (!(g0 * g1 < 0.0)) continue;
            double lo = 0.0, hi = s1 - s0;
            double glo = g0;
            while (hi - lo > controls_.event_refine_tol) {
                const double mid = 0.5 * (lo + hi);
                const CurveState st = substate(s0, u0, k0, mid);
                const double gm = p.g(st.sigma);
                if (glo * gm <= 0.0) {
                    hi = mid;
                } else {
                    lo = mid;
                    glo = gm;
                }
            }
            Event e;
            e.state = substate(s0, u0, k0, 0.5 * (lo + hi));
            e.s = e.state.s;
            if (p.vertical) {
                e.kind = EventKind::VerticalTangent;
            } else {
                e.kind = g0 < 0.0 ? EventKind::YMin : EventKind::YMax;
            }
            found.push_back(e);
        }
        std::sort(found.begin(), found.end(),
                  [](const Event& a, const Event& b) { return a.s < b.s; });
        for (const Event& e : found) {
            curve_.events.push_back(e);
            if (std::find(halt_kinds_.begin(), halt_kinds_.end(), e.kind) !=
                halt_kinds_.end()) {
                // truncate the curve at the halting event
                record(e.s, pack(e.state), k_of(e.state));
                curve_.termination = Termination::EventHalt;
                return true;
            }
        }
        return false;
    }

    Vec<3> k_of(const CurveState& st) const {
        Vec<3> k{0, 0, 0};
        rhs_(st.s, pack(st), k);
        return k;
    }

    // The step controller underflowed: either we are stalled against an axis
    // (non-orthogonal approach) or the step failure is genuine.
    bool underflow_contact() {
        const double d = near_axis(u_);
        if (d > 1e-4) return false;
        Vec<3> k;
        rhs_(s_, u_, k);
        resolve_contact(s_, u_, k, /*certifiable=*/false);
        return true;
    }

    void resolve_contact(double s, const Vec<3>& u, const Vec<3>& k,
                         bool certifiable = true) {
        const double x = u[0], y = u[1], sigma = u[2];
        EventKind kind;
        double dist, rate, perp;
        if (x <= y && x <= kPi - y) {
            kind = EventKind::YAxisContact;
            dist = x;
            rate = k[0];
            perp = 0.0;  // sigma = 0 mod pi meets x = 0 perpendicularly
        } else if (y <= kPi - y) {
            kind = EventKind::XAxisContact;
            dist = y;
            rate = k[1];
            perp = kPi / 2.0;
        } else {
            kind = EventKind::NorthContact;
            dist = kPi - y;
            rate = -k[1];
            perp = kPi / 2.0;
        }
        Event e;
        e.kind = kind;
        if (certifiable && rate < 0.0 && std::abs(rate) > 1e-3) {
            // Taylor extrapolation of the remaining approach; dist is at most
            // axis_margin here so the quadratic term is far below angle_tol.
            const double tau = dist / std::abs(rate);
            const CurveState here = unpack(s, u);
            const double sig_c =
                sigma + k[2] * tau + 0.5 * sigma_second(here, params_) * tau * tau;
            e.s = s + tau;
            e.state.s = e.s;
            e.state.sigma = sig_c;
            e.state.x = kind == EventKind::YAxisContact ? 0.0 : x + k[0] * tau;
            e.state.y = kind == EventKind::XAxisContact ? 0.0
                        : kind == EventKind::NorthContact ? kPi
                                                          : y + k[1] * tau;
            e.orthogonal = angle_defect(sig_c, perp) < controls_.angle_tol;
        } else {
            e.s = s;
            e.state = unpack(s, u);
            e.orthogonal = false;
        }
        curve_.events.push_back(e);
        curve_.termination = Termination::AxisContact;
        curve_.contact_orthogonal = e.orthogonal;
    }

    GeometryParams params_;
    IntegrationControls controls_;
    std::vector<EventKind> halt_kinds_;
    CurveRhs rhs_;
    ProfileCurve curve_;
    double s_ = 0.0;
    Vec<3> u_{};
    Vec<3> k1_{};
};

}  // namespace

void IntegrationControls::validate() const {
    if (!(rtol > 0 && atol > 0 && max_arclength > 0 && max_steps > 0 &&
          axis_margin > 0 && event_refine_tol > 0 && angle_tol > 0))
        throw std::invalid_argument("IntegrationControls: all fields must be positive");
}

bool is_contact(EventKind k) {
    return k == EventKind::XAxisContact || k == EventKind::YAxisContact ||
           k == EventKind::NorthContact;
}

std::string to_string(EventKind k) {
    switch (k) {
        case EventKind::YMax: return "y_max";
        case EventKind::YMin: return "y_min";
        case EventKind::VerticalTangent: return "vertical_tangent";
        case EventKind::XAxisContact: return "x_axis_contact";
        case EventKind::YAxisContact: return "y_axis_contact";
        case EventKind::NorthContact: return "north_contact";
    }
    return "?";
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::BudgetExhausted: return "budget_exhausted";
        case Termination::AxisContact: return "axis_contact";
        case Termination::StepFailure: return "step_failure";
        case Termination::EventHalt: return "event_halt";
    }
    return "?";
}

ProfileCurve integrate(const StartSpec& start, const GeometryParams& params,
                       const IntegrationControls& controls,
                       const std::vector<EventKind>& halt_kinds) {
    controls.validate();
    if (const auto* st = std::get_if<CurveState>(&start)) {
        // A profile curve through an interior point extends in both directions.
        // Probe against the orientation for half the budget, then integrate the
        // whole curve forward from whatever that probe reaches: an orthogonal
        // axis contact becomes a regularized axis start, an interior endpoint a
        // plain restart. Non-orthogonal backward contacts are singular, so only
        // the forward branch is returned in that case.
        IntegrationControls probe_ctl = controls;
        probe_ctl.max_arclength = 0.5 * controls.max_arclength;
        Integrator probe(params, probe_ctl, {}, /*reverse=*/true);
        const ProfileCurve back = probe.run(*st);
        // Near-axis error amplification (~1/distance per unit of backward
        // travel) means one probe pass cannot reproduce the tight angle
        // certificate, so accept a contact that is merely close to
        // perpendicular and let the regularized restart make it exact.
        bool restart_axis = false;
        if (back.termination == Termination::AxisContact) {
            const Event& c = back.events.back();
            const double perp = c.kind == EventKind::YAxisContact ? 0.0 : kPi / 2.0;
            restart_axis = angle_defect(c.state.sigma, perp) < 1e-3;
        }
        if (restart_axis) {
            const Event& c = back.events.back();
            StartSpec axis;
            if (c.kind == EventKind::YAxisContact) {
                axis = YAxisStart{c.state.y};
            } else if (c.kind == EventKind::XAxisContact) {
                axis = XAxisSouthStart{c.state.x};
            } else {
                axis = XAxisNorthStart{c.state.x};
            }
            Integrator integ(params, controls, halt_kinds);
            return integ.run(axis);
        }
        if (back.termination == Termination::BudgetExhausted && back.samples.size() > 1) {
            CurveState far = back.samples.back();
            far.s = 0.0;
            Integrator integ(params, controls, halt_kinds);
            return integ.run(far);
        }
    }
    Integrator integ(params, controls, halt_kinds);
    return integ.run(start);
}

CurveState state_at(const ProfileCurve& curve, double s) {
    const auto& ss = curve.samples;
    if (ss.empty()) throw std::invalid_argument("state_at: empty curve");
    if (s <= ss.front().s) return ss.front();
    if (s >= ss.back().s) return ss.back();
    auto it = std::upper_bound(ss.begin(), ss.end(), s,
                               [](double v, const CurveState& st) { return v < st.s; });
    const std::size_t i = static_cast<std::size_t>(it - ss.begin()) - 1;
    const CurveState& a = ss[i];
    if (!interior(a)) {
        // axis start: use the quadratic off-axis predictor
        AxisStart as{a, curve.rates[i]};
        return as.step_off(s - a.s);
    }
    CurveRhs rhs{curve.params.n, curve.params.m, curve.params.h};
    Vec<3> u = pack(a);
    Vec<3> k1{curve.rates[i].dx, curve.rates[i].dy, curve.rates[i].dsigma};
    Vec<3> y5, klast;
    double err;
    rk::dopri5_try_step(rhs, a.s, u, k1, s - a.s, y5, klast, err, 1e-12, 1e-10);
    return unpack(s, y5);
}

std::vector<GraphPoint> graph_extract(const ProfileCurve& curve, double s0, double s1) {
    if (!(s0 < s1)) throw std::invalid_argument("graph_extract: need s0 < s1");
    for (const Event& e : curve.events) {
        if (e.kind == EventKind::VerticalTangent && e.s > s0 + 1e-12 && e.s < s1 - 1e-12)
            throw std::invalid_argument(
                "graph_extract: segment contains an interior vertical tangent");
    }
    std::vector<GraphPoint> out;
    const CurveState a = state_at(curve, s0);
    out.push_back({a.x, a.y, std::tan(a.sigma)});
    int sign = 0;
    for (const CurveState& st : curve.samples) {
        if (st.s <= s0 || st.s >= s1) continue;
        const double c = std::cos(st.sigma);
        if (c != 0.0) {
            const int sgn = c > 0.0 ? 1 : -1;
            if (sign == 0) sign = sgn;
            if (sgn != sign)
                throw std::invalid_argument("graph_extract: cos(sigma) changes sign");
        }
        out.push_back({st.x, st.y, std::tan(st.sigma)});
    }
    const CurveState b = state_at(curve, s1);
    out.push_back({b.x, b.y, std::tan(b.sigma)});
    if (sign < 0) std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace cmc
