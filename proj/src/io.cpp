#include "cmc/io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>
#include <sstream>

namespace cmc::io {

namespace {

using nlohmann::json;

EventKind kind_from_string(const std::string& s) {
    if (s == "y_max") return EventKind::YMax;
    if (s == "y_min") return EventKind::YMin;
    if (s == "vertical_tangent") return EventKind::VerticalTangent;
    if (s == "x_axis_contact") return EventKind::XAxisContact;
    if (s == "y_axis_contact") return EventKind::YAxisContact;
    if (s == "north_contact") return EventKind::NorthContact;
    throw std::invalid_argument("unknown event kind: " + s);
}

Termination termination_from_string(const std::string& s) {
    if (s == "budget_exhausted") return Termination::BudgetExhausted;
    if (s == "axis_contact") return Termination::AxisContact;
    if (s == "step_failure") return Termination::StepFailure;
    if (s == "event_halt") return Termination::EventHalt;
    throw std::invalid_argument("unknown termination: " + s);
}

json state_json(const CurveState& st) {
    return json{{"s", st.s}, {"sigma", st.sigma}, {"x", st.x}, {"y", st.y}};
}

}  // namespace

std::string format_double(double v) {
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::string curve_csv(const ProfileCurve& curve) {
    std::string out = "s,x,y,sigma\n";
    for (const CurveState& st : curve.samples) {
        out += format_double(st.s);
        out += ',';
        out += format_double(st.x);
        out += ',';
        out += format_double(st.y);
        out += ',';
        out += format_double(st.sigma);
        out += '\n';
    }
    return out;
}

nlohmann::json curve_events_json(const ProfileCurve& curve) {
    json events = json::array();
    for (const Event& e : curve.events) {
        // index of the nearest sample at or before the event
        std::size_t idx = 0;
        for (std::size_t i = 0; i < curve.samples.size(); ++i)
            if (curve.samples[i].s <= e.s) idx = i;
        json je{{"kind", to_string(e.kind)},
                {"s", e.s},
                {"sample_index", idx},
                {"state", state_json(e.state)}};
        if (is_contact(e.kind)) je["orthogonal"] = e.orthogonal;
        events.push_back(je);
    }
    return json{{"contact_orthogonal", curve.contact_orthogonal},
                {"events", events},
                {"params", {{"h", curve.params.h}, {"m", curve.params.m}, {"n", curve.params.n}}},
                {"termination", to_string(curve.termination)}};
}

ProfileCurve curve_from_strings(const std::string& csv, const nlohmann::json& sidecar) {
    ProfileCurve curve;
    const auto& jp = sidecar.at("params");
    curve.params = GeometryParams(jp.at("n").get<int>(), jp.at("m").get<int>(),
                                  jp.at("h").get<double>());
    curve.termination =
        termination_from_string(sidecar.at("termination").get<std::string>());
    curve.contact_orthogonal = sidecar.value("contact_orthogonal", false);

    std::istringstream is(csv);
    std::string line;
    if (!std::getline(is, line) || line != "s,x,y,sigma")
        throw std::invalid_argument("curve CSV: bad header");
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        CurveState st;
        double* fields[4] = {&st.s, &st.x, &st.y, &st.sigma};
        const char* p = line.data();
        const char* end = line.data() + line.size();
        for (int i = 0; i < 4; ++i) {
            const auto res = std::from_chars(p, end, *fields[i]);
            if (res.ec != std::errc())
                throw std::invalid_argument("curve CSV: bad number in row");
            p = res.ptr;
            if (i < 3) {
                if (p == end || *p != ',')
                    throw std::invalid_argument("curve CSV: expected comma");
                ++p;
            }
        }
        curve.samples.push_back(st);
    }
    if (curve.samples.empty()) throw std::invalid_argument("curve CSV: no samples");

    curve.rates.reserve(curve.samples.size());
    for (const CurveState& st : curve.samples) {
        if (interior(st)) {
            curve.rates.push_back(vector_field(st, curve.params));
        } else if (st.x <= 0.0) {
            curve.rates.push_back(regularized_start(YAxisStart{st.y}, curve.params).rate);
        } else if (st.y <= 0.0) {
            curve.rates.push_back(
                regularized_start(XAxisSouthStart{st.x}, curve.params).rate);
        } else {
            curve.rates.push_back(
                regularized_start(XAxisNorthStart{st.x}, curve.params).rate);
        }
    }
    for (const auto& je : sidecar.at("events")) {
        Event e;
        e.kind = kind_from_string(je.at("kind").get<std::string>());
        e.s = je.at("s").get<double>();
        const auto& js = je.at("state");
        e.state = {js.at("s").get<double>(), js.at("x").get<double>(),
                   js.at("y").get<double>(), js.at("sigma").get<double>()};
        e.orthogonal = je.value("orthogonal", false);
        curve.events.push_back(e);
    }
    return curve;
}

nlohmann::json classification_json(const ClassificationResult& r) {
    json extrema = json::array();
    for (const Extremum& e : r.extrema)
        extrema.push_back(json{{"kind", to_string(e.kind)},
                               {"s", e.s},
                               {"x", e.x},
                               {"y", e.y}});
    json contacts = json::array();
    for (const Event& e : r.contacts)
        contacts.push_back(json{{"kind", to_string(e.kind)},
                                {"orthogonal", e.orthogonal},
                                {"s", e.s},
                                {"state", state_json(e.state)}});
    json out{{"case_tag", r.case_tag},
             {"contacts", contacts},
             {"embedded", r.embedded},
             {"evidence_horizon", r.evidence_horizon},
             {"extrema", extrema},
             {"oscillation_certified", r.oscillation_certified},
             {"topology", to_string(r.topology)}};
    if (!r.note.empty()) out["note"] = r.note;
    if (r.intersection) {
        out["self_intersection"] = json{{"degenerate", r.intersection->degenerate},
                                        {"s1", r.intersection->s1},
                                        {"s2", r.intersection->s2},
                                        {"x", r.intersection->x},
                                        {"y", r.intersection->y}};
    }
    return out;
}

nlohmann::json index_report_json(const IndexFormReport& r) {
    return json{{"Q", r.Q},
                {"Q_jacobi", r.Q_jacobi},
                {"constants_included", r.constants_included},
                {"mass", r.mass},
                {"weighted_length", r.weighted_length},
                {"window1", {r.window1.first, r.window1.second}},
                {"window2", {r.window2.first, r.window2.second}}};
}

nlohmann::json criteria_json(const CriteriaReport& r) {
    return json{{"cylinder", r.cylinder_unstable ? "unstable" : "not unstable by this criterion"},
                {"cylinder_radius", r.cylinder_radius},
                {"cylinder_unstable_by_radius", r.cylinder_unstable_by_radius},
                {"slice", r.slice_unstable ? "unstable" : "stable"},
                {"threshold_h", r.threshold_h},
                {"threshold_radius", r.threshold_radius}};
}

}  // namespace cmc::io
